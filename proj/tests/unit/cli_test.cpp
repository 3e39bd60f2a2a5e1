#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lef/branch_plus.hpp"
#include "lef/config.hpp"
#include "lef/diagram.hpp"
#include "lef/error.hpp"
#include "lefcli/cli.hpp"

using namespace lef;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = lefcli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lefbif_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(ParseConfig, EmptyGivesDefaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c.grid.kind, DomainKind::Interval);
  EXPECT_EQ(c.grid.nx, 201u);
  EXPECT_EQ(c.q, 0.5);
  EXPECT_EQ(c.p, 3.0);
  EXPECT_EQ(c.variant, Variant::Plus);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.nontrivial_floor, 1e-4);
}

TEST(ParseConfig, ValuesAndComments) {
  const RunConfig c = parse_config("# exponents\np = 3\nq = 0.25\n\nvariant = minus  # trailing\n");
  EXPECT_EQ(c.q, 0.25);
  EXPECT_EQ(c.p, 3.0);
  EXPECT_EQ(c.variant, Variant::Minus);
}

TEST(ParseConfig, RectangleCounts) {
  for (const char* text : {"kind = rectangle\ncounts = 33 17", "kind = rectangle\ncounts = 33x17",
                           "kind = rectangle\ncounts = 33,17"}) {
    const RunConfig c = parse_config(text);
    EXPECT_EQ(c.grid.kind, DomainKind::Rectangle);
    EXPECT_EQ(c.grid.nx, 33u);
    EXPECT_EQ(c.grid.ny, 17u);
  }
  EXPECT_EQ(parse_config("kind = rectangle").grid.nx, 65u);
}

TEST(ParseConfig, Rejections) {
  EXPECT_THROW(parse_config("q = 1.5"), ConfigError);
  EXPECT_THROW(parse_config("p = 0.9"), ConfigError);
  EXPECT_THROW(parse_config("colour = red"), ConfigError);
  EXPECT_THROW(parse_config("q 0.5"), ConfigError);
  EXPECT_THROW(parse_config("q = abc"), ConfigError);
  EXPECT_THROW(parse_config("kind = rectangle\np = 6"), ConfigError);
  try {
    parse_config("q = 0.5\nbogus = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Cli, Eig) {
  const auto r = run({"eig"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.out.find("lambda1 = ");
  ASSERT_NE(pos, std::string::npos);
  const double l1 = std::stod(r.out.substr(pos + 10));
  EXPECT_NEAR(l1, std::numbers::pi * std::numbers::pi, 1e-3 * std::numbers::pi * std::numbers::pi);
}

TEST(Cli, SolveDivergesAboveLambdaPrime) {
  const auto g = build_interval(201);
  const double lp = lambda_prime(g->principal_eigenvalue_exact(), 1.0, 0.5, 3.0);
  std::ostringstream lam;
  lam.precision(17);
  lam << 1.5 * lp;
  const auto r = run({"solve", "--variant", "plus", "--lambda", lam.str()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("diverged (nonexistence regime)"), std::string::npos) << r.err;
}

TEST(Cli, SolveMinusReportsClassification) {
  const auto r = run({"solve", "--variant", "minus", "--lambda", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("classified_nontrivial = yes"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"sweep", "--variant", "plus", "--from", "2", "--to", "1", "--steps", "3", "--out",
                 scratch("x.csv").string()}).code, 2);
  EXPECT_EQ(run({"solve", "--variant", "sideways", "--lambda", "1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--config", scratch("missing.cfg").string(), "eig"}).code, 2);
  const auto bad = write_text("bad.cfg", "q = 2\n");
  const auto r = run({"--config", bad.string(), "eig"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos);
}

TEST(Cli, SweepWritesReadableCsv) {
  const auto cfg = write_text("sweep.cfg", "counts = 51\n");
  const auto csv = scratch("sweep.csv");
  const auto r = run({"--config", cfg.string(), "sweep", "--variant", "plus", "--from", "0.5", "--to",
                      "4", "--steps", "8", "--out", csv.string(), "--jobs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  const BifurcationDiagram d = read_diagram_csv(in);
  ASSERT_EQ(d.records.size(), 8u);
  EXPECT_TRUE(d.lambdas_strictly_increasing());
  for (const auto& rec : d.records) EXPECT_TRUE(rec.converged);
  for (std::size_t i = 1; i < d.records.size(); ++i)
    EXPECT_GT(d.records[i].sup_norm, d.records[i - 1].sup_norm);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const auto cfg = write_text("repeat.cfg", "counts = 51\nvariant = minus\n");
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  for (const auto& path : {a, b})
    ASSERT_EQ(run({"--config", cfg.string(), "sweep", "--variant", "minus", "--from", "0", "--to", "3",
                   "--steps", "6", "--out", path.string(), "--jobs", "2"}).code, 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}
