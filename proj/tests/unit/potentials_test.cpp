#include <gtest/gtest.h>

#include <filesystem>

#include "lef/error.hpp"
#include "lef/field_io.hpp"
#include "lef/potentials.hpp"
#include "lef/problem.hpp"

using namespace lef;

TEST(Potentials, Constant) {
  const auto g = build_rectangle(7, 9);
  const Field k = make_potential(g, PotentialSpec::constant(2.0));
  for (std::size_t n = 0; n < g->size(); ++n) EXPECT_EQ(k[n], 2.0);
}

TEST(Potentials, GaussianBumpBounds) {
  const auto g = build_interval(201);
  const Field b = make_potential(g, PotentialSpec::gaussian_bump(1.0, 1.0, 0.1, 0.5));
  EXPECT_GE(min_value(b), 1.0);
  EXPECT_LE(max_value(b), 2.0);
  EXPECT_DOUBLE_EQ(b[100], 2.0);
}

TEST(Potentials, NegativeAffineRejected) {
  const auto g = build_interval(11);
  EXPECT_THROW(make_potential(g, PotentialSpec::affine(1.0, -2.0)), NonPositivePotential);
  EXPECT_NO_THROW(make_potential(g, PotentialSpec::affine(1.0, -0.5)));
}

TEST(Potentials, Deterministic) {
  const auto g = build_rectangle(12, 10);
  const auto spec = PotentialSpec::gaussian_bump(0.5, 2.0, 0.2, 0.3, 0.7);
  const Field a = make_potential(g, spec), b = make_potential(g, spec);
  for (std::size_t n = 0; n < g->size(); ++n) EXPECT_EQ(a[n], b[n]);
}

TEST(Potentials, FileRoundTrip) {
  const auto g = build_interval(21);
  const Field k = make_potential(g, PotentialSpec::affine(1.0, 0.5));
  const auto path = std::filesystem::temp_directory_path() / "lefbif_potential_test.csv";
  write_field_file(path, k);
  const Field back = make_potential(g, PotentialSpec::file(path.string()));
  for (std::size_t n = 0; n < g->size(); ++n) EXPECT_EQ(back[n], k[n]);
  EXPECT_THROW(make_potential(build_interval(11), PotentialSpec::file(path.string())), FileFormat);
  std::filesystem::remove(path);
  EXPECT_THROW(make_potential(g, PotentialSpec::file(path.string())), FileFormat);
}

TEST(Potentials, ParseSpecs) {
  EXPECT_EQ(parse_potential_spec("constant 3").value, 3.0);
  const auto a = parse_potential_spec("affine 1 0.5 0.25");
  EXPECT_EQ(a.shape, PotentialShape::Affine);
  EXPECT_EQ(a.ay, 0.25);
  const auto b = parse_potential_spec("gaussian 1 2 0.1 0.4");
  EXPECT_EQ(b.shape, PotentialShape::GaussianBump);
  EXPECT_EQ(b.cx, 0.4);
  EXPECT_EQ(parse_potential_spec("file k.csv").path, "k.csv");
  EXPECT_THROW(parse_potential_spec("cubic 1"), InvalidArgument);
  EXPECT_THROW(parse_potential_spec("constant"), InvalidArgument);
  EXPECT_THROW(parse_potential_spec("constant 1 2"), InvalidArgument);
}

TEST(PairStats, Values) {
  const auto g = build_interval(9);
  const PotentialPair u = unit_potentials(g);
  EXPECT_EQ(u.m, 1.0);
  EXPECT_EQ(u.sup_k, 1.0);
  EXPECT_EQ(u.sup_h, 1.0);
  const PotentialPair w = pair_stats(Field::constant(g, 2.0), Field::constant(g, 0.5));
  EXPECT_EQ(w.m, 0.5);
  EXPECT_EQ(w.sup_k, 2.0);
}

TEST(PairStats, ZeroMinimumRejected) {
  const auto g = build_interval(9);
  const Field k = Field::sample(g, [](double x, double) { return x; }, false);
  EXPECT_THROW(pair_stats(k, Field::constant(g, 1.0)), NonPositivePotential);
}

TEST(ProblemSpec, Validation) {
  const auto g = build_interval(9);
  EXPECT_THROW(make_problem(1.2, 3.0, Variant::Plus, unit_potentials(g), *g), InvalidSpec);
  EXPECT_THROW(make_problem(0.5, 0.9, Variant::Plus, unit_potentials(g), *g), InvalidSpec);
  EXPECT_NO_THROW(make_problem(0.5, 7.0, Variant::Plus, unit_potentials(g), *g));
  const auto sq = build_rectangle(9, 9);
  EXPECT_THROW(make_problem(0.5, 5.0, Variant::Plus, unit_potentials(sq), *sq), InvalidSpec);
  EXPECT_THROW(make_problem(0.5, 3.0, Variant::Plus, unit_potentials(sq), *g), InvalidSpec);
}
