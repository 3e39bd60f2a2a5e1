#include "lef/error.hpp"

namespace lef {

NoConvergence::NoConvergence(std::string what, std::size_t iterations)
    : Error(what + " did not converge after " + std::to_string(iterations) + " iterations"),
      iterations_(iterations) {}

ConfigError::ConfigError(std::size_t line, std::string reason)
    : Error(line > 0 ? "config line " + std::to_string(line) + ": " + reason : "config: " + reason),
      line_(line),
      reason_(std::move(reason)) {}

}  // namespace lef
