#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace kansa {

/// Invalid user input: bad parameters, duplicate points, malformed config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pivot fell below the singularity threshold during factorization.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t pivot_index, double pivot, double threshold)
      : std::runtime_error(message(pivot_index, pivot, threshold)), pivot_index_(pivot_index) {}

  std::size_t pivot_index() const { return pivot_index_; }

 private:
  static std::string message(std::size_t pivot_index, double pivot, double threshold) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "matrix is numerically singular at pivot %zu (|pivot| = %.3g, threshold = %.3g)",
                  pivot_index, pivot, threshold);
    return buf;
  }

  std::size_t pivot_index_;
};

}  // namespace kansa
