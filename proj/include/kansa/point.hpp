#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kansa {

/// A point in R^d, stored by value.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  double& operator[](std::size_t k) { return coords_[k]; }
  std::span<const double> coords() const { return coords_; }

  auto operator<=>(const Point&) const = default;
  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// sum_k (a_k - b_k)^2, accumulated in coordinate order. The assembly
/// kernels use the same order, so entries are bitwise symmetric.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    acc = acc + diff * diff;
  }
  return acc;
}

double distance(const Point& a, const Point& b);

}  // namespace kansa
