#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kansa/point.hpp"

namespace kansa {

/// A bounded connected open set with a parametrized boundary.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual std::size_t dimension() const = 0;
  /// True only for strictly interior points.
  virtual bool contains(const Point& p) const = 0;
  /// Box that contains the closure of the domain.
  virtual std::pair<Point, Point> bounding_box() const = 0;
  /// Deterministic layout of m distinct boundary points.
  virtual std::vector<Point> boundary_equispaced(std::size_t m) const = 0;
  /// One point uniform in the boundary parameter.
  virtual Point boundary_random(std::mt19937_64& rng) const = 0;
  /// Euclidean distance from p to the boundary.
  virtual double boundary_distance(const Point& p) const = 0;
  /// Characteristic length used to scale tolerances.
  virtual double scale() const = 0;
  virtual std::string describe() const = 0;
};

using DomainPtr = std::shared_ptr<const Domain>;

/// Axis-aligned box [lower, upper]. The 2D boundary is parametrized by arc
/// length counter-clockwise from `lower`; in higher dimensions equispaced
/// layouts spread the points round-robin over the 2d faces, each face using a
/// Kronecker (golden-ratio) lattice in its free coordinates.
DomainPtr make_box(Point lower, Point upper);
DomainPtr make_unit_box(std::size_t dim);

/// Ball of radius R. Equispaced layouts: equal angles from the +x axis in 2D,
/// a Fibonacci lattice in 3D.
DomainPtr make_ball(Point center, double radius);

/// Simple 2D polygon (even-odd indicator). The boundary is parametrized by arc
/// length starting at the first vertex, in vertex order.
DomainPtr make_polygon(std::vector<Point> vertices);

enum class DensityKind { Uniform, Custom };

/// Unnormalized sampling density on the domain.
struct Density {
  DensityKind kind = DensityKind::Uniform;
  std::string name = "uniform";
  std::function<double(const Point&)> weight = [](const Point&) { return 1.0; };
  double sup_bound = 1.0;

  static Density uniform() { return {}; }
  static Density custom(std::string name, std::function<double(const Point&)> weight, double sup_bound);
  /// exp(-|p - center|^2 / (2 width^2)), bounded by 1.
  static Density gaussian_bump(Point center, double width);
};

/// Spot-checks the density against its sup bound on the domain's bounding box.
/// Throws ConfigError on a violation.
void validate_density(const Domain& domain, const Density& density, std::uint64_t seed = 0);

/// n i.i.d. points drawn from the density restricted to the domain by
/// rejection against the bounding box. Deterministic in the seed.
std::vector<Point> sample_interior(const Domain& domain, const Density& density, std::size_t n, std::uint64_t seed);

enum class BoundaryStrategy { Equispaced, Random, UserList };

struct BoundaryRequest {
  BoundaryStrategy strategy = BoundaryStrategy::Equispaced;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<Point> points;  // UserList only
};

/// m distinct boundary points. UserList input is validated (on the boundary,
/// distinct) and passed through.
std::vector<Point> sample_boundary(const Domain& domain, const BoundaryRequest& request);

/// Minimum pairwise distance (brute force). Needs at least two points.
double min_separation(const std::vector<Point>& points);

/// Interior collocation centers and boundary collocation centers.
struct CollocationSet {
  std::vector<Point> interior;
  std::vector<Point> boundary;

  std::size_t n() const { return interior.size(); }
  std::size_t m() const { return boundary.size(); }
  std::size_t size() const { return interior.size() + boundary.size(); }
  std::size_t dimension() const;
  /// Interior points followed by boundary points.
  std::vector<Point> all_points() const;
};

/// Builds a collocation set and checks its invariants: m >= 1, one common
/// dimension, finite coordinates, all n+m points pairwise distinct, and (when
/// a domain is given) interior points inside and boundary points on the
/// boundary. Throws ConfigError.
CollocationSet make_collocation_set(std::vector<Point> interior, std::vector<Point> boundary,
                                    const Domain* domain = nullptr);

/// True if any two points coincide exactly.
bool has_duplicates(const std::vector<Point>& points);

}  // namespace kansa
