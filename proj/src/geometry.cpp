#include "kansa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kansa/errors.hpp"

namespace kansa {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string format_point(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.dim(); ++k) os << (k ? "," : "") << p[k];
  os << ")";
  return os.str();
}

// Root of x^(k+1) = x + 1; its inverse powers give a low-discrepancy
// Kronecker sequence in k dimensions (k = 1 is the golden ratio).
double generalized_golden(std::size_t k) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / static_cast<double>(k + 1));
  return x;
}

class BoxDomain final : public Domain {
 public:
  BoxDomain(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.dim() < 2 || lower_.dim() != upper_.dim()) throw ConfigError("box: corners must share a dimension >= 2");
    for (std::size_t k = 0; k < lower_.dim(); ++k) {
      if (!(upper_[k] > lower_[k]) || !std::isfinite(lower_[k]) || !std::isfinite(upper_[k])) {
        throw ConfigError("box: upper corner must exceed lower corner in every coordinate");
      }
    }
  }

  std::size_t dimension() const override { return lower_.dim(); }

  bool contains(const Point& p) const override {
    for (std::size_t k = 0; k < dimension(); ++k) {
      if (!(p[k] > lower_[k] && p[k] < upper_[k])) return false;
    }
    return true;
  }

  std::pair<Point, Point> bounding_box() const override { return {lower_, upper_}; }

  std::vector<Point> boundary_equispaced(std::size_t m) const override {
    std::vector<Point> out;
    out.reserve(m);
    if (dimension() == 2) {
      const double perimeter = 2.0 * (extent(0) + extent(1));
      for (std::size_t i = 0; i < m; ++i) out.push_back(perimeter_point(perimeter * static_cast<double>(i) / m));
      return out;
    }
    const std::size_t d = dimension();
    const std::size_t faces = 2 * d;
    const double phi = generalized_golden(d - 2);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t face = i % faces;
      const std::size_t idx = i / faces;
      const std::size_t count = m / faces + (face < m % faces ? 1 : 0);
      std::vector<double> unit(d - 1);
      unit[0] = (static_cast<double>(idx) + 0.5) / static_cast<double>(count);
      for (std::size_t j = 1; j + 1 < d; ++j) {
        const double alpha = std::pow(phi, -static_cast<double>(j));
        unit[j] = std::fmod(0.5 + static_cast<double>(idx) * alpha, 1.0);
      }
      out.push_back(face_point(face, unit));
    }
    return out;
  }

  Point boundary_random(std::mt19937_64& rng) const override {
    if (dimension() == 2) {
      const double perimeter = 2.0 * (extent(0) + extent(1));
      return perimeter_point(uniform(rng, 0.0, perimeter));
    }
    const std::size_t d = dimension();
    std::vector<double> areas(2 * d);
    for (std::size_t f = 0; f < 2 * d; ++f) {
      double a = 1.0;
      for (std::size_t k = 0; k < d; ++k) {
        if (k != f / 2) a *= extent(k);
      }
      areas[f] = a;
    }
    const std::size_t face = std::discrete_distribution<std::size_t>(areas.begin(), areas.end())(rng);
    std::vector<double> unit(d - 1);
    for (auto& u : unit) u = uniform(rng, 0.0, 1.0);
    return face_point(face, unit);
  }

  double boundary_distance(const Point& p) const override {
    bool inside = true;
    double outside_sq = 0.0;
    double inside_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dimension(); ++k) {
      if (p[k] < lower_[k] || p[k] > upper_[k]) {
        inside = false;
        const double gap = p[k] < lower_[k] ? lower_[k] - p[k] : p[k] - upper_[k];
        outside_sq += gap * gap;
      } else {
        inside_min = std::min({inside_min, p[k] - lower_[k], upper_[k] - p[k]});
      }
    }
    return inside ? inside_min : std::sqrt(outside_sq);
  }

  double scale() const override {
    double s = 0.0;
    for (std::size_t k = 0; k < dimension(); ++k) s = std::max(s, extent(k));
    return s;
  }

  std::string describe() const override { return "box " + format_point(lower_) + "-" + format_point(upper_); }

 private:
  double extent(std::size_t k) const { return upper_[k] - lower_[k]; }

  // Counter-clockwise from the lower corner: bottom, right, top, left.
  Point perimeter_point(double s) const {
    const double w = extent(0);
    const double h = extent(1);
    if (s < w) return Point{lower_[0] + s, lower_[1]};
    s -= w;
    if (s < h) return Point{upper_[0], lower_[1] + s};
    s -= h;
    if (s < w) return Point{upper_[0] - s, upper_[1]};
    s -= w;
    return Point{lower_[0], upper_[1] - std::min(s, h)};
  }

  // Face f fixes coordinate f/2 at the lower (even f) or upper (odd f) side;
  // the free coordinates are filled from `unit` in increasing axis order.
  Point face_point(std::size_t face, const std::vector<double>& unit) const {
    const std::size_t axis = face / 2;
    std::vector<double> c(dimension());
    std::size_t j = 0;
    for (std::size_t k = 0; k < dimension(); ++k) {
      if (k == axis) {
        c[k] = face % 2 == 0 ? lower_[k] : upper_[k];
      } else {
        c[k] = lower_[k] + unit[j++] * extent(k);
      }
    }
    return Point(std::move(c));
  }

  Point lower_;
  Point upper_;
};

class BallDomain final : public Domain {
 public:
  BallDomain(Point center, double radius) : center_(std::move(center)), radius_(radius) {
    if (center_.dim() < 2) throw ConfigError("ball: dimension must be >= 2");
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw ConfigError("ball: radius must be positive");
  }

  std::size_t dimension() const override { return center_.dim(); }

  bool contains(const Point& p) const override { return distance(p, center_) < radius_; }

  std::pair<Point, Point> bounding_box() const override {
    std::vector<double> lo(dimension());
    std::vector<double> hi(dimension());
    for (std::size_t k = 0; k < dimension(); ++k) {
      lo[k] = center_[k] - radius_;
      hi[k] = center_[k] + radius_;
    }
    return {Point(std::move(lo)), Point(std::move(hi))};
  }

  std::vector<Point> boundary_equispaced(std::size_t m) const override {
    std::vector<Point> out;
    out.reserve(m);
    if (dimension() == 2) {
      for (std::size_t i = 0; i < m; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
        out.push_back(Point{center_[0] + radius_ * std::cos(theta), center_[1] + radius_ * std::sin(theta)});
      }
      return out;
    }
    if (dimension() == 3) {
      const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
      for (std::size_t i = 0; i < m; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(m);
        const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double theta = golden_angle * static_cast<double>(i);
        out.push_back(Point{center_[0] + radius_ * rxy * std::cos(theta), center_[1] + radius_ * rxy * std::sin(theta),
                            center_[2] + radius_ * z});
      }
      return out;
    }
    throw ConfigError("ball: equispaced boundary layout is only defined for d = 2, 3");
  }

  Point boundary_random(std::mt19937_64& rng) const override {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(dimension());
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : v) {
        x = normal(rng);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dimension(); ++k) v[k] = center_[k] + radius_ * v[k] / norm;
    return Point(std::move(v));
  }

  double boundary_distance(const Point& p) const override { return std::abs(distance(p, center_) - radius_); }

  double scale() const override { return 2.0 * radius_; }

  std::string describe() const override {
    return "ball center " + format_point(center_) + " radius " + std::to_string(radius_);
  }

 private:
  Point center_;
  double radius_;
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  const double qx = a[0] + t * dx - p[0];
  const double qy = a[1] + t * dy - p[1];
  return std::sqrt(qx * qx + qy * qy);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
         p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

class PolygonDomain final : public Domain {
 public:
  explicit PolygonDomain(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t nv = vertices_.size();
    if (nv < 3) throw ConfigError("polygon: at least 3 vertices required");
    for (const auto& v : vertices_) {
      if (v.dim() != 2 || !std::isfinite(v[0]) || !std::isfinite(v[1])) {
        throw ConfigError("polygon: vertices must be finite 2D points");
      }
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
      const Point& a = vertices_[i];
      const Point& b = vertices_[(i + 1) % nv];
      if (a == b) throw ConfigError("polygon: repeated consecutive vertex");
      area2 += a[0] * b[1] - b[0] * a[1];
      lengths_.push_back(distance(a, b));
    }
    if (area2 == 0.0) throw ConfigError("polygon: zero area");
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t j = i + 1; j < nv; ++j) {
        const bool adjacent = j == i + 1 || (i == 0 && j == nv - 1);
        if (adjacent) continue;
        if (segments_intersect(vertices_[i], vertices_[(i + 1) % nv], vertices_[j], vertices_[(j + 1) % nv])) {
          throw ConfigError("polygon: edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        }
      }
    }
    perimeter_ = 0.0;
    for (double l : lengths_) perimeter_ += l;
  }

  std::size_t dimension() const override { return 2; }

  bool contains(const Point& p) const override {
    if (p.dim() != 2) return false;
    bool inside = false;
    const std::size_t nv = vertices_.size();
    for (std::size_t i = 0, j = nv - 1; i < nv; j = i++) {
      const Point& a = vertices_[i];
      const Point& b = vertices_[j];
      if ((a[1] > p[1]) != (b[1] > p[1])) {
        const double x = (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0];
        if (p[0] < x) inside = !inside;
      }
    }
    return inside && boundary_distance(p) > 0.0;
  }

  std::pair<Point, Point> bounding_box() const override {
    double lo0 = vertices_[0][0], hi0 = lo0, lo1 = vertices_[0][1], hi1 = lo1;
    for (const auto& v : vertices_) {
      lo0 = std::min(lo0, v[0]);
      hi0 = std::max(hi0, v[0]);
      lo1 = std::min(lo1, v[1]);
      hi1 = std::max(hi1, v[1]);
    }
    return {Point{lo0, lo1}, Point{hi0, hi1}};
  }

  std::vector<Point> boundary_equispaced(std::size_t m) const override {
    std::vector<Point> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(at_arclength(perimeter_ * static_cast<double>(i) / m));
    return out;
  }

  Point boundary_random(std::mt19937_64& rng) const override { return at_arclength(uniform(rng, 0.0, perimeter_)); }

  double boundary_distance(const Point& p) const override {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t nv = vertices_.size();
    for (std::size_t i = 0; i < nv; ++i) best = std::min(best, segment_distance(p, vertices_[i], vertices_[(i + 1) % nv]));
    return best;
  }

  double scale() const override {
    auto [lo, hi] = bounding_box();
    return std::max(hi[0] - lo[0], hi[1] - lo[1]);
  }

  std::string describe() const override { return "polygon with " + std::to_string(vertices_.size()) + " vertices"; }

 private:
  Point at_arclength(double s) const {
    const std::size_t nv = vertices_.size();
    for (std::size_t i = 0; i < nv; ++i) {
      if (s < lengths_[i] || i + 1 == nv) {
        const double t = std::min(s / lengths_[i], 1.0);
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % nv];
        return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
      }
      s -= lengths_[i];
    }
    return vertices_[0];
  }

  std::vector<Point> vertices_;
  std::vector<double> lengths_;
  double perimeter_ = 0.0;
};

}  // namespace

DomainPtr make_box(Point lower, Point upper) { return std::make_shared<BoxDomain>(std::move(lower), std::move(upper)); }

DomainPtr make_unit_box(std::size_t dim) {
  return make_box(Point(std::vector<double>(dim, 0.0)), Point(std::vector<double>(dim, 1.0)));
}

DomainPtr make_ball(Point center, double radius) { return std::make_shared<BallDomain>(std::move(center), radius); }

DomainPtr make_polygon(std::vector<Point> vertices) { return std::make_shared<PolygonDomain>(std::move(vertices)); }

Density Density::custom(std::string name, std::function<double(const Point&)> weight, double sup_bound) {
  if (!(sup_bound > 0.0)) throw ConfigError("density: sup bound must be positive");
  return {DensityKind::Custom, std::move(name), std::move(weight), sup_bound};
}

Density Density::gaussian_bump(Point center, double width) {
  if (!(width > 0.0)) throw ConfigError("density: bump width must be positive");
  return custom(
      "gaussian_bump",
      [center = std::move(center), width](const Point& p) {
        const double r2 = squared_distance(p.coords(), center.coords());
        return std::exp(-r2 / (2.0 * width * width));
      },
      1.0);
}

void validate_density(const Domain& domain, const Density& density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto [lo, hi] = domain.bounding_box();
  std::size_t positive = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> c(domain.dimension());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = uniform(rng, lo[k], hi[k]);
    const Point p(std::move(c));
    const double w = density.weight(p);
    if (!std::isfinite(w) || w < 0.0) throw ConfigError("density: weight must be finite and nonnegative");
    if (w > density.sup_bound) throw ConfigError("density: weight exceeds its declared sup bound");
    if (w > 0.0 && domain.contains(p)) ++positive;
  }
  if (positive == 0) throw ConfigError("density: weight vanishes on every probe inside the domain");
}

std::vector<Point> sample_interior(const Domain& domain, const Density& density, std::size_t n, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(n);
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  auto [lo, hi] = domain.bounding_box();
  const std::size_t d = domain.dimension();
  constexpr std::uint64_t kWindow = 10'000'000;
  std::uint64_t proposals = 0;
  std::size_t accepted_in_window = 0;
  while (out.size() < n) {
    std::vector<double> c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = uniform(rng, lo[k], hi[k]);
    Point p(std::move(c));
    const double u = uniform(rng, 0.0, 1.0);
    ++proposals;
    if (u * density.sup_bound < density.weight(p) && domain.contains(p)) {
      out.push_back(std::move(p));
      ++accepted_in_window;
    }
    if (proposals % kWindow == 0) {
      if (accepted_in_window < 10) {
        throw ConfigError("sample_interior: acceptance rate below 1e-6 (degenerate density/domain pair)");
      }
      accepted_in_window = 0;
    }
  }
  return out;
}

bool has_duplicates(const std::vector<Point>& points) {
  std::vector<const Point*> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Point* a, const Point* b) { return *a < *b; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) return true;
  }
  return false;
}

std::vector<Point> sample_boundary(const Domain& domain, const BoundaryRequest& request) {
  std::vector<Point> out;
  switch (request.strategy) {
    case BoundaryStrategy::Equispaced:
      if (request.m == 0) throw ConfigError("boundary: m must be >= 1");
      out = domain.boundary_equispaced(request.m);
      break;
    case BoundaryStrategy::Random: {
      if (request.m == 0) throw ConfigError("boundary: m must be >= 1");
      std::mt19937_64 rng(request.seed);
      for (std::size_t i = 0; i < request.m; ++i) out.push_back(domain.boundary_random(rng));
      break;
    }
    case BoundaryStrategy::UserList: {
      if (request.points.empty()) throw ConfigError("boundary: user list is empty");
      const double tol = 1e-12 * std::max(1.0, domain.scale());
      for (const auto& p : request.points) {
        if (p.dim() != domain.dimension()) throw ConfigError("boundary: user point has wrong dimension");
        if (domain.boundary_distance(p) > tol) throw ConfigError("boundary: user point " + format_point(p) + " is not on the boundary");
      }
      out = request.points;
      break;
    }
  }
  if (has_duplicates(out)) throw ConfigError("boundary: points must be pairwise distinct");
  return out;
}

double min_separation(const std::vector<Point>& points) {
  if (points.size() < 2) throw std::invalid_argument("min_separation: at least two points required");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, distance(points[i], points[j]));
  }
  return best;
}

std::size_t CollocationSet::dimension() const {
  if (!boundary.empty()) return boundary.front().dim();
  return interior.empty() ? 0 : interior.front().dim();
}

std::vector<Point> CollocationSet::all_points() const {
  std::vector<Point> all = interior;
  all.insert(all.end(), boundary.begin(), boundary.end());
  return all;
}

CollocationSet make_collocation_set(std::vector<Point> interior, std::vector<Point> boundary, const Domain* domain) {
  if (boundary.empty()) throw ConfigError("collocation set: at least one boundary point is required");
  CollocationSet set{std::move(interior), std::move(boundary)};
  const std::size_t d = set.dimension();
  if (d < 2) throw ConfigError("collocation set: dimension must be >= 2");
  for (const auto* group : {&set.interior, &set.boundary}) {
    for (const auto& p : *group) {
      if (p.dim() != d) throw ConfigError("collocation set: mixed point dimensions");
      for (std::size_t k = 0; k < d; ++k) {
        if (!std::isfinite(p[k])) throw ConfigError("collocation set: non-finite coordinate");
      }
    }
  }
  if (has_duplicates(set.all_points())) throw ConfigError("collocation set: points must be pairwise distinct");
  if (domain != nullptr) {
    if (domain->dimension() != d) throw ConfigError("collocation set: dimension differs from the domain");
    for (const auto& p : set.interior) {
      if (!domain->contains(p)) throw ConfigError("collocation set: interior point " + format_point(p) + " is outside the domain");
    }
    const double tol = 1e-12 * std::max(1.0, domain->scale());
    for (const auto& p : set.boundary) {
      if (domain->boundary_distance(p) > tol) throw ConfigError("collocation set: boundary point " + format_point(p) + " is off the boundary");
    }
  }
  return set;
}

}  // namespace kansa
