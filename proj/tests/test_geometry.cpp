#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "kansa/errors.hpp"
#include "kansa/geometry.hpp"

using kansa::BoundaryRequest;
using kansa::BoundaryStrategy;
using kansa::Density;
using kansa::Point;

TEST_CASE("interior sampling basics") {
  const auto square = kansa::make_unit_box(2);
  CHECK(kansa::sample_interior(*square, Density::uniform(), 0, 1).empty());
  const auto a = kansa::sample_interior(*square, Density::uniform(), 200, 77);
  const auto b = kansa::sample_interior(*square, Density::uniform(), 200, 77);
  const auto c = kansa::sample_interior(*square, Density::uniform(), 200, 78);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) CHECK(square->contains(p));
}

TEST_CASE("uniform sampling on the unit square") {
  const auto square = kansa::make_unit_box(2);
  const auto pts = kansa::sample_interior(*square, Density::uniform(), 10000, 2023);
  double mx = 0.0, my = 0.0;
  std::vector<int> cells(16, 0);
  for (const auto& p : pts) {
    mx += p[0];
    my += p[1];
    ++cells[static_cast<int>(p[0] * 4.0) * 4 + static_cast<int>(p[1] * 4.0)];
  }
  CHECK(std::abs(mx / 1e4 - 0.5) < 0.02);
  CHECK(std::abs(my / 1e4 - 0.5) < 0.02);
  double chi2 = 0.0;
  for (int count : cells) chi2 += (count - 625.0) * (count - 625.0) / 625.0;
  // 0.999 quantile of chi-square with 15 degrees of freedom.
  CHECK(chi2 < 37.697);
}

TEST_CASE("custom densities") {
  const auto square = kansa::make_unit_box(2);
  const Density bump = Density::gaussian_bump(Point{0.2, 0.2}, 0.1);
  kansa::validate_density(*square, bump);
  const auto pts = kansa::sample_interior(*square, bump, 2000, 5);
  double mx = 0.0;
  for (const auto& p : pts) mx += p[0];
  CHECK(mx / 2000.0 < 0.3);
  const Density liar = Density::custom("liar", [](const Point& p) { return 10.0 * p[0]; }, 1.0);
  CHECK_THROWS_AS(kansa::validate_density(*square, liar), kansa::ConfigError);
  const Density empty = Density::custom("empty", [](const Point&) { return 0.0; }, 1.0);
  CHECK_THROWS_AS(kansa::sample_interior(*square, empty, 1, 1), kansa::ConfigError);
}

TEST_CASE("other domains") {
  const auto disk = kansa::make_ball(Point{0.0, 0.0}, 1.0);
  for (const auto& p : kansa::sample_interior(*disk, Density::uniform(), 500, 9)) CHECK(disk->contains(p));
  const auto cube = kansa::make_unit_box(3);
  CHECK(cube->dimension() == 3);
  const auto l_shape = kansa::make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  CHECK(l_shape->contains(Point{0.5, 1.5}));
  CHECK_FALSE(l_shape->contains(Point{1.5, 1.5}));
  CHECK_FALSE(l_shape->contains(Point{1.0, 0.5 + 1.0}));
  for (const auto& p : kansa::sample_interior(*l_shape, Density::uniform(), 500, 3)) CHECK(l_shape->contains(p));
  CHECK_THROWS_AS(kansa::make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::make_polygon({{0, 0}, {1, 0}, {2, 0}}), kansa::ConfigError);
}

TEST_CASE("equispaced boundary layouts") {
  const auto square = kansa::make_unit_box(2);
  const auto corners = kansa::sample_boundary(*square, {BoundaryStrategy::Equispaced, 4, 0, {}});
  CHECK(corners == std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto again = kansa::sample_boundary(*square, {BoundaryStrategy::Equispaced, 4, 0, {}});
  CHECK(again == corners);

  const auto disk = kansa::make_ball(Point{0.0, 0.0}, 1.0);
  const auto tri = kansa::sample_boundary(*disk, {BoundaryStrategy::Equispaced, 3, 0, {}});
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    CHECK(std::abs(tri[k][0] - std::cos(angle)) < 1e-15);
    CHECK(std::abs(tri[k][1] - std::sin(angle)) < 1e-15);
  }

  for (const auto& domain : {kansa::make_unit_box(3), kansa::make_ball(Point{0.0, 0.0, 0.0}, 2.0),
                             kansa::make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}})}) {
    const auto pts = kansa::sample_boundary(*domain, {BoundaryStrategy::Equispaced, 37, 0, {}});
    CHECK(pts.size() == 37);
    CHECK_FALSE(kansa::has_duplicates(pts));
    for (const auto& q : pts) CHECK(domain->boundary_distance(q) < 1e-12 * domain->scale());
  }
}

TEST_CASE("random and user boundary points") {
  const auto square = kansa::make_unit_box(2);
  const auto r1 = kansa::sample_boundary(*square, {BoundaryStrategy::Random, 20, 4, {}});
  const auto r2 = kansa::sample_boundary(*square, {BoundaryStrategy::Random, 20, 4, {}});
  CHECK(r1 == r2);
  for (const auto& q : r1) CHECK(square->boundary_distance(q) < 1e-12);

  const std::vector<Point> user{{0.0, 0.5}, {0.5, 1.0}};
  CHECK(kansa::sample_boundary(*square, {BoundaryStrategy::UserList, 2, 0, user}) == user);
  const std::vector<Point> repeated{{0.0, 0.5}, {0.0, 0.5}};
  CHECK_THROWS_AS(kansa::sample_boundary(*square, {BoundaryStrategy::UserList, 2, 0, repeated}), kansa::ConfigError);
  const std::vector<Point> inside{{0.5, 0.5}};
  CHECK_THROWS_AS(kansa::sample_boundary(*square, {BoundaryStrategy::UserList, 1, 0, inside}), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::sample_boundary(*square, {BoundaryStrategy::Equispaced, 0, 0, {}}), kansa::ConfigError);
}

TEST_CASE("min_separation") {
  CHECK(kansa::min_separation({{0, 0}, {1, 0}, {0, 1}}) == 1.0);
  CHECK(kansa::min_separation({{0, 0}, {0, 0}}) == 0.0);
  CHECK_THROWS(kansa::min_separation({{0, 0}}));
  const auto pts = kansa::sample_interior(*kansa::make_unit_box(2), Density::uniform(), 100, 12);
  double brute = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) brute = std::min(brute, kansa::distance(pts[i], pts[j]));
  }
  CHECK(kansa::min_separation(pts) == brute);
}

TEST_CASE("collocation set invariants") {
  const auto square = kansa::make_unit_box(2);
  const std::vector<Point> boundary{{0, 0}, {1, 0}};
  const auto set = kansa::make_collocation_set({{0.5, 0.5}}, boundary, square.get());
  CHECK(set.size() == 3);
  CHECK(set.all_points().front() == Point{0.5, 0.5});
  CHECK_THROWS_AS(kansa::make_collocation_set({{0.5, 0.5}}, {}, square.get()), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::make_collocation_set({{0.5, 0.5}, {0.5, 0.5}}, boundary, square.get()), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::make_collocation_set({{0.0, 0.0}}, boundary), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::make_collocation_set({{1.5, 0.5}}, boundary, square.get()), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::make_collocation_set({{0.5, 0.5, 0.5}}, boundary), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::make_collocation_set({{0.5, NAN}}, boundary), kansa::ConfigError);
}
