#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hopsign/geometry.hpp"
#include "hopsign/transfer.hpp"

using namespace hopsign;
using doctest::Approx;

namespace {

double brute_nearest(const std::vector<cplx>& pts, cplx q) {
  double best = INFINITY;
  for (const auto& p : pts) best = std::min(best, std::abs(p - q));
  return best;
}

}  // namespace

TEST_CASE("PointIndex matches brute force") {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> g;
  for (int layout = 0; layout < 3; ++layout) {
    std::vector<cplx> pts;
    for (int k = 0; k < 3000; ++k) {
      if (layout == 0) pts.emplace_back(g(gen), g(gen));
      if (layout == 1) pts.emplace_back(g(gen), 0.0);  // degenerate box
      if (layout == 2) pts.push_back(std::polar(1.0 + 1e-3 * g(gen), 0.01 * k));
    }
    const PointIndex idx(pts);
    for (int k = 0; k < 500; ++k) {
      const cplx q{3.0 * g(gen), 3.0 * g(gen)};
      const std::size_t i = idx.nearest(q);
      REQUIRE(i < pts.size());
      CHECK(std::abs(pts[i] - q) == brute_nearest(pts, q));
    }
  }
  const PointIndex empty(std::vector<cplx>{});
  CHECK(std::isinf(empty.nearest_distance(0.0)));
}

TEST_CASE("Hausdorff distances") {
  const std::vector<cplx> a = {0.0, 1.0};
  const std::vector<cplx> b = {0.0, 1.0, 3.0};
  CHECK(directed_hausdorff(a, b) == 0.0);
  CHECK(directed_hausdorff(b, a) == 2.0);
  CHECK(hausdorff(a, b) == 2.0);

  const Polyline square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
  CHECK(distance_to_polyline({0.5, 0.5}, square) == Approx(0.5));
  CHECK(distance_to_polyline({-1.0, 0.5}, square) == Approx(1.0));
  const Polyline open{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, false};
  CHECK(distance_to_polyline({-0.5, 0.5}, open) == Approx(std::sqrt(0.5)));  // no closing edge
}

TEST_CASE("polylines") {
  const Polyline e = ellipse_polyline(Branch::plus, 0.5, 360);
  for (const auto& v : e.vertices) CHECK(ellipse_level(v, Branch::plus, 0.5) == Approx(1.0));
  const Polyline h = hole_polyline(0.5, 360);
  for (const auto& v : h.vertices) {
    const double level = std::max(ellipse_level(v, Branch::plus, 0.5), ellipse_level(v, Branch::minus, 0.5));
    CHECK(level == Approx(1.0));
  }
  const Polyline r = rho_polyline(0, Branch::minus, 0.5, 360);
  for (const auto& v : r.vertices) CHECK(ellipse_level(v, Branch::minus, 0.5) == Approx(1.0));
}

TEST_CASE("distance to the closed hole") {
  const double s = 0.5;
  CHECK(distance_to_hole_closure(0.0, s) == 0.0);
  // on the real axis the hole ends at 1 - sigma
  CHECK(distance_to_hole_closure(1.0, s) == Approx(0.5).epsilon(1e-10));
  CHECK(std::isinf(distance_to_hole_closure(0.3, 1.0)));

  // brute force over a dense boundary
  const Polyline fine = hole_polyline(s, 200000);
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 40; ++k) {
    const cplx q{u(gen), u(gen)};
    const double want = std::max(ellipse_level(q, Branch::plus, s), ellipse_level(q, Branch::minus, s)) <= 1.0
                            ? 0.0
                            : distance_to_polyline(q, fine);
    CHECK(distance_to_hole_closure(q, s) == Approx(want).epsilon(1e-8));
  }

  std::vector<cplx> cloud = {{1.2, 0.0}, {0.0, -0.9}, {0.7, 0.7}};
  const HoleReport rep = hole_report(cloud, s);
  CHECK(rep.inside == 0);
  double brute = INFINITY;
  for (const auto& p : cloud) brute = std::min(brute, distance_to_hole_closure(p, s));
  CHECK(rep.min_distance == Approx(brute));
  cloud.emplace_back(0.1, 0.1);
  const HoleReport in = hole_report(cloud, s);
  CHECK(in.inside == 1);
  CHECK(in.nearest == 3);
  CHECK(in.min_distance == 0.0);
}
