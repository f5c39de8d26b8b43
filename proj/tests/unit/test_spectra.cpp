#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hopsign/error.hpp"
#include "hopsign/spectra.hpp"

using namespace hopsign;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double max_of(const std::vector<cplx>& z, auto&& f) {
  double m = 0.0;
  for (const auto& w : z) m = std::max(m, f(w));
  return m;
}

}  // namespace

TEST_CASE("build_finite") {
  const double s = 0.7;
  const std::vector<double> c = {s};
  const DenseMatrix m = build_finite(c);
  CHECK(m.n() == 2);
  CHECK(m(0, 1) == cplx{1.0});
  CHECK(m(1, 0) == cplx{s});
  CHECK(m(0, 0) == cplx{0.0});
  const std::vector<cplx> want = {-std::sqrt(s), std::sqrt(s)};
  CHECK(matching_distance(eigvals(m), want) <= 1e-14);
  CHECK_THROWS_AS(build_finite(std::vector<double>{}), Error);

  // D^{-1} A_{sigma d} D = sqrt(sigma) A_d
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> d(29);
    for (auto& v : d) v = (gen() & 1) ? 1.0 : -1.0;
    std::vector<double> sd = d;
    for (auto& v : sd) v *= 0.9025;
    auto a = eigvals(build_finite(sd));
    auto b = eigvals(build_finite(d));
    for (auto& z : b) z *= std::sqrt(0.9025);
    sort_eigenvalues(b);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-9);
    CHECK(max_of(a, [](cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }) <= 1.9 + 1e-9);
  }
}

TEST_CASE("build_periodic") {
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  const DenseMatrix m = build_periodic(ones, 1.0);
  CHECK(matching_distance(eigvals(m), std::vector<cplx>{2.0, -1.0, -1.0}) <= 1e-12);

  const std::vector<double> c = {0.5, -0.5, 0.5, -0.5};
  const cplx alpha = std::polar(1.0, 0.3);
  const DenseMatrix p = build_periodic(c, alpha);
  CHECK(p(1, 0) == cplx{0.5});
  CHECK(p(3, 2) == cplx{0.5});
  CHECK(p(0, 3) == alpha * -0.5);
  CHECK(std::abs(p(3, 0) - 1.0 / alpha) < 1e-15);
  CHECK_THROWS_AS(build_periodic(std::vector<double>{1.0, 1.0}, 1.0), Error);
  CHECK_THROWS_AS(build_periodic(ones, cplx{1.0 + 1e-9}), Error);

  // the word-based builder agrees: c_k at word position k, c_N at position 0
  const SignWord w({-1, 1, -1, 1}, 0.5);
  const DenseMatrix q = build_periodic(PeriodicTridiag::from_word(w), alpha);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(q(i, j) - p(i, j)) < 1e-15);
}

TEST_CASE("floquet_eigvals for short periods") {
  const cplx alpha = std::polar(1.0, 0.9);
  const PeriodicTridiag one = PeriodicTridiag::from_word(SignWord({-1}, 0.5));
  const auto z1 = floquet_eigvals(one, alpha);
  REQUIRE(z1.size() == 1);
  CHECK(std::abs(z1[0] - (-0.5 * alpha + 1.0 / alpha)) < 1e-14);

  const PeriodicTridiag two = PeriodicTridiag::from_word(SignWord({1, -1}, 0.5));
  const auto z2 = floquet_eigvals(two, alpha);
  REQUIRE(z2.size() == 2);
  for (const auto& z : z2) {
    const cplx rhs = 0.5 - 0.5 + 1.0 / alpha + alpha * (0.5 * -0.5);
    CHECK(std::abs(z * z - rhs) < 1e-14);
  }
}

TEST_CASE("bloch_spectrum examples") {
  SUBCASE("constant +1 gives [-2, 2]") {
    const SignWord w({1}, 1.0);
    const SpectrumCloud c = bloch_spectrum(w, 512);
    CHECK(c.size() == 2048);
    CHECK(max_of(c.values(), [](cplx z) { return std::abs(z.imag()) + std::max(0.0, std::abs(z.real()) - 2.0); }) <=
          1e-6);
    for (int k = 0; k <= 400; ++k) CHECK(bloch_distance_bound(w, cplx{-2.0 + k / 100.0, 0.0}) <= 1e-6);
  }
  SUBCASE("constant -1 gives i[-2, 2]") {
    const SignWord w({-1}, 1.0);
    const SpectrumCloud c = bloch_spectrum(w, 512);
    CHECK(max_of(c.values(), [](cplx z) { return std::abs(z.real()) + std::max(0.0, std::abs(z.imag()) - 2.0); }) <=
          1e-6);
    for (int k = 0; k <= 400; ++k) CHECK(bloch_distance_bound(w, cplx{0.0, -2.0 + k / 100.0}) <= 1e-6);
  }
  SUBCASE("(-1)^n sigma lies on the quartic") {
    const double s = 0.5;
    const SpectrumCloud c = bloch_spectrum(c_iterate_word(1, Branch::minus, s), 512);
    CHECK(max_of(c.values(), [&](cplx z) {
            const double u = z.real();
            const double v = z.imag();
            const double q = std::pow(u * u - v * v, 2) / std::pow(1 - s * s, 2) + std::pow(2 * u * v, 2) / std::pow(1 + s * s, 2);
            return std::abs(q - 1.0);
          }) <= 1e-12);
  }
  SUBCASE("metadata") {
    const SignWord w({1, -1, -1}, 0.5);
    const SpectrumCloud c = bloch_spectrum(w, 8);
    for (const auto& p : c.points()) {
      CHECK(p.n == 3);
      CHECK(p.word_id == 0b110);
      CHECK(std::abs(std::abs(p.alpha) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("spectrum_point_near") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  std::uniform_real_distribution<double> tiny(-1e-4, 1e-4);
  const SignWord w({1, 1, -1, 1, -1}, 0.5);
  const PeriodicTridiag op = PeriodicTridiag::from_word(w);
  const SpectrumCloud dense = bloch_spectrum(w, 4096);
  const auto z = dense.values();
  const PointIndex idx(z);
  for (int k = 0; k < 200; ++k) {
    // anywhere: the result is a band point, hence an upper bound
    const cplx q{u(gen), u(gen)};
    const cplx p = spectrum_point_near(op, q);
    CHECK(classify(w, p, 1e-8).region == Region::B);
    // near the spectrum the bound is tight
    const cplx near = z[gen() % z.size()] + cplx{tiny(gen), tiny(gen)};
    CHECK(bloch_distance_bound(op, near) <= 2.0 * idx.nearest_distance(near) + 1e-9);
  }
}

TEST_CASE("necklaces") {
  const std::size_t counts[] = {2, 3, 4, 6, 8, 14, 20, 36, 60, 108, 188, 352};
  for (std::size_t n = 1; n <= 12; ++n) CHECK(necklaces(n).size() == counts[n - 1]);
  for (auto m : necklaces(6)) CHECK(SignWord::from_mask(m, 6, 1.0).canonical().mask() <= m + 63);
}

TEST_CASE("pi_union") {
  SUBCASE("pi_1 is the two ellipses") {
    const PiUnionResult r = pi_union(1, 0.5, 256);
    CHECK(r.raw_words[1] == 2);
    CHECK(r.distinct_words[1] == 2);
    int plus = 0;
    int minus = 0;
    for (const auto& z : r.cloud.values()) {
      const bool on_plus = std::abs(ellipse_level(z, Branch::plus, 0.5) - 1.0) < 1e-12;
      const bool on_minus = std::abs(ellipse_level(z, Branch::minus, 0.5) - 1.0) < 1e-12;
      CHECK((on_plus || on_minus));
      plus += on_plus;
      minus += on_minus;
    }
    CHECK(plus >= 1000);
    CHECK(minus >= 1000);
  }
  SUBCASE("sorted, deterministic, and rotation dedup is sound") {
    PiUnionOptions all;
    all.dedup_rotations = false;
    const PiUnionResult a = pi_union(6, 0.5, 64);
    const PiUnionResult b = pi_union(6, 0.5, 64, all);
    CHECK(a.cloud.points() == pi_union(6, 0.5, 64).cloud.points());
    CHECK(b.cloud.size() > a.cloud.size());
    CHECK(hausdorff(a.cloud.values(), b.cloud.values()) <= 1e-10);
    const auto& pts = a.cloud.points();
    for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k - 1].z.real() <= pts[k].z.real());
    for (std::size_t n = 1; n <= 6; ++n) CHECK(a.raw_words[n] == (1u << n));
  }
  SUBCASE("ceiling") {
    CHECK_THROWS_AS(pi_union(15, 0.5, 8), Error);
    PiUnionOptions low;
    low.ceiling = 3;
    try {
      pi_union(4, 0.5, 8, low);
      FAIL("expected ceiling_exceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ceiling_exceeded);
    }
  }
}

TEST_CASE("symmetry_check") {
  const PiUnionResult one = pi_union(1, 0.5, 256);
  const SymmetryReport s1 = symmetry_check(one.cloud);
  CHECK(s1.closed_conj);
  CHECK(s1.closed_rot);  // the two ellipses swap under lambda -> i lambda

  const SymmetryReport s4 = symmetry_check(pi_union(4, 0.5, 128).cloud);
  CHECK(s4.closed_conj);
  CHECK(s4.closed_rot);
  CHECK(s4.closed_neg);

  const SymmetryReport single = symmetry_check(bloch_spectrum(SignWord({1, 1, -1}, 0.5), 256));
  CHECK(single.closed_conj);
  CHECK(single.closed_neg);
  CHECK_FALSE(single.closed_rot);
  CHECK(single.rot_distance > 1e-3);
}

TEST_CASE("random_periodic_sample") {
  PeriodicSampleConfig cfg;
  cfg.count = 3000;
  cfg.seed = 42;
  const SpectrumCloud a = random_periodic_sample(cfg);
  const SpectrumCloud b = random_periodic_sample(cfg);
  CHECK(a.points() == b.points());
  cfg.seed = 43;
  CHECK_FALSE(random_periodic_sample(cfg).points() == a.points());
  CHECK(a.seed() == std::optional<std::uint64_t>(42));
  CHECK(a.param("n_weight") == std::optional<std::string>("1/N"));

  const auto z = a.values();
  const BoundsReport r = bounds_report(z, 0.5);
  CHECK(r.annulus_violations == 0);
  CHECK(r.diamond_violations == 0);

  // one point per eigenvalue, N drawn with weight 1/N
  std::map<std::uint32_t, std::size_t> per_n;
  for (const auto& p : a.points()) ++per_n[p.n];
  std::size_t draws = 0;
  for (auto& [n, k] : per_n) {
    CHECK(k % n == 0);
    draws += k / n;
  }
  CHECK(draws == 3000);
  const double h100 = 5.187377517639621;  // harmonic number H_100
  CHECK(static_cast<double>(per_n[1]) == Approx(3000.0 / h100).epsilon(0.15));

  PeriodicSampleConfig bad;
  bad.p_sigma = 1.0;
  CHECK_THROWS_AS(random_periodic_sample(bad), Error);
}

TEST_CASE("random_finite_pair uses one draw of c") {
  FiniteSampleConfig cfg;
  cfg.n = 200;
  cfg.seed = 9;
  const FinitePair p = random_finite_pair(cfg);
  CHECK(p.c.size() == 200);
  CHECK(p.open.size() == 200);
  CHECK(p.periodic.size() == 200);
  const auto open_direct = eigvals(build_finite(std::span<const double>(p.c).first(199)));
  CHECK(p.open.values() == open_direct);
  CHECK(p.periodic.values() == eigvals(build_periodic(p.c, 1.0)));
  CHECK(bounds_report(p.open.values(), cfg.sigma).open_diamond_violations == 0);
  const BoundsReport per = bounds_report(p.periodic.values(), cfg.sigma);
  CHECK(per.annulus_violations == 0);
  CHECK(per.diamond_violations == 0);
  CHECK(random_finite_sample(cfg, false).points() == p.open.points());
}

TEST_CASE("square_spectrum_check examples") {
  const SquareCheck plus = square_spectrum_check(SignWord({1}, 1.0), 256);
  CHECK(plus.hausdorff <= 1e-6);
  CHECK(plus.mb_hausdorff <= 1e-6);
  const SquareCheck minus = square_spectrum_check(SignWord({-1}, 0.25), 512);
  CHECK(minus.hausdorff <= 1e-6);
  CHECK(minus.mb_hausdorff <= 1e-6);
  // the period-4 word c^{(1,+)} at sigma 1 is a cross: squares fill [-2, 2]
  const SpectrumCloud cross = bloch_spectrum(c_iterate_word(1, Branch::plus, 1.0), 256);
  for (const auto& z : cross.values()) {
    CHECK(std::min(std::abs(z.real()), std::abs(z.imag())) <= 1e-9);
    CHECK(std::abs(z) <= std::sqrt(2.0) + 1e-9);
  }
}

TEST_CASE("ue_bound_check") {
  const UeBound half = ue_bound_check(0.5, 100000);
  CHECK(half.pass);
  CHECK(half.max_abs <= 2.0);
  const UeBound zero = ue_bound_check(0.0, 1000);
  CHECK(zero.max_abs == 1.0);
  const UeBound rot = ue_bound_check(std::polar(0.9, kPi / 3), 100000);
  CHECK(rot.pass);
  CHECK(rot.max_abs <= 10.0);
  CHECK_THROWS_AS(ue_bound_check(0.995, 10), Error);
  CHECK_THROWS_AS(ue_bound_check(0.5, 2000000), Error);
}

TEST_CASE("sigma = 1 stars") {
  CHECK(star_segments(0, Branch::plus).size() == 2);
  CHECK(star_segments(2, Branch::minus).size() == 8);
  CHECK(distance_to_star(cplx{1.0, 0.0}, 0, Branch::plus) == 0.0);
  CHECK(distance_to_star(cplx{0.0, 1.0}, 0, Branch::plus) == Approx(1.0));
  CHECK(distance_to_star(cplx{0.0, 1.0}, 0, Branch::minus) <= 1e-15);
  CHECK(distance_to_star(cplx{3.0, 0.0}, 0, Branch::plus) == Approx(1.0));
  for (int m = 0; m <= 2; ++m) {
    for (Branch b : {Branch::plus, Branch::minus}) {
      const SpectrumCloud c = bloch_spectrum(c_iterate_word(m, b, 1.0), 128);
      CHECK(max_of(c.values(), [&](cplx z) { return distance_to_star(z, m, b); }) <= 1e-9);
    }
  }
}

TEST_CASE("curve_check and hole_summary") {
  const CurveCheck c = curve_check(1, Branch::minus, 0.5, 128, 256);
  CHECK(c.hausdorff <= 1e-9);
  CHECK(c.discrete_hausdorff > c.hausdorff);

  const PiUnionResult r = pi_union(3, 0.5, 64);
  const HoleSummary h = hole_summary(r.cloud);
  CHECK(h.inside == 0);
  CHECK(h.min_distance == 0.0);  // the ellipses from period 1 bound the hole
  CHECK(h.min_distance_nonconstant > 0.01);
}
