// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--known-red 5[,k...]] [--only 1,4,...]
//
// A criterion listed with --known-red is expected to fail. The exit status is
// nonzero when any other criterion fails, or when a known-red one passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hopsign/eigen.hpp"
#include "hopsign/error.hpp"
#include "hopsign/polyalg.hpp"
#include "hopsign/spectra.hpp"
#include "hopsign/transfer.hpp"

using namespace hopsign;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;  // extra indented lines
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ------------------------------------------------------------------ 1
// Reference values typed in by hand: c~_n, u_n, v_n for n = 1..9 and tr T_n
// for n = 1..8, coefficients in ascending powers of lambda.

struct GoldenUV {
  int c;
  std::vector<int> u;
  std::vector<int> v;
};

const GoldenUV kTable1[] = {
    {1, {1}, {}},
    {1, {0, 1}, {-1}},
    {-1, {-1, 0, 1}, {0, -1}},
    {-1, {0, 0, 0, 1}, {-1, 0, -1}},
    {1, {-1, 0, 1, 0, 1}, {0, -2, 0, -1}},
    {-1, {0, -1, 0, 0, 0, 1}, {1, 0, -1, 0, -1}},
    {1, {-1, 0, 0, 0, 1, 0, 1}, {0, -1, 0, -2, 0, -1}},
    {-1, {0, 0, 0, 0, 0, 0, 0, 1}, {-1, 0, 0, 0, -1, 0, -1}},
    {1, {-1, 0, 0, 0, 1, 0, 1, 0, 1}, {0, -2, 0, -2, 0, -2, 0, -1}},
};

const std::vector<int> kTable2[] = {
    {0, 1},
    {-2, 0, 1},
    {0, -1, 0, 1},
    {-2, 0, 0, 0, 1},
    {0, -3, 0, -1, 0, 1},
    {0, 0, -1, 0, 0, 0, 1},
    {0, -1, 0, -2, 0, -1, 0, 1},
    {-2, 0, 0, 0, 0, 0, 0, 0, 1},
};

IntPolynomial poly(const std::vector<int>& c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return IntPolynomial(std::move(b));
}

Outcome golden_tables() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const UVTable t = uv_polys(9);
  int bad = 0;
  for (int n = 1; n <= 9; ++n) {
    const GoldenUV& g = kTable1[n - 1];
    if (c_tilde(n) != g.c) ++bad, o.notes.push_back(fmt("c~_%d differs", n));
    if (!(t.u[static_cast<std::size_t>(n)] == poly(g.u))) ++bad, o.notes.push_back(fmt("u_%d differs", n));
    if (!(t.v[static_cast<std::size_t>(n)] == poly(g.v))) ++bad, o.notes.push_back(fmt("v_%d differs", n));
  }
  for (int n = 1; n <= 8; ++n) {
    if (!(trace_poly(n) == poly(kTable2[n - 1]))) ++bad, o.notes.push_back(fmt("tr T_%d differs", n));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = bad == 0 && secs < 1.0;
  o.detail = fmt("c~, u, v for n <= 9 and tr T_n for n <= 8: %d mismatches, %.3f s (limit 1 s)", bad, secs);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const IdentityReport rep = verify_identities(10);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int failed = 0;
  for (const auto& c : rep.checks) {
    if (!c.pass) {
      ++failed;
      o.notes.push_back(fmt("r=%d %s: %s", c.r, c.check.c_str(), c.detail.c_str()));
    }
  }
  o.pass = rep.all_pass() && rep.checks.size() == 40 && secs < 30.0;
  o.detail = fmt("trace, det, u_power, u_shape for r = 1..10: %zu checks, %d failed, %.2f s (limit 30 s)",
                 rep.checks.size(), failed, secs);
  return o;
}

// ------------------------------------------------------------------ 3

Outcome p_table_equivalence() {
  Outcome o;
  const long i_max = 4096;
  const PTable p = p_table(i_max);
  UVRecurrence rec;
  long bad = 0;
  long first = -1;
  for (long i = 1; i <= i_max; ++i) {
    rec.advance();
    if (!(rec.u() == p.row_polynomial(i))) {
      if (bad++ == 0) first = i;
    }
  }
  o.pass = bad == 0 && p.collisions() == 0;
  o.detail = fmt("rows 1..%ld: %ld mismatches, %ld collisions", i_max, bad, p.collisions());
  if (first > 0) o.notes.push_back(fmt("first mismatch at i = %ld", first));
  return o;
}

// ------------------------------------------------------------------ 4

Outcome closed_form_curves() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  double worst_discrete = 0.0;
  for (double s : {0.5, 0.9025}) {
    for (int n = 0; n <= 3; ++n) {
      for (Branch b : {Branch::plus, Branch::minus}) {
        const CurveCheck c = curve_check(n, b, s, 512);
        worst = std::max(worst, c.hausdorff);
        worst_discrete = std::max(worst_discrete, c.discrete_hausdorff);
        o.notes.push_back(fmt("sigma=%-6g n=%d %c  hausdorff %.2e  (cloud->curve %.2e, curve->spectrum %.2e)", s, n,
                              b == Branch::plus ? '+' : '-', c.hausdorff, c.cloud_to_curve, c.curve_to_spectrum));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = worst <= 1e-6 && secs < 60.0;
  o.detail = fmt("max hausdorff %.2e over n=0..3, both branches, sigma 0.5/0.9025 (alpha-grid cloud vs "
                 "vertices %.2e, for reference); %.1f s",
                 worst, worst_discrete, secs);
  return o;
}

// ------------------------------------------------------------------ 5

Outcome hole_gap() {
  Outcome o;
  const double sigma = 0.5;
  const PiUnionResult r = pi_union(12, sigma, 256);
  const RegionParams params(sigma);
  std::size_t in_h = 0;
  for (const auto& p : r.cloud.points()) in_h += region_tests(p.z, params).in_H ? 1 : 0;
  const HoleSummary h = hole_summary(r.cloud);
  o.pass = in_h == 0 && h.min_distance > 0.01;
  o.detail = fmt("%zu points, in_H true for %zu, min distance to closed hole %.3g (needs 0 and > 0.01)",
                 r.cloud.size(), in_h, h.min_distance);
  o.notes.push_back(fmt("inside by more than the 1e-9 band: %zu; deepest max ellipse level %.17g", h.inside,
                        h.deepest_level));
  o.notes.push_back("the constant words of period 1 give the two ellipse boundaries, and the hole boundary "
                    "is made of their arcs, so the distance is 0 and strict in_H hits are rounding on that boundary");
  o.notes.push_back(fmt("without the constant words: %zu points, min distance %.6f (the visible gap)",
                        h.nonconstant_points, h.min_distance_nonconstant));
  return o;
}

// ------------------------------------------------------------------ 6

Outcome inclusion_bounds() {
  Outcome o;
  PeriodicSampleConfig cfg;
  cfg.count = 10000;
  cfg.n_max = 100;
  cfg.sigma = 0.5;
  cfg.seed = 20240607;
  const SpectrumCloud cloud = random_periodic_sample(cfg);
  const auto z = cloud.values();
  const BoundsReport per = bounds_report(z, 0.5);

  FiniteSampleConfig fin;
  fin.n = 500;
  fin.sigma = 0.9025;
  fin.seed = 20240607;
  const auto open = random_finite_sample(fin, false).values();
  std::size_t open_bad = 0;
  double open_l1 = 0.0;
  for (const auto& w : open) {
    const double l1 = std::abs(w.real()) + std::abs(w.imag());
    open_l1 = std::max(open_l1, l1);
    if (l1 > 1.9 + 1e-9) ++open_bad;
  }
  o.pass = per.annulus_violations == 0 && per.diamond_violations == 0 && open_bad == 0 && open.size() == 500;
  o.detail = fmt("%zu periodic eigenvalues: |z| in [%.4f, %.4f], max |x|+|y| %.4f (<= %.4f), %zu+%zu violations; "
                 "open N=500: max |x|+|y| %.4f, %zu violations",
                 z.size(), per.min_abs, per.max_abs, per.max_l1, std::sqrt(2.5), per.annulus_violations,
                 per.diamond_violations, open_l1, open_bad);
  return o;
}

// ------------------------------------------------------------------ 7

Outcome scaling_similarity() {
  Outcome o;
  const double sigma = 0.9025;
  std::mt19937_64 gen(77);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> d(49);
    for (auto& v : d) v = (gen() >> 63) ? 1.0 : -1.0;
    std::vector<double> sd(d);
    for (auto& v : sd) v *= sigma;
    const auto a = eigvals(build_finite(sd));
    auto b = eigvals(build_finite(d));
    for (auto& w : b) w *= std::sqrt(sigma);
    sort_eigenvalues(b);
    if (a.size() != b.size()) return {false, "size mismatch", {}};
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  }
  o.pass = worst <= 1e-9;
  o.detail = fmt("50 draws, N=50: max elementwise gap %.2e (tol 1e-9)", worst);
  return o;
}

// ------------------------------------------------------------------ 8

Outcome spectral_mapping() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  double worst_mb = 0.0;
  int words = 0;
  for (double s2 : {0.25, 0.81}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
        const SquareCheck r = square_spectrum_check(SignWord::from_mask(mask, n, s2), 512);
        worst = std::max(worst, r.hausdorff);
        worst_mb = std::max(worst_mb, r.mb_hausdorff);
        ++words;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = worst <= 1e-6 && worst_mb <= 1e-6;
  o.detail = fmt("%d words (all periods <= 4, sigma^2 0.25/0.81): squares %.2e, M_b %.2e; %.1f s", words, worst,
                 worst_mb, secs);
  return o;
}

// ------------------------------------------------------------------ 9

Outcome bounded_eigenfunction() {
  Outcome o;
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long i_max = 100000;
  int failed = 0;
  double worst_ratio = 0.0;
  double disagreement = 0.0;
  for (int k = 0; k < 100; ++k) {
    // uniform on the disc of radius 0.9
    const cplx lambda = std::polar(0.9 * std::sqrt(unit(gen)), 2.0 * kPi * unit(gen));
    const UeBound b = ue_bound_check(lambda, i_max);
    // independent pass over the same recurrence
    cplx prev{0.0}, cur{1.0};
    double mx = 1.0;
    for (long i = 1; i < i_max; ++i) {
      const cplx next = lambda * cur - static_cast<double>(c_tilde(i)) * prev;
      prev = cur;
      cur = next;
      mx = std::max(mx, std::abs(cur));
    }
    const double bound = 1.0 / (1.0 - std::abs(lambda));
    disagreement = std::max(disagreement, std::abs(mx - b.max_abs) / bound);
    if (!(b.max_abs <= bound + 1e-9) || !(mx <= bound + 1e-9)) ++failed;
    worst_ratio = std::max(worst_ratio, std::max(mx, b.max_abs) / bound);
  }
  o.pass = failed == 0;
  o.detail = fmt("100 lambda in |lambda| <= 0.9, i_max 1e5: %d over bound, max |u|/bound %.4f "
                 "(library vs direct loop %.1e)",
                 failed, worst_ratio, disagreement);
  return o;
}

// ------------------------------------------------------------------ 10

Outcome denseness_grid() {
  Outcome o;
  double worst_closed = 0.0;
  double worst_numeric = 0.0;
  int points = 0;
  for (int m = 0; m <= 2; ++m) {
    const double reach = std::pow(2.0, 1.0 / std::ldexp(1.0, m));
    for (Branch b : {Branch::plus, Branch::minus}) {
      const PeriodicTridiag op = PeriodicTridiag::from_word(c_iterate_word(m, b, 1.0)).bloch_ready();
      // the minus star is the plus star turned by pi / 2^{m+1}
      const double turn = b == Branch::minus ? kPi / std::ldexp(2.0, m) : 0.0;
      for (double r : {reach / 2.0, reach}) {
        for (int j = 0; j < (4 << m); ++j) {
          const cplx q = std::polar(r, kPi * j / std::ldexp(1.0, m) + turn);
          worst_closed = std::max(worst_closed, distance_to_star(q, m, b));
          worst_numeric = std::max(worst_numeric, bloch_distance_bound(op, q));
          ++points;
        }
      }
    }
  }
  o.pass = worst_closed <= 1e-6 && worst_numeric <= 1e-6;
  o.detail = fmt("%d grid points, m = 0..2, both branches: to closed-form star %.2e, to Bloch spectrum %.2e", points,
                 worst_closed, worst_numeric);
  return o;
}

// ------------------------------------------------------------------ 11

Outcome eigensolver() {
  Outcome o;
  std::mt19937_64 gen(11);
  const double sigmas[] = {0.5, 0.9025, 1.0};
  double worst_open = 0.0;
  double worst_per = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double s = sigmas[gen() % 3];
    const std::size_t n = 3 + gen() % 8;
    std::vector<double> c(n);
    for (auto& v : c) v = (gen() >> 63) ? s : -s;
    const DenseMatrix open = build_finite(std::span<const double>(c).first(n - 1));
    worst_open = std::max(worst_open, matching_distance(eigvals(open), oracle_eigvals(open)));
    const cplx alpha = std::polar(1.0, 2.0 * kPi * static_cast<double>(gen() >> 11) * 0x1.0p-53);
    const DenseMatrix per = build_periodic(c, alpha);
    worst_per = std::max(worst_per, matching_distance(eigvals(per), oracle_eigvals(per)));
  }
  o.pass = worst_open <= 1e-8 && worst_per <= 1e-8;
  o.detail = fmt("200 draws per shape, n = 3..10: open %.2e, periodised %.2e (tol 1e-8)", worst_open, worst_per);
  return o;
}

// ------------------------------------------------------------------ 12

Outcome decay() {
  Outcome o;
  int bad = 0;
  double worst_inside = 0.0;
  for (int i = 1; i <= 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const cplx lambda = std::polar(0.08 * i, 2.0 * kPi * (j + 0.5 * (i % 2)) / 10.0);
      const DecayReport r = decay_check(lambda, 0.5, 3);
      worst_inside = std::max({worst_inside, r.rate_from_01, r.rate_from_10});
      if (!(r.rate_from_01 < 1.0 && r.rate_from_10 < 1.0)) ++bad;
    }
  }
  const DecayReport out = decay_check(cplx{1.2, 0.0}, 0.5, 3);
  o.pass = bad == 0 && out.rate > 1.0;
  o.detail = fmt("100 points with |lambda| <= 0.8: %d without decay, max rate %.4f; lambda = 1.2: rate %.4f", bad,
                 worst_inside, out.rate);
  return o;
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known_red;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--known-red" || a == "--only") && i + 1 < argc) {
      (a == "--only" ? only : known_red) = parse_list(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--known-red k,...] [--only k,...]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"golden tables", golden_tables},
      {"exact identities", identities},
      {"coefficient recurrence", p_table_equivalence},
      {"closed-form curves", closed_form_curves},
      {"hole gap in pi_12", hole_gap},
      {"inclusion bounds", inclusion_bounds},
      {"scaling similarity", scaling_similarity},
      {"spectral mapping", spectral_mapping},
      {"bounded eigenfunction", bounded_eigenfunction},
      {"denseness grid", denseness_grid},
      {"eigensolver", eigensolver},
      {"decay", decay},
  };

  int unexpected = 0;
  int passed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool red = known_red.count(id) > 0;
    std::printf("%s %2d %-24s %8.2f s  %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first, secs,
                o.detail.c_str(), red ? (o.pass ? "  [expected FAIL, got PASS]" : "  [known red]") : "");
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
    passed += o.pass ? 1 : 0;
    if (o.pass == red) ++unexpected;
  }
  std::printf("%d passed, %d unexpected\n", passed, unexpected);
  return unexpected == 0 ? 0 : 1;
}
