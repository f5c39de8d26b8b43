#include "hopsign/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "hopsign/error.hpp"
#include "hopsign/parallel.hpp"

namespace hopsign {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), salt};
  return std::mt19937_64(seq);
}

std::uint64_t hash_signs(std::span<const std::int8_t> signs) noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto s : signs) {
    h ^= static_cast<std::uint8_t>(s);
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t id_of_values(std::span<const double> c) {
  if (c.size() <= 64) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] < 0.0) m |= std::uint64_t{1} << k;
    return m;
  }
  std::vector<std::int8_t> s(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) s[k] = c[k] < 0.0 ? -1 : 1;
  return hash_signs(s);
}

void check_alpha(cplx alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "alpha must have unit modulus");
  }
}

// Floquet matrix with colliding entries added, valid for every period.
DenseMatrix floquet_matrix(const PeriodicTridiag& op, cplx alpha) {
  const std::size_t n = op.period();
  DenseMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) += op.diag[r];
    m(r, (r + n - 1) % n) += r == 0 ? alpha * op.sub[0] : cplx{op.sub[r]};
    m(r, (r + 1) % n) += r + 1 == n ? 1.0 / alpha : cplx{1.0};
  }
  return m;
}

double segment_distance(cplx q, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(q - a);
  const double t = std::clamp(((q - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(q - (a + t * ab));
}

}  // namespace

// ---------------------------------------------------------- SpectrumCloud

void SpectrumCloud::set_param(const std::string& key, const std::string& value) {
  for (auto& [k, v] : params_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  params_.emplace_back(key, value);
}

std::optional<std::string> SpectrumCloud::param(const std::string& key) const {
  for (const auto& [k, v] : params_)
    if (k == key) return v;
  return std::nullopt;
}

void SpectrumCloud::add(const CloudPoint& p) {
  if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
    throw Error(ErrorCode::invalid_argument, "spectrum points must be finite");
  }
  points_.push_back(p);
}

void SpectrumCloud::append(const SpectrumCloud& other) {
  points_.insert(points_.end(), other.points_.begin(), other.points_.end());
}

std::vector<cplx> SpectrumCloud::values() const {
  std::vector<cplx> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.z);
  return v;
}

void SpectrumCloud::sort() {
  auto key = [](const CloudPoint& p) {
    return std::make_tuple(p.z.real(), p.z.imag(), p.n, p.word_id, p.alpha.real(), p.alpha.imag());
  };
  std::sort(points_.begin(), points_.end(), [&](const CloudPoint& a, const CloudPoint& b) { return key(a) < key(b); });
}

// --------------------------------------------------------------- builders

DenseMatrix build_finite(std::span<const double> c) {
  if (c.empty()) throw Error(ErrorCode::invalid_argument, "build_finite needs at least one coefficient");
  const std::size_t n = c.size() + 1;
  DenseMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = 1.0;
    m(i + 1, i) = c[i];
  }
  return m;
}

DenseMatrix build_periodic(std::span<const double> c, cplx alpha) {
  const std::size_t n = c.size();
  if (n < 3) throw Error(ErrorCode::invalid_argument, "build_periodic needs N >= 3");
  check_alpha(alpha);
  DenseMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = 1.0;
    m(i + 1, i) = c[i];
  }
  m(0, n - 1) = alpha * c[n - 1];
  m(n - 1, 0) = 1.0 / alpha;
  return m;
}

PeriodicTridiag PeriodicTridiag::from_word(const SignWord& word) {
  PeriodicTridiag op;
  op.diag.assign(word.period(), 0.0);
  op.sub.resize(word.period());
  for (std::size_t k = 0; k < word.period(); ++k) op.sub[k] = word.value(static_cast<long>(k));
  return op;
}

PeriodicTridiag PeriodicTridiag::from_diag_word(const DiagWord& word) {
  if (word.sup != 1.0) throw Error(ErrorCode::invalid_argument, "periodic operators need unit superdiagonal");
  PeriodicTridiag op;
  op.diag = word.diag;
  op.sub.assign(word.period(), word.sub);
  return op;
}

PeriodicTridiag PeriodicTridiag::repeated(std::size_t times) const {
  if (times == 0) throw Error(ErrorCode::invalid_argument, "repeat count must be positive");
  PeriodicTridiag out;
  for (std::size_t t = 0; t < times; ++t) {
    out.diag.insert(out.diag.end(), diag.begin(), diag.end());
    out.sub.insert(out.sub.end(), sub.begin(), sub.end());
  }
  return out;
}

PeriodicTridiag PeriodicTridiag::bloch_ready() const {
  if (period() == 0) throw Error(ErrorCode::invalid_argument, "empty periodic operator");
  if (period() >= 3) return *this;
  return repeated(4 / period());
}

DenseMatrix build_periodic(const PeriodicTridiag& op, cplx alpha) {
  if (op.period() < 3) throw Error(ErrorCode::invalid_argument, "build_periodic needs N >= 3");
  if (op.diag.size() != op.sub.size()) throw Error(ErrorCode::invalid_argument, "diag and sub lengths differ");
  check_alpha(alpha);
  return floquet_matrix(op, alpha);
}

std::vector<cplx> floquet_eigvals(const PeriodicTridiag& op, cplx alpha) {
  if (op.period() == 0 || op.diag.size() != op.sub.size()) {
    throw Error(ErrorCode::invalid_argument, "malformed periodic operator");
  }
  check_alpha(alpha);
  return eigvals(floquet_matrix(op, alpha));
}

std::vector<cplx> alpha_grid(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::invalid_argument, "alpha grid needs at least one point");
  std::vector<cplx> g(count);
  for (std::size_t k = 0; k < count; ++k) {
    g[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(count));
  }
  return g;
}

std::uint64_t word_id(const SignWord& word) noexcept {
  if (word.period() <= 64) return word.mask();
  return hash_signs(word.signs());
}

// ------------------------------------------------------------------ Bloch

namespace {

SpectrumCloud bloch_cloud(const PeriodicTridiag& op, std::size_t alpha_count, double sigma, std::uint32_t tag_n,
                          std::uint64_t id) {
  const PeriodicTridiag ready = op.bloch_ready();
  const std::vector<cplx> grid = alpha_grid(alpha_count);
  std::vector<std::vector<cplx>> eig(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { eig[k] = eigvals(build_periodic(ready, grid[k])); });
  SpectrumCloud cloud(sigma);
  cloud.points().reserve(grid.size() * ready.period());
  for (std::size_t k = 0; k < grid.size(); ++k)
    for (const auto& z : eig[k]) cloud.add({z, tag_n, id, grid[k]});
  cloud.set_param("alpha_count", std::to_string(alpha_count));
  return cloud;
}

}  // namespace

SpectrumCloud bloch_spectrum(const SignWord& word, std::size_t alpha_count) {
  SpectrumCloud cloud = bloch_cloud(PeriodicTridiag::from_word(word), alpha_count, word.sigma(),
                                    static_cast<std::uint32_t>(word.period()), word_id(word));
  cloud.set_param("period", std::to_string(word.period()));
  return cloud;
}

SpectrumCloud bloch_spectrum(const PeriodicTridiag& op, std::size_t alpha_count, double sigma) {
  std::vector<std::int8_t> signs;
  for (double s : op.sub) signs.push_back(s < 0.0 ? -1 : 1);
  for (double d : op.diag) signs.push_back(static_cast<std::int8_t>(std::lround(d * 64.0)));
  return bloch_cloud(op, alpha_count, sigma, static_cast<std::uint32_t>(op.period()), hash_signs(signs));
}

cplx spectrum_point_near(const PeriodicTridiag& op, cplx lambda) {
  const Transfer2x2 t = transfer_matrix(op.diag, op.sub, lambda);
  const auto [z1, z2] = quadratic_roots(t.trace(), t.det());
  cplx best = lambda;
  double best_d = std::numeric_limits<double>::infinity();
  for (const cplx z : {z1, z2}) {
    if (z == cplx{0.0}) continue;
    // f_{n+N} = z f_n; the nearest admissible phase keeps arg z.
    const cplx alpha = std::abs(z) / z;
    for (const auto& w : floquet_eigvals(op, alpha)) {
      const double d = std::abs(w - lambda);
      if (d < best_d) {
        best_d = d;
        best = w;
      }
    }
  }
  return best;
}

double bloch_distance_bound(const PeriodicTridiag& op, cplx lambda) {
  return std::abs(spectrum_point_near(op, lambda) - lambda);
}

double bloch_distance_bound(const SignWord& word, cplx lambda) {
  return bloch_distance_bound(PeriodicTridiag::from_word(word), lambda);
}

// ------------------------------------------------------------ enumeration

std::vector<std::uint64_t> necklaces(std::size_t n) {
  if (n == 0 || n > 40) throw Error(ErrorCode::invalid_argument, "necklace length must be in 1..40");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m <= full; ++m) {
    bool least = true;
    std::uint64_t r = m;
    for (std::size_t s = 1; s < n && least; ++s) {
      r = ((r >> 1) | ((r & 1) << (n - 1))) & full;
      least = r >= m;
    }
    if (least) out.push_back(m);
  }
  return out;
}

PiUnionResult pi_union(std::size_t n_max, double sigma, std::size_t alpha_count, const PiUnionOptions& opt) {
  if (n_max == 0) throw Error(ErrorCode::invalid_argument, "pi_union needs N_max >= 1");
  if (n_max > opt.ceiling) {
    throw Error(ErrorCode::ceiling_exceeded,
                "N_max " + std::to_string(n_max) + " exceeds the enumeration ceiling " + std::to_string(opt.ceiling),
                static_cast<long>(opt.ceiling));
  }
  if (!(sigma > 0.0 && sigma <= 1.0)) throw Error(ErrorCode::invalid_amplitude, "sigma must lie in (0, 1]");
  const std::vector<cplx> grid = alpha_grid(alpha_count);

  PiUnionResult res{SpectrumCloud(sigma), std::vector<std::size_t>(n_max + 1, 0),
                    std::vector<std::size_t>(n_max + 1, 0)};
  std::vector<SignWord> words;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::vector<std::uint64_t> classes = necklaces(n);
    res.raw_words[n] = std::size_t{1} << n;
    res.distinct_words[n] = classes.size();
    if (opt.dedup_rotations) {
      for (auto m : classes) words.push_back(SignWord::from_mask(m, n, sigma));
    } else {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) words.push_back(SignWord::from_mask(m, n, sigma));
    }
  }

  std::vector<std::vector<CloudPoint>> parts(words.size());
  parallel_for(words.size(), [&](std::size_t w) {
    const SignWord& word = words[w];
    const PeriodicTridiag op = PeriodicTridiag::from_word(word).bloch_ready();
    const auto n = static_cast<std::uint32_t>(word.period());
    const std::uint64_t id = word.mask();
    auto& out = parts[w];
    out.reserve(grid.size() * op.period());
    for (const auto& a : grid)
      for (const auto& z : eigvals(build_periodic(op, a))) out.push_back({z, n, id, a});
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  res.cloud.points().reserve(total);
  for (const auto& p : parts)
    for (const auto& q : p) res.cloud.add(q);
  res.cloud.sort();
  res.cloud.set_param("generator", "pi_union");
  res.cloud.set_param("n_max", std::to_string(n_max));
  res.cloud.set_param("alpha_count", std::to_string(alpha_count));
  res.cloud.set_param("dedup", opt.dedup_rotations ? "rotation" : "none");
  return res;
}

// ---------------------------------------------------------------- sampling

SpectrumCloud random_periodic_sample(const PeriodicSampleConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw Error(ErrorCode::invalid_argument, "need 1 <= n_min <= n_max");
  if (!(cfg.p_sigma > 0.0 && cfg.p_sigma < 1.0)) throw Error(ErrorCode::invalid_argument, "p_sigma must lie in (0, 1)");
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 1.0)) throw Error(ErrorCode::invalid_amplitude, "sigma must lie in (0, 1]");

  std::vector<double> cumulative;
  double acc = 0.0;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    acc += 1.0 / static_cast<double>(n);
    cumulative.push_back(acc);
  }

  std::vector<std::vector<CloudPoint>> parts(cfg.count);
  parallel_for(cfg.count, [&](std::size_t k) {
    std::mt19937_64 gen = stream(cfg.seed, k, 0x5a3e);
    const double u = unit_draw(gen) * acc;
    const auto pick = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    const std::size_t n = cfg.n_min + std::min(pick, cumulative.size() - 1);
    std::vector<double> c(n);
    for (auto& v : c) v = unit_draw(gen) < cfg.p_sigma ? cfg.sigma : -cfg.sigma;
    const cplx alpha = std::polar(1.0, kTwoPi * unit_draw(gen));

    PeriodicTridiag op;
    op.diag.assign(n, 0.0);
    op.sub.resize(n);
    op.sub[0] = c[n - 1];
    for (std::size_t i = 1; i < n; ++i) op.sub[i] = c[i - 1];
    const std::uint64_t id = id_of_values(c);
    for (const auto& z : floquet_eigvals(op, alpha)) parts[k].push_back({z, static_cast<std::uint32_t>(n), id, alpha});
  });

  SpectrumCloud cloud(cfg.sigma);
  cloud.set_seed(cfg.seed);
  for (const auto& p : parts)
    for (const auto& q : p) cloud.add(q);
  cloud.set_param("generator", "random_periodic_sample");
  cloud.set_param("count", std::to_string(cfg.count));
  cloud.set_param("n_range", std::to_string(cfg.n_min) + ".." + std::to_string(cfg.n_max));
  cloud.set_param("n_weight", "1/N");
  cloud.set_param("p_sigma", std::to_string(cfg.p_sigma));
  return cloud;
}

FinitePair random_finite_pair(const FiniteSampleConfig& cfg) {
  if (cfg.n < 3) throw Error(ErrorCode::invalid_argument, "random_finite_pair needs N >= 3");
  if (!(cfg.p_sigma > 0.0 && cfg.p_sigma < 1.0)) throw Error(ErrorCode::invalid_argument, "p_sigma must lie in (0, 1)");
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 1.0)) throw Error(ErrorCode::invalid_amplitude, "sigma must lie in (0, 1]");
  check_alpha(cfg.alpha);
  std::mt19937_64 gen = stream(cfg.seed, cfg.n, 0xf1);
  FinitePair out{std::vector<double>(cfg.n), SpectrumCloud(cfg.sigma), SpectrumCloud(cfg.sigma)};
  for (auto& v : out.c) v = unit_draw(gen) < cfg.p_sigma ? cfg.sigma : -cfg.sigma;

  const std::span<const double> all(out.c);
  const auto n = static_cast<std::uint32_t>(cfg.n);
  const std::uint64_t id = id_of_values(all);
  const DenseMatrix mats[2] = {build_finite(all.first(cfg.n - 1)), build_periodic(all, cfg.alpha)};
  const auto eig = eigvals_batch(mats);
  for (const auto& z : eig[0]) out.open.add({z, n, id, cplx{0.0}});
  for (const auto& z : eig[1]) out.periodic.add({z, n, id, cfg.alpha});
  for (auto* cloud : {&out.open, &out.periodic}) {
    cloud->set_seed(cfg.seed);
    cloud->set_param("generator", "random_finite_sample");
    cloud->set_param("n", std::to_string(cfg.n));
    cloud->set_param("p_sigma", std::to_string(cfg.p_sigma));
  }
  out.open.set_param("shape", "open");
  out.periodic.set_param("shape", "periodic");
  return out;
}

SpectrumCloud random_finite_sample(const FiniteSampleConfig& cfg, bool periodic) {
  FinitePair pair = random_finite_pair(cfg);
  return periodic ? std::move(pair.periodic) : std::move(pair.open);
}

// ------------------------------------------------------------------ checks

BoundsReport bounds_report(std::span<const cplx> z, double sigma, double slack) {
  BoundsReport r;
  r.points = z.size();
  if (z.empty()) return r;
  const double diamond = std::sqrt(2.0 * (1.0 + sigma * sigma));
  const double open_diamond = 2.0 * std::sqrt(sigma);
  r.min_abs = std::numeric_limits<double>::infinity();
  for (const auto& w : z) {
    const double a = std::abs(w);
    const double l1 = std::abs(w.real()) + std::abs(w.imag());
    r.min_abs = std::min(r.min_abs, a);
    r.max_abs = std::max(r.max_abs, a);
    r.max_l1 = std::max(r.max_l1, l1);
    if (a < 1.0 - sigma - slack || a > 1.0 + sigma + slack) ++r.annulus_violations;
    if (l1 > diamond + slack) ++r.diamond_violations;
    if (l1 > open_diamond + slack) ++r.open_diamond_violations;
  }
  return r;
}

HoleSummary hole_summary(const SpectrumCloud& cloud, double band) {
  const double sigma = cloud.sigma();
  if (!(sigma > 0.0 && sigma < 1.0)) throw Error(ErrorCode::invalid_amplitude, "hole_summary needs sigma in (0, 1)");
  HoleSummary out;
  out.deepest_level = std::numeric_limits<double>::infinity();
  std::vector<cplx> all;
  std::vector<cplx> rest;
  all.reserve(cloud.size());
  for (const auto& p : cloud.points()) {
    const double level =
        std::max(ellipse_level(p.z, Branch::plus, sigma), ellipse_level(p.z, Branch::minus, sigma));
    out.deepest_level = std::min(out.deepest_level, level);
    if (level < 1.0) ++out.strict_inside;
    if (level < 1.0 - band) ++out.inside;
    all.push_back(p.z);
    const std::uint64_t ones = p.n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.n) - 1;
    if (p.word_id != 0 && p.word_id != ones) rest.push_back(p.z);
  }
  out.min_distance = hole_report(all, sigma).min_distance;
  out.nonconstant_points = rest.size();
  out.min_distance_nonconstant = hole_report(rest, sigma).min_distance;
  return out;
}

CurveCheck curve_check(int n, Branch branch, double sigma, std::size_t alpha_count, std::size_t curve_points) {
  const SignWord word = c_iterate_word(n, branch, sigma);
  const SpectrumCloud cloud = bloch_spectrum(word, alpha_count);
  const PeriodicTridiag op = PeriodicTridiag::from_word(word);
  CurveCheck out{};
  out.cloud_points = cloud.size();
  out.curve_points = curve_points;
  for (const auto& p : cloud.points()) {
    const double r = rho_curve(n, branch, std::arg(p.z), sigma);
    out.cloud_to_curve = std::max(out.cloud_to_curve, std::abs(std::abs(p.z) - r));
  }
  const Polyline curve = rho_polyline(n, branch, sigma, curve_points);
  std::vector<double> gap(curve.vertices.size());
  parallel_for(gap.size(), [&](std::size_t k) { gap[k] = bloch_distance_bound(op, curve.vertices[k]); });
  out.curve_to_spectrum = *std::max_element(gap.begin(), gap.end());
  out.hausdorff = std::max(out.cloud_to_curve, out.curve_to_spectrum);
  out.discrete_hausdorff = hausdorff(cloud.values(), curve.vertices);
  return out;
}

SquareCheck square_spectrum_check(const SignWord& b, std::size_t alpha_count) {
  if (b.period() > 8) throw Error(ErrorCode::invalid_argument, "square_spectrum_check is limited to period <= 8");
  const double sigma = std::sqrt(b.sigma());
  const SignWord c = gamma_plus_word(b, sigma).word;
  const PeriodicTridiag op_b = PeriodicTridiag::from_word(b);
  const PeriodicTridiag op_c = PeriodicTridiag::from_word(c);
  const PeriodicTridiag op_m = PeriodicTridiag::from_diag_word(m_word(b, sigma));

  std::vector<cplx> squares = bloch_spectrum(c, alpha_count).values();
  for (auto& z : squares) z *= z;
  const std::vector<cplx> spec_b = bloch_spectrum(b, alpha_count).values();
  const std::vector<cplx> spec_m = bloch_spectrum(op_m, alpha_count, b.sigma()).values();

  auto worst = [](std::size_t count, auto&& dist) {
    std::vector<double> d(count);
    parallel_for(count, [&](std::size_t k) { d[k] = dist(k); });
    return count == 0 ? 0.0 : *std::max_element(d.begin(), d.end());
  };

  SquareCheck out{};
  out.squared_to_b = worst(squares.size(), [&](std::size_t k) { return bloch_distance_bound(op_b, squares[k]); });
  out.b_to_squared = worst(spec_b.size(), [&](std::size_t k) {
    const cplx root = std::sqrt(spec_b[k]);
    double best = std::numeric_limits<double>::infinity();
    for (const cplx s : {root, -root}) {
      const cplx w = spectrum_point_near(op_c, s);
      best = std::min(best, std::abs(w * w - spec_b[k]));
    }
    return best;
  });
  out.hausdorff = std::max(out.squared_to_b, out.b_to_squared);
  out.mb_to_b = worst(spec_m.size(), [&](std::size_t k) { return bloch_distance_bound(op_b, spec_m[k]); });
  out.b_to_mb = worst(spec_b.size(), [&](std::size_t k) { return bloch_distance_bound(op_m, spec_b[k]); });
  out.mb_hausdorff = std::max(out.mb_to_b, out.b_to_mb);
  out.discrete_hausdorff = hausdorff(squares, spec_b);
  return out;
}

UeBound ue_bound_check(cplx lambda, long i_max) {
  if (!(std::abs(lambda) <= 0.99)) throw Error(ErrorCode::out_of_domain, "ue_bound_check needs |lambda| <= 0.99");
  if (i_max < 1 || i_max > 1000000) throw Error(ErrorCode::invalid_argument, "ue_bound_check needs 1 <= i_max <= 1e6");
  const std::vector<std::int8_t> ct = c_tilde_prefix(i_max);
  cplx prev{0.0};
  cplx cur{1.0};
  UeBound out{1.0, 1.0 / (1.0 - std::abs(lambda)), false, 1};
  for (long n = 1; n < i_max; ++n) {
    const cplx next = lambda * cur - static_cast<double>(ct[static_cast<std::size_t>(n - 1)]) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > out.max_abs) {
      out.max_abs = std::abs(cur);
      out.argmax = n + 1;
    }
  }
  out.pass = out.max_abs <= out.bound + 1e-9;
  return out;
}

SymmetryReport symmetry_check(const SpectrumCloud& cloud, double tol) {
  const std::vector<cplx> z = cloud.values();
  const PointIndex index(z);
  auto image_distance = [&](auto&& map) {
    std::vector<double> d(z.size());
    parallel_for(z.size(), [&](std::size_t k) { d[k] = index.nearest_distance(map(z[k])); });
    return z.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
  };
  SymmetryReport r{};
  r.conj_distance = image_distance([](cplx w) { return std::conj(w); });
  r.rot_distance = image_distance([](cplx w) { return cplx{-w.imag(), w.real()}; });
  r.neg_distance = image_distance([](cplx w) { return -w; });
  r.closed_conj = r.conj_distance <= tol;
  r.closed_rot = r.rot_distance <= tol;
  r.closed_neg = r.neg_distance <= tol;
  return r;
}

std::vector<std::pair<cplx, cplx>> star_segments(int m, Branch branch) {
  if (m < 0 || m > 12) throw Error(ErrorCode::invalid_argument, "star needs 0 <= m <= 12");
  const double scale = std::ldexp(1.0, m);
  const double reach = std::pow(2.0, 1.0 / scale);
  const double turn = branch == Branch::minus ? std::numbers::pi / (2.0 * scale) : 0.0;
  std::vector<std::pair<cplx, cplx>> out;
  const long rays = 2L << m;
  for (long j = 0; j < rays; ++j) {
    out.emplace_back(cplx{0.0}, std::polar(reach, std::numbers::pi * static_cast<double>(j) / scale + turn));
  }
  return out;
}

double distance_to_star(cplx lambda, int m, Branch branch) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : star_segments(m, branch)) best = std::min(best, segment_distance(lambda, a, b));
  return best;
}

}  // namespace hopsign
