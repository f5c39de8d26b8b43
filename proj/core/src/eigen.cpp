#include "hopsign/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hopsign/error.hpp"
#include "hopsign/parallel.hpp"

namespace hopsign {

DenseMatrix::DenseMatrix(std::size_t n) : n_(n), a_(n * n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "matrix dimension must be >= 1");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : DenseMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorCode::invalid_argument, "matrix rows must have length n");
    std::copy(row.begin(), row.end(), a_.begin() + static_cast<long>(i * n_));
    ++i;
  }
}

cplx DenseMatrix::trace() const noexcept {
  cplx t{0.0};
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(cplx z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

// Diagonal similarity by powers of two until row and column norms match.
void balance(DenseMatrix& a) {
  const std::size_t n = a.n();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c >= g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
    if (done) return;
  }
}

void householder_hessenberg(DenseMatrix& a) {
  const std::size_t n = a.n();
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) - (i == k + 1 ? alpha : cplx{0.0});
      vnorm2 += std::norm(v[i]);
    }
    const double vnorm = std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    for (std::size_t j = k; j < n; ++j) {
      cplx s{0.0};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx s{0.0};
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Eigenvalue of the trailing 2x2 block [[p, q], [r, s]] closest to s.
cplx wilkinson_shift(cplx p, cplx q, cplx r, cplx s) {
  const cplx half = (p - s) / 2.0;
  const cplx qr = q * r;
  if (qr == cplx{0.0}) return s;
  const cplx disc = std::sqrt(half * half + qr);
  const cplx den = std::abs(half + disc) >= std::abs(half - disc) ? half + disc : half - disc;
  if (den == cplx{0.0}) return s;
  return s - qr / den;
}

// One explicitly shifted QR step on the active block [lo, hi], by Givens
// rotations. Only the block is updated since only eigenvalues are wanted.
void qr_step(DenseMatrix& h, std::size_t lo, std::size_t hi, cplx mu, std::vector<cplx>& cs,
             std::vector<cplx>& sn) {
  for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
  for (std::size_t k = lo; k < hi; ++k) {
    const cplx a = h(k, k);
    const cplx b = h(k + 1, k);
    const double r = std::hypot(std::abs(a), std::abs(b));
    cplx c{1.0};
    cplx s{0.0};
    if (r != 0.0) {
      c = a / r;
      s = b / r;
    }
    cs[k] = c;
    sn[k] = s;
    for (std::size_t j = k; j <= hi; ++j) {
      const cplx x = h(k, j);
      const cplx y = h(k + 1, j);
      h(k, j) = std::conj(c) * x + std::conj(s) * y;
      h(k + 1, j) = -s * x + c * y;
    }
    h(k + 1, k) = 0.0;
  }
  for (std::size_t k = lo; k < hi; ++k) {
    const cplx c = cs[k];
    const cplx s = sn[k];
    const std::size_t top = std::min(k + 2, hi);
    for (std::size_t i = lo; i <= top; ++i) {
      const cplx x = h(i, k);
      const cplx y = h(i, k + 1);
      h(i, k) = x * c + y * s;
      h(i, k + 1) = -x * std::conj(s) + y * std::conj(c);
    }
  }
  for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
}

}  // namespace

std::vector<cplx> eigvals(const DenseMatrix& m, const EigOptions& opt) {
  if (!m.all_finite()) throw Error(ErrorCode::invalid_argument, "eigvals needs finite entries");
  const std::size_t n = m.n();
  DenseMatrix h = m;
  if (opt.balance) balance(h);
  householder_hessenberg(h);

  double hnorm = h.max_abs();
  std::vector<cplx> out(n);
  std::vector<cplx> cs(n);
  std::vector<cplx> sn(n);
  const long budget = static_cast<long>(opt.iteration_factor) * static_cast<long>(n);
  long total = 0;
  int stalled = 0;

  long hi = static_cast<long>(n) - 1;
  while (hi >= 0) {
    long l = hi;
    for (; l > 0; --l) {
      const auto ul = static_cast<std::size_t>(l);
      double tst = std::abs(h(ul, ul)) + std::abs(h(ul - 1, ul - 1));
      if (tst == 0.0) {
        if (l >= 2) tst += std::abs(h(ul - 1, ul - 2));
        if (l + 1 <= hi) tst += std::abs(h(ul + 1, ul));
        if (tst == 0.0) tst = hnorm;
      }
      if (std::abs(h(ul, ul - 1)) <= opt.deflation_tol * tst ||
          std::abs(h(ul, ul - 1)) < std::numeric_limits<double>::min()) {
        h(ul, ul - 1) = 0.0;
        break;
      }
    }
    const auto uh = static_cast<std::size_t>(hi);
    if (l == hi) {
      out[uh] = h(uh, uh);
      --hi;
      stalled = 0;
      continue;
    }
    if (++total > budget) {
      throw Error(ErrorCode::solver_failure,
                  "QR iteration did not converge at row " + std::to_string(hi), hi);
    }
    ++stalled;
    cplx mu;
    if (stalled % opt.exceptional_after == 0) {
      mu = h(uh, uh) + 0.75 * std::abs(h(uh, uh - 1).real()) + cplx{0.0, 0.5 * std::abs(h(uh, uh - 1))};
    } else {
      mu = wilkinson_shift(h(uh - 1, uh - 1), h(uh - 1, uh), h(uh, uh - 1), h(uh, uh));
    }
    qr_step(h, static_cast<std::size_t>(l), uh, mu, cs, sn);
  }
  if (opt.merge_multiple) merge_multiple_eigenvalues(out, hnorm);
  sort_eigenvalues(out);
  return out;
}

std::vector<std::vector<cplx>> eigvals_batch(std::span<const DenseMatrix> ms, const EigOptions& opt) {
  std::vector<std::vector<cplx>> out(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { out[i] = eigvals(ms[i], opt); });
  return out;
}

void sort_eigenvalues(std::vector<cplx>& z, double rel_tol) {
  if (z.empty()) return;
  double scale = 1.0;
  for (const auto& w : z) scale = std::max(scale, std::abs(w));
  const double tol = rel_tol * scale;
  std::sort(z.begin(), z.end(), [](const cplx& a, const cplx& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::size_t start = 0;
  for (std::size_t i = 1; i <= z.size(); ++i) {
    if (i == z.size() || z[i].real() - z[i - 1].real() > tol) {
      std::sort(z.begin() + static_cast<long>(start), z.begin() + static_cast<long>(i),
                [](const cplx& a, const cplx& b) { return a.imag() < b.imag(); });
      start = i;
    }
  }
}

std::size_t merge_multiple_eigenvalues(std::vector<cplx>& z, double scale, double eta) {
  const std::size_t n = z.size();
  if (n < 2 || !(scale > 0.0)) return 0;
  constexpr std::size_t kMaxGroup = 32;
  const double reach = 0.1 * scale;

  struct Candidate {
    std::size_t size;
    std::size_t anchor;
    std::vector<std::size_t> members;
    cplx mean;
  };
  std::vector<Candidate> accepted;
  std::vector<std::pair<double, std::size_t>> near;
  std::vector<cplx> e;
  for (std::size_t i = 0; i < n; ++i) {
    near.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(z[j] - z[i]);
      if (d <= reach) near.emplace_back(d, j);
    }
    if (near.size() < 2) continue;
    std::sort(near.begin(), near.end());
    const std::size_t top = std::min(near.size(), kMaxGroup);
    // Largest admissible group around z[i].
    for (std::size_t k = top; k >= 2; --k) {
      cplx mean{0.0};
      for (std::size_t t = 0; t < k; ++t) mean += z[near[t].second];
      mean /= static_cast<double>(k);
      // e holds the elementary symmetric functions of the offsets.
      e.assign(k + 1, cplx{0.0});
      e[0] = 1.0;
      for (std::size_t t = 0; t < k; ++t) {
        const cplx w = z[near[t].second] - mean;
        for (std::size_t j = t + 1; j >= 1; --j) e[j] += e[j - 1] * w;
      }
      bool ok = true;
      double bound = eta * scale;
      for (std::size_t j = 2; j <= k && ok; ++j) {
        bound *= scale;
        ok = std::abs(e[j]) <= bound;
      }
      if (ok) {
        Candidate c{k, i, {}, mean};
        for (std::size_t t = 0; t < k; ++t) c.members.push_back(near[t].second);
        accepted.push_back(std::move(c));
        break;
      }
    }
  }
  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const Candidate& a, const Candidate& b) { return a.size > b.size; });
  std::vector<char> used(n, 0);
  std::size_t merged = 0;
  for (const auto& c : accepted) {
    if (std::any_of(c.members.begin(), c.members.end(), [&](std::size_t m) { return used[m] != 0; })) continue;
    for (std::size_t m : c.members) {
      used[m] = 1;
      z[m] = c.mean;
    }
    ++merged;
  }
  return merged;
}

cplx determinant(const DenseMatrix& m) {
  DenseMatrix a = m;
  const std::size_t n = a.n();
  cplx det{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == cplx{0.0}) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

// ------------------------------------------------------------------- oracle

namespace {

// Hessenberg form by stabilised elementary similarity transformations.
void elimination_hessenberg(DenseMatrix& a) {
  const std::size_t n = a.n();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    for (std::size_t i = m + 1; i < n; ++i)
      if (abs1(a(i, m - 1)) > abs1(a(piv, m - 1))) piv = i;
    if (piv != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, piv), a(i, m));
    }
    const cplx x = a(m, m - 1);
    if (x == cplx{0.0}) continue;
    for (std::size_t i = m + 1; i < n; ++i) {
      const cplx y = a(i, m - 1) / x;
      if (y == cplx{0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= y * a(m, j);
      for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
      a(i, m - 1) = 0.0;
    }
  }
}

struct DetValue {
  cplx p;
  cplx dp;
};

// det(zI - H) and its z-derivative for upper Hessenberg H, by Hyman's
// back-substitution on each unreduced diagonal block.
DetValue hyman(const DenseMatrix& h, cplx z) {
  const long n = static_cast<long>(h.n());
  const double small = kEps * std::max(h.max_abs(), 1.0);
  std::vector<cplx> x(h.n());
  std::vector<cplx> xd(h.n());
  auto b = [&](long i, long j) { return (i == j ? z : cplx{0.0}) - h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

  cplx p{1.0};
  cplx log_deriv{0.0};
  bool p_zero = false;
  cplx dp_if_zero{1.0};
  long lo = 0;
  while (lo < n) {
    long hi = lo;
    while (hi + 1 < n && std::abs(h(static_cast<std::size_t>(hi + 1), static_cast<std::size_t>(hi))) > small) ++hi;
    x[static_cast<std::size_t>(hi)] = 1.0;
    xd[static_cast<std::size_t>(hi)] = 0.0;
    cplx sub_prod{1.0};
    for (long k = hi; k > lo; --k) {
      cplx s{0.0};
      cplx sd{0.0};
      for (long j = k; j <= hi; ++j) {
        s += b(k, j) * x[static_cast<std::size_t>(j)];
        sd += b(k, j) * xd[static_cast<std::size_t>(j)];
      }
      sd += x[static_cast<std::size_t>(k)];
      const cplx bk = b(k, k - 1);
      x[static_cast<std::size_t>(k - 1)] = -s / bk;
      xd[static_cast<std::size_t>(k - 1)] = -sd / bk;
      sub_prod *= bk;
    }
    cplx f{0.0};
    cplx fd{0.0};
    for (long j = lo; j <= hi; ++j) {
      f += b(lo, j) * x[static_cast<std::size_t>(j)];
      fd += b(lo, j) * xd[static_cast<std::size_t>(j)];
    }
    fd += x[static_cast<std::size_t>(lo)];
    const double sign = ((hi - lo) % 2 == 0) ? 1.0 : -1.0;
    const cplx blk = sign * f * sub_prod;
    const cplx blk_d = sign * fd * sub_prod;
    if (blk == cplx{0.0}) {
      // A zero block factor: keep its derivative so p' stays meaningful.
      if (p_zero) dp_if_zero = 0.0;
      p_zero = true;
      dp_if_zero *= blk_d;
    } else {
      p *= blk;
      log_deriv += blk_d / blk;
      dp_if_zero *= blk;
    }
    lo = hi + 1;
  }
  if (p_zero) return {0.0, dp_if_zero};
  return {p, p * log_deriv};
}

cplx horner(std::span<const cplx> a, cplx z) {
  cplx acc{0.0};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double horner_bound(std::span<const cplx> a, double r) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

DenseMatrix oracle_hessenberg(const DenseMatrix& m) {
  if (m.n() > 16) throw Error(ErrorCode::invalid_argument, "oracle_eigvals is limited to n <= 16");
  if (!m.all_finite()) throw Error(ErrorCode::invalid_argument, "oracle_eigvals needs finite entries");
  DenseMatrix h = m;
  elimination_hessenberg(h);
  return h;
}

std::vector<cplx> interpolate_charpoly(const DenseMatrix& h) {
  const std::size_t n = h.n();
  double fro = 0.0;
  for (const auto& z : h.data()) fro += std::norm(z);
  const double rho = std::max(0.5, std::sqrt(fro / static_cast<double>(n)));
  const std::size_t pts = n + 1;
  std::vector<cplx> vals(pts);
  for (std::size_t k = 0; k < pts; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(pts);
    vals[k] = hyman(h, std::polar(rho, ang)).p;
  }
  std::vector<cplx> coeffs(pts);
  for (std::size_t j = 0; j < pts; ++j) {
    cplx s{0.0};
    for (std::size_t k = 0; k < pts; ++k) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((j * k) % pts) / static_cast<double>(pts);
      s += vals[k] * std::polar(1.0, ang);
    }
    coeffs[j] = s / static_cast<double>(pts) / std::pow(rho, static_cast<double>(j));
  }
  coeffs[n] = 1.0;
  return coeffs;
}

}  // namespace

std::vector<cplx> characteristic_polynomial(const DenseMatrix& m) {
  return interpolate_charpoly(oracle_hessenberg(m));
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  if (coeffs.size() < 2) return {};
  const std::size_t n = coeffs.size() - 1;
  if (abs1(coeffs[n] - cplx{1.0}) > 0.0) throw Error(ErrorCode::invalid_argument, "polynomial must be monic");
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(coeffs[k]));
  radius = 1.0 + radius;

  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, ang);
  }
  constexpr int kMaxIter = 5000;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx den{1.0};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      if (den == cplx{0.0}) den = kEps;
      const cplx step = horner(coeffs, z[i]) / den;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (worst <= 1e-12) break;
  }
  if (it == kMaxIter) {
    // Clusters converge only linearly; accept if every residual is at the
    // rounding level of the evaluation.
    for (const auto& w : z) {
      const double noise = 1e3 * static_cast<double>(n) * kEps * horner_bound(coeffs, std::abs(w));
      if (std::abs(horner(coeffs, w)) > noise) {
        throw Error(ErrorCode::solver_failure, "Durand-Kerner iteration did not converge", it);
      }
    }
  }
  return z;
}

std::vector<cplx> oracle_eigvals(const DenseMatrix& m) {
  const DenseMatrix h = oracle_hessenberg(m);
  if (h.n() == 1) return {h(0, 0)};
  const std::vector<cplx> coeffs = interpolate_charpoly(h);
  std::vector<cplx> z = polynomial_roots(coeffs);
  const std::vector<cplx> raw = z;
  merge_multiple_eigenvalues(z, std::max(h.max_abs(), std::numeric_limits<double>::min()));
  // Newton polish of the simple roots against the determinant itself rather
  // than the interpolated coefficients.
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != raw[i]) continue;
    auto& w = z[i];
    DetValue cur = hyman(h, w);
    for (int k = 0; k < 8 && cur.p != cplx{0.0} && cur.dp != cplx{0.0}; ++k) {
      const cplx cand = w - cur.p / cur.dp;
      const DetValue next = hyman(h, cand);
      if (!(std::abs(next.p) < std::abs(cur.p))) break;
      w = cand;
      cur = next;
    }
  }
  sort_eigenvalues(z);
  return z;
}

// ------------------------------------------------------------------ matching

namespace {

bool augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj, std::vector<long>& match_b,
             std::vector<char>& seen) {
  for (std::size_t v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (match_b[v] < 0 || augment(static_cast<std::size_t>(match_b[v]), adj, match_b, seen)) {
      match_b[v] = static_cast<long>(u);
      return true;
    }
  }
  return false;
}

bool perfect_within(std::span<const cplx> a, std::span<const cplx> b, double t) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a[i] - b[j]) <= t) adj[i].push_back(j);
  std::vector<long> match_b(n, -1);
  std::vector<char> seen(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(u, adj, match_b, seen)) return false;
  }
  return true;
}

}  // namespace

double matching_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "matching needs equal sizes");
  if (a.empty()) return 0.0;
  std::vector<double> d;
  d.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) d.push_back(std::abs(x - y));
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  std::size_t lo = 0;
  std::size_t hi = d.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_within(a, b, d[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return d[lo];
}

}  // namespace hopsign
