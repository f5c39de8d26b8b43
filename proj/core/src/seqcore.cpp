#include "hopsign/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "hopsign/error.hpp"

namespace hopsign {

namespace {

long floor_mod(long n, long p) noexcept {
  const long r = n % p;
  return r < 0 ? r + p : r;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw Error(ErrorCode::invalid_amplitude,
                "amplitude must lie in (0, 1], got " + std::to_string(sigma));
  }
}

void check_signs(std::span<const std::int8_t> signs) {
  for (auto s : signs) {
    if (s != 1 && s != -1) {
      throw Error(ErrorCode::invalid_argument, "sign entries must be +1 or -1");
    }
  }
}

// b carries amplitude sigma^2 when it is the argument of Gamma_{sigma,+}.
void check_squared_amplitude(double b_sigma, double sigma) {
  check_sigma(sigma);
  if (std::abs(sigma * sigma - b_sigma) > 1e-12 * b_sigma) {
    throw Error(ErrorCode::invalid_amplitude,
                "argument amplitude " + std::to_string(b_sigma) +
                    " is not the square of " + std::to_string(sigma));
  }
}

std::vector<std::int8_t> to_signs(std::initializer_list<int> list) {
  std::vector<std::int8_t> out;
  out.reserve(list.size());
  for (int s : list) out.push_back(static_cast<std::int8_t>(s));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- SignWord

SignWord::SignWord(std::vector<std::int8_t> signs, double sigma)
    : signs_(std::move(signs)), sigma_(sigma) {
  if (signs_.empty()) throw Error(ErrorCode::invalid_argument, "sign word must be non-empty");
  check_signs(signs_);
  check_sigma(sigma_);
}

SignWord::SignWord(std::initializer_list<int> signs, double sigma)
    : SignWord(to_signs(signs), sigma) {}

SignWord SignWord::constant(int sign, double sigma) {
  return SignWord(std::vector<std::int8_t>{static_cast<std::int8_t>(sign)}, sigma);
}

SignWord SignWord::from_mask(std::uint64_t mask, std::size_t n, double sigma) {
  if (n == 0 || n > 64) throw Error(ErrorCode::invalid_argument, "mask words need 1 <= n <= 64");
  std::vector<std::int8_t> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = ((mask >> k) & 1U) ? -1 : 1;
  return SignWord(std::move(s), sigma);
}

int SignWord::sign(long n) const noexcept {
  return signs_[static_cast<std::size_t>(floor_mod(n, static_cast<long>(signs_.size())))];
}

SignWord SignWord::rotated(long k) const {
  const long n = static_cast<long>(signs_.size());
  std::vector<std::int8_t> s(signs_.size());
  for (long i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(sign(i + k));
  return SignWord(std::move(s), sigma_);
}

SignWord SignWord::canonical() const {
  const std::size_t n = signs_.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = signs_[(r + i) % n];
      const auto b = signs_[(best + i) % n];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  return rotated(static_cast<long>(best));
}

std::size_t SignWord::minimal_period() const noexcept {
  const std::size_t n = signs_.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = signs_[i] == signs_[i - p];
    if (ok) return p;
  }
  return n;
}

SignWord SignWord::reduced() const {
  const std::size_t p = minimal_period();
  return SignWord(std::vector<std::int8_t>(signs_.begin(), signs_.begin() + static_cast<long>(p)),
                  sigma_);
}

SignWord SignWord::repeated(std::size_t times) const {
  if (times == 0) throw Error(ErrorCode::invalid_argument, "repeat count must be positive");
  std::vector<std::int8_t> s;
  s.reserve(signs_.size() * times);
  for (std::size_t t = 0; t < times; ++t) s.insert(s.end(), signs_.begin(), signs_.end());
  return SignWord(std::move(s), sigma_);
}

SignWord SignWord::negated() const {
  std::vector<std::int8_t> s(signs_);
  for (auto& x : s) x = static_cast<std::int8_t>(-x);
  return SignWord(std::move(s), sigma_);
}

SignWord SignWord::with_sigma(double sigma) const { return SignWord(signs_, sigma); }

std::uint64_t SignWord::mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < signs_.size() && k < 64; ++k) {
    if (signs_[k] < 0) m |= std::uint64_t{1} << k;
  }
  return m;
}

// --------------------------------------------------------------- SeqWindow

SeqWindow::SeqWindow(long lo, std::vector<std::int8_t> signs, double sigma)
    : lo_(lo), signs_(std::move(signs)), sigma_(sigma) {
  if (signs_.empty()) throw Error(ErrorCode::invalid_argument, "window must be non-empty");
  check_signs(signs_);
  check_sigma(sigma_);
}

SeqWindow SeqWindow::from_word(const SignWord& word, long lo, long hi) {
  if (hi < lo) throw Error(ErrorCode::invalid_argument, "window needs lo <= hi");
  std::vector<std::int8_t> s(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) s[static_cast<std::size_t>(n - lo)] = static_cast<std::int8_t>(word.sign(n));
  return SeqWindow(lo, std::move(s), word.sigma());
}

SeqWindow SeqWindow::constant(int sign, long lo, long hi, double sigma) {
  return from_word(SignWord::constant(sign, sigma), lo, hi);
}

int SeqWindow::sign(long n) const {
  if (!contains(n)) {
    throw Error(ErrorCode::invalid_argument,
                "index " + std::to_string(n) + " outside window [" + std::to_string(lo()) + ", " +
                    std::to_string(hi()) + "]");
  }
  return signs_[static_cast<std::size_t>(n - lo_)];
}

std::vector<double> SeqWindow::values() const {
  std::vector<double> v(signs_.size());
  std::transform(signs_.begin(), signs_.end(), v.begin(), [&](auto s) { return sigma_ * s; });
  return v;
}

SeqWindow SeqWindow::slice(long lo, long hi) const {
  if (lo > hi || !contains(lo) || !contains(hi)) {
    throw Error(ErrorCode::invalid_argument, "slice must lie inside the window");
  }
  return SeqWindow(lo,
                   std::vector<std::int8_t>(signs_.begin() + (lo - lo_), signs_.begin() + (hi - lo_ + 1)),
                   sigma_);
}

// ------------------------------------------------------------- Gamma maps

GammaImage gamma_plus_word(const SignWord& b, double sigma) {
  check_squared_amplitude(b.sigma(), sigma);
  const long n = static_cast<long>(b.period());
  const long raw = 4 * n;
  std::vector<std::int8_t> c(static_cast<std::size_t>(raw + 1));
  c[0] = 1;
  for (long k = 1; k <= 2 * n; ++k) {
    c[static_cast<std::size_t>(2 * k - 1)] = static_cast<std::int8_t>(-c[static_cast<std::size_t>(2 * k - 2)]);
    if (2 * k <= raw) {
      c[static_cast<std::size_t>(2 * k)] =
          static_cast<std::int8_t>(b.sign(k) * c[static_cast<std::size_t>(2 * k - 1)]);
    }
  }
  // c_{4N} must close the period.
  if (c[static_cast<std::size_t>(raw)] != c[0]) {
    throw Error(ErrorCode::invalid_argument, "Gamma_+ image failed to close its 4N period");
  }
  c.pop_back();
  SignWord full(std::move(c), sigma);
  return GammaImage{full.reduced(), static_cast<std::size_t>(raw)};
}

GammaImage gamma_plus_word(const SignWord& b) { return gamma_plus_word(b, std::sqrt(b.sigma())); }

SeqWindow gamma_window(const SeqWindow& b, Branch branch, double sigma) {
  check_squared_amplitude(b.sigma(), sigma);
  if (!b.contains(0)) {
    throw Error(ErrorCode::invalid_argument, "Gamma window argument must contain index 0");
  }
  const long lo = 2 * b.lo() - 2;
  const long hi = 2 * b.hi() + 1;
  std::vector<std::int8_t> c(static_cast<std::size_t>(hi - lo + 1));
  auto at = [&](long k) -> std::int8_t& { return c[static_cast<std::size_t>(k - lo)]; };

  at(0) = static_cast<std::int8_t>(sign_of(branch));
  for (long k = 1; k <= b.hi(); ++k) {
    at(2 * k - 1) = static_cast<std::int8_t>(-at(2 * k - 2));
    at(2 * k) = static_cast<std::int8_t>(b.sign(k) * at(2 * k - 1));
  }
  at(2 * b.hi() + 1) = static_cast<std::int8_t>(-at(2 * b.hi()));
  for (long k = 0; k >= b.lo(); --k) {
    at(2 * k - 1) = static_cast<std::int8_t>(b.sign(k) * at(2 * k));
    at(2 * k - 2) = static_cast<std::int8_t>(-at(2 * k - 1));
  }
  return SeqWindow(lo, std::move(c), sigma);
}

SeqWindow gamma_plus_window(const SeqWindow& b, double sigma) {
  return gamma_window(b, Branch::plus, sigma);
}

SeqWindow gamma_plus_window(const SeqWindow& b) {
  return gamma_window(b, Branch::plus, std::sqrt(b.sigma()));
}

SeqWindow hat_inversion(const SeqWindow& b) {
  const long lo = 1 - b.hi();
  std::vector<std::int8_t> s(static_cast<std::size_t>(b.hi() - b.lo() + 1));
  for (long n = lo; n <= 1 - b.lo(); ++n) s[static_cast<std::size_t>(n - lo)] = static_cast<std::int8_t>(b.sign(1 - n));
  return SeqWindow(lo, std::move(s), b.sigma());
}

SeqWindow fixed_point_window(int n, double sigma) {
  if (n < 1 || n > 28) {
    throw Error(ErrorCode::invalid_argument, "fixed_point_window needs 1 <= n <= 28");
  }
  check_sigma(sigma);
  const long lo = 2 - (1L << n);
  const long hi = (1L << n) - 1;
  auto iterate = [&](int start_sign) {
    SeqWindow w = SeqWindow::constant(start_sign, 0, 1, 1.0);
    for (int k = 0; k < n; ++k) w = gamma_window(w, Branch::plus, 1.0);
    return w.slice(lo, hi);
  };
  const SeqWindow from_plus = iterate(1);
  const SeqWindow from_minus = iterate(-1);
  if (!(from_plus == from_minus)) {
    throw Error(ErrorCode::invalid_argument, "Gamma_+ iterates disagree on the attraction window");
  }
  std::vector<std::int8_t> s;
  s.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) s.push_back(static_cast<std::int8_t>(from_plus.sign(k)));
  return SeqWindow(lo, std::move(s), sigma);
}

// ----------------------------------------------------------------- c tilde

namespace {

// Index 0 unused; entry k is c~_k.
void extend_c_tilde(std::vector<std::int8_t>& cache, long n) {
  if (cache.empty()) cache = {0, 1};
  const long have = static_cast<long>(cache.size()) - 1;
  if (n <= have) return;
  long target = std::max(n, 2 * have);
  cache.resize(static_cast<std::size_t>(target + 1));
  for (long k = have + 1; k <= target; ++k) {
    if (k % 2 == 0) {
      cache[static_cast<std::size_t>(k)] =
          static_cast<std::int8_t>(cache[static_cast<std::size_t>(k - 1)] * cache[static_cast<std::size_t>(k / 2)]);
    } else {
      cache[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(-cache[static_cast<std::size_t>(k - 1)]);
    }
  }
}

}  // namespace

int c_tilde(long n) {
  if (n <= 0) throw Error(ErrorCode::invalid_argument, "c~_n is defined for n >= 1");
  thread_local std::vector<std::int8_t> cache;
  extend_c_tilde(cache, n);
  return cache[static_cast<std::size_t>(n)];
}

std::vector<std::int8_t> c_tilde_prefix(long n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "prefix length must be non-negative");
  std::vector<std::int8_t> out(static_cast<std::size_t>(n));
  for (long k = 1; k <= n; ++k) out[static_cast<std::size_t>(k - 1)] = static_cast<std::int8_t>(c_tilde(k));
  return out;
}

// ---------------------------------------------------------------- iterates

SignWord c_iterate_word(int m, Branch branch, double sigma) {
  if (m < 0 || m > 12) throw Error(ErrorCode::invalid_argument, "c_iterate_word needs 0 <= m <= 12");
  check_sigma(sigma);
  SignWord w = SignWord::constant(sign_of(branch), 1.0);
  for (int k = 0; k < m; ++k) w = gamma_plus_word(w, 1.0).word;
  return w.with_sigma(sigma);
}

DiagWord m_word(const SignWord& b, double sigma) {
  const GammaImage image = gamma_plus_word(b, sigma);
  const long half = static_cast<long>(image.raw_period / 2);
  DiagWord out;
  out.diag.resize(static_cast<std::size_t>(half));
  for (long n = 0; n < half; ++n) {
    out.diag[static_cast<std::size_t>(n)] = image.word.value(2 * n + 1) + image.word.value(2 * n + 2);
  }
  out.sub = -sigma * sigma;
  out.sup = 1.0;
  return out;
}

}  // namespace hopsign
