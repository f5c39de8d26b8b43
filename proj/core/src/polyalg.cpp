#include "hopsign/polyalg.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "hopsign/error.hpp"
#include "hopsign/seqcore.hpp"

namespace hopsign {

namespace {

const BigInt& zero_big() {
  static const BigInt z = 0;
  return z;
}

#ifndef NDEBUG
void check_growth(const IntPolynomial& p) {
  static const BigInt limit = BigInt(1) << 62;
  for (const auto& c : p.coeffs()) assert(abs(c) < limit && "coefficient growth beyond 2^62");
}
#endif

}  // namespace

// ------------------------------------------------------------ IntPolynomial

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::monomial(std::size_t k, const BigInt& c) {
  std::vector<BigInt> v(k + 1);
  v[k] = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPolynomial::coeff(std::size_t k) const noexcept {
  return k < coeffs_.size() ? coeffs_[k] : zero_big();
}

IntPolynomial IntPolynomial::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<BigInt> v(coeffs_.size() + k);
  std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + static_cast<long>(k));
  IntPolynomial out;
  out.coeffs_ = std::move(v);
  return out;
}

std::complex<double> IntPolynomial::eval_at(std::complex<double> x) const {
  std::complex<double> acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

bool IntPolynomial::is_even() const noexcept {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0) return false;
  return true;
}

bool IntPolynomial::is_odd() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0) return false;
  return true;
}

double IntPolynomial::max_abs_coeff() const {
  BigInt m = 0;
  for (const auto& c : coeffs_) m = std::max(m, BigInt(abs(c)));
  return m.convert_to<double>();
}

std::string IntPolynomial::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) os << var;
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  normalize();
  return *this;
}

IntPolynomial operator-(IntPolynomial a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] != 0) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return IntPolynomial(std::move(v));
}

// ------------------------------------------------------------- recurrences

CoefficientSource default_coefficients() {
  return [](long n) { return c_tilde(n); };
}

CoefficientSource flipped_coefficients(long flip_at) {
  return [flip_at](long n) { return n == flip_at ? -c_tilde(n) : c_tilde(n); };
}

UVRecurrence::UVRecurrence(CoefficientSource c)
    : c_(std::move(c)), u_(), u_next_(IntPolynomial{1}), v_(IntPolynomial{1}), v_next_() {
  if (!c_) throw Error(ErrorCode::invalid_argument, "UVRecurrence needs a coefficient source");
}

void UVRecurrence::advance() {
  ++n_;
  const int c = c_(n_);
  if (c != 1 && c != -1) {
    throw Error(ErrorCode::invalid_argument, "coefficient source must return +1 or -1", n_);
  }
  // x_{n+1} = lambda x_n - c_n x_{n-1}, for both u and v.
  auto step = [c](IntPolynomial& prev, IntPolynomial& cur) {
    IntPolynomial next = cur.shifted(1);
    if (c == 1) {
      next -= prev;
    } else {
      next += prev;
    }
    prev = std::move(cur);
    cur = std::move(next);
  };
  step(u_, u_next_);
  step(v_, v_next_);
#ifndef NDEBUG
  check_growth(u_next_);
  check_growth(v_next_);
#endif
}

UVTable uv_polys(long n_max, const CoefficientSource& c) {
  if (n_max < 0) throw Error(ErrorCode::invalid_argument, "uv_polys needs n_max >= 0");
  UVTable t;
  t.u.reserve(static_cast<std::size_t>(n_max) + 2);
  t.v.reserve(static_cast<std::size_t>(n_max) + 2);
  UVRecurrence rec(c);
  t.u.push_back(rec.u());
  t.v.push_back(rec.v());
  for (long n = 0; n <= n_max; ++n) {
    t.u.push_back(rec.u_next());
    t.v.push_back(rec.v_next());
    if (n < n_max) rec.advance();
  }
  return t;
}

IntPolynomial trace_poly(long n, const CoefficientSource& c) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "trace_poly needs n >= 1");
  UVRecurrence rec(c);
  while (rec.index() < n) rec.advance();
  return rec.v() + rec.u_next();
}

// ------------------------------------------------------------------ p table

PTable::PTable(long i_max) {
  if (i_max < 1) throw Error(ErrorCode::invalid_argument, "p_table needs i_max >= 1");
  rows_.resize(static_cast<std::size_t>(i_max) + 1);
  rows_[1] = {{1, 1}};

  // gamma_{2k+1} = (-c~_2)(-c~_4) ... (-c~_{2k}), from gamma_{r+1} = -c~_r gamma_{r-1}
  gamma_odd_.assign(static_cast<std::size_t>(i_max / 2) + 1, 1);
  for (long k = 1; k <= i_max / 2; ++k) {
    gamma_odd_[static_cast<std::size_t>(k)] = -gamma_odd_[static_cast<std::size_t>(k - 1)] * c_tilde(2 * k);
  }

  for (long i = 2; i <= i_max; ++i) {
    auto& row = rows_[static_cast<std::size_t>(i)];
    if (i % 2 == 0) {
      for (const auto& e : rows_[static_cast<std::size_t>(i / 2)]) row.push_back({2 * e.j, e.sign});
      continue;
    }
    const long k = (i - 1) / 2;
    // Sign carried by the (i-1)/2 branch: gamma_{2k+1} / gamma_{2k-1}.
    const int eps = gamma_odd_[static_cast<std::size_t>(k)] * gamma_odd_[static_cast<std::size_t>(k - 1)];
    for (const auto& e : rows_[static_cast<std::size_t>(k + 1)]) row.push_back({2 * e.j - 1, e.sign});
    for (const auto& e : rows_[static_cast<std::size_t>(k)]) row.push_back({2 * e.j - 1, eps * e.sign});
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.j < b.j; });
    std::vector<Entry> merged;
    for (const auto& e : row) {
      if (!merged.empty() && merged.back().j == e.j) {
        ++collisions_;
        merged.back().sign += e.sign;
        if (merged.back().sign == 0) merged.pop_back();
      } else {
        merged.push_back(e);
      }
    }
    row = std::move(merged);
  }
}

std::span<const PTable::Entry> PTable::row(long i) const {
  if (i < 1 || i > i_max()) throw Error(ErrorCode::invalid_argument, "p_table row out of range", i);
  return rows_[static_cast<std::size_t>(i)];
}

int PTable::gamma(long i) const {
  if (i < 1 || i > i_max()) throw Error(ErrorCode::invalid_argument, "p_table row out of range", i);
  if (i % 2 == 0) return 0;
  return gamma_odd_[static_cast<std::size_t>((i - 1) / 2)];
}

IntPolynomial PTable::row_polynomial(long i) const {
  const auto r = row(i);
  if (r.empty()) return {};
  std::vector<BigInt> v(static_cast<std::size_t>(r.back().j));
  for (const auto& e : r) v[static_cast<std::size_t>(e.j - 1)] = e.sign;
  return IntPolynomial(std::move(v));
}

PTable p_table(long i_max) { return PTable(i_max); }

// --------------------------------------------------------------- identities

bool IdentityReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

namespace {

std::string first_difference(const IntPolynomial& got, const IntPolynomial& want) {
  const long top = std::max(got.degree(), want.degree());
  for (long k = 0; k <= top; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (got.coeff(uk) != want.coeff(uk)) {
      std::ostringstream os;
      os << "coefficient of lambda^" << k << " is " << got.coeff(uk) << ", expected " << want.coeff(uk);
      return os.str();
    }
  }
  return "ok";
}

std::string shape_violation(const IntPolynomial& p, long m) {
  std::ostringstream os;
  if (p.coeff(0) != -1) {
    os << "constant term " << p.coeff(0) << " != -1";
    return os.str();
  }
  for (long k = 1; k <= p.degree(); ++k) {
    const BigInt& c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    if (c != 1 && c != -1) {
      os << "coefficient of lambda^" << k << " is " << c;
      return os.str();
    }
    if (k < m / 2) {
      os << "nonzero lambda^" << k << " below lambda^" << m / 2;
      return os.str();
    }
    if (m >= 4 && ((k - m / 2) % 2 != 0 || k > m)) {
      os << "lambda^" << k << " outside lambda^{m/2 + 2s}";
      return os.str();
    }
  }
  return "ok";
}

}  // namespace

IdentityReport verify_identities(int r_max, const CoefficientSource& c) {
  if (r_max < 1 || r_max > 14) throw Error(ErrorCode::invalid_argument, "verify_identities needs 1 <= r_max <= 14");
  IdentityReport rep;
  UVRecurrence rec(c);
  int sign_product = 1;
  for (int r = 1; r <= r_max; ++r) {
    const long m = 1L << r;
    while (rec.index() < m) {
      rec.advance();
      sign_product *= c(rec.index());
    }
    const IntPolynomial& um = rec.u();
    const IntPolynomial& um1 = rec.u_next();
    const IntPolynomial& vm = rec.v();
    const IntPolynomial& vm1 = rec.v_next();

    const IntPolynomial trace = vm + um1;
    const IntPolynomial trace_want = IntPolynomial::monomial(static_cast<std::size_t>(m)) - IntPolynomial{2};
    rep.checks.push_back({r, "trace", trace == trace_want, first_difference(trace, trace_want)});

    const IntPolynomial det = vm * um1 - um * vm1;
    std::string det_detail = first_difference(det, IntPolynomial{1});
    if (sign_product != 1) det_detail += "; sign product c~_1..c~_m = -1";
    rep.checks.push_back({r, "det", det == IntPolynomial{1} && sign_product == 1, det_detail});

    const IntPolynomial pow_want = IntPolynomial::monomial(static_cast<std::size_t>(m - 1));
    rep.checks.push_back({r, "u_power", um == pow_want, first_difference(um, pow_want)});

    const std::string shape = shape_violation(um1, m);
    rep.checks.push_back({r, "u_shape", shape == "ok", shape});
  }
  return rep;
}

}  // namespace hopsign
