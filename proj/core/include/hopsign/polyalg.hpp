#pragma once

// Exact integer polynomials in lambda and the symbolic program around the
// recurrence u_{n+1} = lambda u_n - c~_n u_{n-1}: the u/v tables, the sparse
// coefficient table built from the halving rules, traces of T_{n,lambda} and
// the identities for T_{2^r,lambda}.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hopsign {

using BigInt = boost::multiprecision::cpp_int;

/// Dense polynomial; coeffs()[k] is the coefficient of lambda^k. The zero
/// polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial monomial(std::size_t k, const BigInt& c = 1);
  static IntPolynomial constant(const BigInt& c);

  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of lambda^k, zero beyond the degree.
  const BigInt& coeff(std::size_t k) const noexcept;

  IntPolynomial shifted(std::size_t k) const;
  std::complex<double> eval_at(std::complex<double> x) const;

  /// Only even (resp. odd) powers present. The zero polynomial is both.
  bool is_even() const noexcept;
  bool is_odd() const noexcept;
  /// Largest |coefficient|, as a double.
  double max_abs_coeff() const;

  std::string to_string(std::string_view var = "x") const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator-(IntPolynomial a);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

inline IntPolynomial shift(const IntPolynomial& p, std::size_t k) { return p.shifted(k); }

/// Supplies c~_n for n >= 1. Swappable so that faults can be injected.
using CoefficientSource = std::function<int(long)>;

CoefficientSource default_coefficients();
/// c~ with the sign at index `flip_at` negated.
CoefficientSource flipped_coefficients(long flip_at);

/// Walks u_n, v_n forward without storing the history.
class UVRecurrence {
 public:
  explicit UVRecurrence(CoefficientSource c = default_coefficients());

  /// Current n; the object holds u_n, u_{n+1}, v_n, v_{n+1}.
  long index() const noexcept { return n_; }
  const IntPolynomial& u() const noexcept { return u_; }
  const IntPolynomial& u_next() const noexcept { return u_next_; }
  const IntPolynomial& v() const noexcept { return v_; }
  const IntPolynomial& v_next() const noexcept { return v_next_; }
  void advance();

 private:
  CoefficientSource c_;
  long n_ = 0;
  IntPolynomial u_, u_next_, v_, v_next_;
};

struct UVTable {
  std::vector<IntPolynomial> u;  // u_0 .. u_{n_max+1}
  std::vector<IntPolynomial> v;  // v_0 .. v_{n_max+1}
};

UVTable uv_polys(long n_max, const CoefficientSource& c = default_coefficients());

/// Nonzero coefficients p_{i,j} (lambda^{j-1} in u_i) for 1 <= i <= i_max.
class PTable {
 public:
  struct Entry {
    long j;
    int sign;
  };

  explicit PTable(long i_max);

  long i_max() const noexcept { return static_cast<long>(rows_.size()) - 1; }
  std::span<const Entry> row(long i) const;
  /// gamma_i: constant coefficient of u_i from the product formula.
  int gamma(long i) const;
  IntPolynomial row_polynomial(long i) const;
  /// Rows where the two halving branches hit the same j (never expected).
  long collisions() const noexcept { return collisions_; }

 private:
  std::vector<std::vector<Entry>> rows_;
  std::vector<int> gamma_odd_;  // gamma_{2k+1} at index k
  long collisions_ = 0;
};

PTable p_table(long i_max);

/// tr(T_{n,lambda}) = v_n + u_{n+1}.
IntPolynomial trace_poly(long n, const CoefficientSource& c = default_coefficients());

struct IdentityCheck {
  int r;
  std::string check;  // "trace", "det", "u_power", "u_shape"
  bool pass;
  std::string detail;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const noexcept;
};

/// Exact checks at m = 2^r for r = 1..r_max:
///   trace:   v_m + u_{m+1} = lambda^m - 2
///   det:     v_m u_{m+1} - u_m v_{m+1} = 1, and c~_1 ... c~_m = 1
///   u_power: u_m = lambda^{m-1}
///   u_shape: u_{m+1} = -1 + lambda^{m/2} * (sum with coefficients in {-1,0,1}),
///            the sum running over even powers lambda^{2s}, s <= m/4, when m >= 4
IdentityReport verify_identities(int r_max, const CoefficientSource& c = default_coefficients());

}  // namespace hopsign
