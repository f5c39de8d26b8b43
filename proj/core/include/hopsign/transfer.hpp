#pragma once

// Transfer matrices of periodic three-term recurrences and everything that
// follows from them: the (trace, determinant) pair, the Phi criterion, the
// B/I/O classification of a spectral parameter, closed-form spectral curves
// of the iterates c^{(n,+/-)}, the elliptic region predicates and the
// finite-horizon decay check for the sequence sigma * c~.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include "hopsign/seqcore.hpp"

namespace hopsign {

using cplx = std::complex<double>;

struct Transfer2x2 {
  cplx a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

  cplx trace() const noexcept { return a11 + a22; }
  cplx det() const noexcept { return a11 * a22 - a12 * a21; }

  friend Transfer2x2 operator*(const Transfer2x2& x, const Transfer2x2& y) noexcept {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
};

/// One step X = [[0, 1], [-sub, lambda - diag]].
inline Transfer2x2 step_matrix(double sub, cplx lambda, double diag = 0.0) noexcept {
  return {cplx{0.0}, cplx{1.0}, cplx{-sub}, lambda - diag};
}

/// T_p = X_p X_{p-1} ... X_1 with X_n built from c_n = word.value(n).
Transfer2x2 transfer_matrix(const SignWord& word, cplx lambda);

/// Same product for (f)_n: sub[n] f_{n-1} + diag[n] f_n + f_{n+1}, with
/// coefficient arrays indexed by position n mod p.
Transfer2x2 transfer_matrix(std::span<const double> diag, std::span<const double> sub, cplx lambda);

struct TraceData {
  cplx tau;
  double gamma;
  std::size_t p;
};

/// tau from the matrix product, gamma = (c_1 ... c_p) from the sign product.
TraceData trace_det(const SignWord& word, cplx lambda);

/// Re(tau)^2 / (1 + gamma)^2 + Im(tau)^2 / (1 - gamma)^2; needs |gamma| < 1.
double phi(cplx tau, double gamma);

/// Roots of z^2 - tau z + gamma with |first| >= |second|, the smaller one
/// recovered from the product to avoid cancellation.
std::pair<cplx, cplx> quadratic_roots(cplx tau, cplx gamma) noexcept;

enum class Region { B, I, O };

const char* to_string(Region r) noexcept;

struct Classification {
  Region region;
  double z1_abs;  // |z1| >= |z2|
  double z2_abs;
  double phi;     // NaN when |gamma| = 1 (sigma = 1), where roots decide
};

inline constexpr double kDefaultBandTol = 1e-9;

Classification classify(const SignWord& word, cplx lambda, double tol = kDefaultBandTol);

/// rho_n^{+/-}(theta, sigma) for sigma in (0, 1).
double rho_curve(int n, Branch branch, double theta, double sigma);

/// Geometry of the hopping model at amplitude sigma.
class RegionParams {
 public:
  explicit RegionParams(double sigma);

  double sigma() const noexcept { return sigma_; }
  double annulus_inner() const noexcept { return 1.0 - sigma_; }
  double annulus_outer() const noexcept { return 1.0 + sigma_; }
  double diamond_bound() const noexcept { return diamond_; }
  double r_sigma() const noexcept { return r_sigma_; }
  double rho_lower(int n) const;

 private:
  double sigma_;
  double diamond_;
  double r_sigma_;
};

struct RegionFlags {
  bool in_E_plus;
  bool in_E_minus;
  bool in_H;
  bool in_annulus;
  bool in_diamond;
};

/// x^2 / a^2 + y^2 / b^2 for the ellipse E_{+sigma} (branch plus, semi-axes
/// 1 + sigma along the real axis) or E_{-sigma} (branch minus).
double ellipse_level(cplx lambda, Branch branch, double sigma) noexcept;

/// Radius of the boundary of H_sigma in direction theta.
double hole_boundary_radius(double theta, double sigma);

RegionFlags region_tests(cplx lambda, const RegionParams& params);

/// True when lambda is in closure(I_c) and outside E_{tail * sigma}, which
/// puts lambda in the spectrum of the operator that follows c on n >= 0 and
/// the constant tail on n < 0.
bool paired_member(const SignWord& word_c, Branch tail, cplx lambda, double tol = kDefaultBandTol);

struct DecayReport {
  double rate_from_01;  // solution with (xi_0, xi_1) = (0, 1)
  double rate_from_10;  // solution with (xi_0, xi_1) = (1, 0)
  double rate;          // max of the two
  bool decays;
  bool inside_disc;     // |lambda| < 4^{-1/m}
  int d;
  long horizon;
};

/// Smallest d >= 1 with sqrt(sigma) < 4^{-1/2^d}.
int minimal_decay_depth(double sigma);

/// Iterates xi_{n+1} = lambda xi_n - c_n xi_{n-1}, c_n = sigma c~_n with
/// period m = 2^d, and reports the empirical growth rate |xi_r|^{1/r}.
DecayReport decay_check(cplx lambda, double sigma, int d, long horizon = 2048);

}  // namespace hopsign
