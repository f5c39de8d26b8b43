#include "hopsign/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hopsign/error.hpp"

namespace hopsign {

namespace {

void check_open_sigma(double sigma, const char* what) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw Error(ErrorCode::out_of_domain,
                std::string(what) + " needs sigma in (0, 1), got " + std::to_string(sigma));
  }
}

double rho_zero(Branch branch, double theta, double s) {
  const double sgn = branch == Branch::plus ? -1.0 : 1.0;
  return (1.0 - s * s) / std::sqrt(1.0 + s * s + sgn * 2.0 * s * std::cos(2.0 * theta));
}

}  // namespace

Transfer2x2 transfer_matrix(const SignWord& word, cplx lambda) {
  Transfer2x2 t;
  const long p = static_cast<long>(word.period());
  for (long n = 1; n <= p; ++n) t = step_matrix(word.value(n), lambda) * t;
  return t;
}

Transfer2x2 transfer_matrix(std::span<const double> diag, std::span<const double> sub, cplx lambda) {
  if (diag.size() != sub.size() || diag.empty()) {
    throw Error(ErrorCode::invalid_argument, "diag and sub must have the same positive length");
  }
  Transfer2x2 t;
  const std::size_t p = diag.size();
  for (std::size_t n = 1; n <= p; ++n) t = step_matrix(sub[n % p], lambda, diag[n % p]) * t;
  return t;
}

TraceData trace_det(const SignWord& word, cplx lambda) {
  const Transfer2x2 t = transfer_matrix(word, lambda);
  int sign = 1;
  for (auto s : word.signs()) sign *= s;
  const double gamma = sign * std::pow(word.sigma(), static_cast<double>(word.period()));
  return {t.trace(), gamma, word.period()};
}

double phi(cplx tau, double gamma) {
  if (!(std::abs(gamma) < 1.0)) {
    throw Error(ErrorCode::out_of_domain, "phi needs |gamma| < 1, got " + std::to_string(gamma));
  }
  const double re = tau.real() / (1.0 + gamma);
  const double im = tau.imag() / (1.0 - gamma);
  return re * re + im * im;
}

std::pair<cplx, cplx> quadratic_roots(cplx tau, cplx gamma) noexcept {
  const cplx disc = std::sqrt(tau * tau - 4.0 * gamma);
  const cplx plus = tau + disc;
  const cplx minus = tau - disc;
  const cplx big = (std::abs(plus) >= std::abs(minus) ? plus : minus) / 2.0;
  if (big == cplx{0.0}) return {cplx{0.0}, cplx{0.0}};
  return {big, gamma / big};
}

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::B: return "B";
    case Region::I: return "I";
    case Region::O: return "O";
  }
  return "?";
}

Classification classify(const SignWord& word, cplx lambda, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "classify needs tol > 0");
  const TraceData td = trace_det(word, lambda);
  const auto [z1, z2] = quadratic_roots(td.tau, cplx{td.gamma});
  Classification out{Region::B, std::abs(z1), std::abs(z2), std::numeric_limits<double>::quiet_NaN()};
  if (std::abs(td.gamma) < 1.0) {
    out.phi = phi(td.tau, td.gamma);
    if (out.phi < 1.0 - tol) {
      out.region = Region::I;
    } else if (out.phi > 1.0 + tol) {
      out.region = Region::O;
    }
    return out;
  }
  // sigma = 1: |z1 z2| = 1, so the split is decided by |z1| alone.
  if (out.z1_abs > 1.0 + tol) out.region = Region::O;
  return out;
}

double rho_curve(int n, Branch branch, double theta, double sigma) {
  if (n < 0 || n > 30) throw Error(ErrorCode::invalid_argument, "rho_curve needs 0 <= n <= 30");
  check_open_sigma(sigma, "rho_curve");
  const double scale = std::ldexp(1.0, n);
  const double s = std::pow(sigma, scale);
  return std::pow(rho_zero(branch, scale * theta, s), 1.0 / scale);
}

// ------------------------------------------------------------------ regions

RegionParams::RegionParams(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw Error(ErrorCode::invalid_amplitude, "RegionParams needs sigma in (0, 1]");
  }
  diamond_ = std::sqrt(2.0 * (1.0 + sigma * sigma));
  r_sigma_ = (1.0 - sigma * sigma) / std::sqrt(1.0 + sigma * sigma);
}

double RegionParams::rho_lower(int n) const {
  if (n < 0 || n > 30) throw Error(ErrorCode::invalid_argument, "rho_lower needs 0 <= n <= 30");
  const double scale = std::ldexp(1.0, n);
  const double s = std::pow(sigma_, scale);
  return std::pow((1.0 - s * s) / (1.0 + s), 1.0 / scale);
}

double ellipse_level(cplx lambda, Branch branch, double sigma) noexcept {
  const double along_re = branch == Branch::plus ? 1.0 + sigma : 1.0 - sigma;
  const double along_im = branch == Branch::plus ? 1.0 - sigma : 1.0 + sigma;
  auto term = [](double x, double a) {
    if (a == 0.0) return x == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return (x / a) * (x / a);
  };
  return term(lambda.real(), along_re) + term(lambda.imag(), along_im);
}

double hole_boundary_radius(double theta, double sigma) {
  check_open_sigma(sigma, "hole_boundary_radius");
  return std::min(rho_zero(Branch::plus, theta, sigma), rho_zero(Branch::minus, theta, sigma));
}

RegionFlags region_tests(cplx lambda, const RegionParams& params) {
  const double s = params.sigma();
  RegionFlags f{};
  f.in_E_plus = ellipse_level(lambda, Branch::plus, s) < 1.0;
  f.in_E_minus = ellipse_level(lambda, Branch::minus, s) < 1.0;
  f.in_H = f.in_E_plus && f.in_E_minus;
  const double r = std::abs(lambda);
  f.in_annulus = r >= params.annulus_inner() && r <= params.annulus_outer();
  f.in_diamond = std::abs(lambda.real()) + std::abs(lambda.imag()) <= params.diamond_bound();
  return f;
}

bool paired_member(const SignWord& word_c, Branch tail, cplx lambda, double tol) {
  const Classification cls = classify(word_c, lambda, tol);
  if (cls.region == Region::O) return false;
  return !(ellipse_level(lambda, tail, word_c.sigma()) < 1.0);
}

// -------------------------------------------------------------------- decay

int minimal_decay_depth(double sigma) {
  check_open_sigma(sigma, "minimal_decay_depth");
  // sqrt(sigma) < 4^{-1/m}  <=>  sigma^m < 1/16, exact for dyadic sigma.
  for (int d = 1; d <= 30; ++d) {
    if (std::pow(sigma, std::ldexp(1.0, d)) < 1.0 / 16.0) return d;
  }
  throw Error(ErrorCode::parameter_out_of_range, "sigma too close to 1 for d <= 30");
}

DecayReport decay_check(cplx lambda, double sigma, int d, long horizon) {
  check_open_sigma(sigma, "decay_check");
  if (horizon < 1) throw Error(ErrorCode::invalid_argument, "decay horizon must be positive");
  const int needed = minimal_decay_depth(sigma);
  if (d < needed) {
    throw Error(ErrorCode::parameter_out_of_range,
                "decay_check needs d >= " + std::to_string(needed) + " for sigma = " + std::to_string(sigma),
                needed);
  }
  const long m = 1L << d;
  const double h = std::pow(4.0, -1.0 / static_cast<double>(m));

  auto run = [&](cplx xi0, cplx xi1) {
    double log_scale = 0.0;
    for (long n = 1; n <= horizon; ++n) {
      const double c = sigma * c_tilde(((n - 1) % m) + 1);
      const cplx next = lambda * xi1 - c * xi0;
      xi0 = xi1;
      xi1 = next;
      const double size = std::max(std::abs(xi0), std::abs(xi1));
      if (size > 1e100 || (size < 1e-100 && size > 0.0)) {
        xi0 /= size;
        xi1 /= size;
        log_scale += std::log(size);
      }
    }
    // State after `horizon` steps is (xi_r, xi_{r+1}).
    const double size = std::max(std::abs(xi0), std::abs(xi1));
    if (size == 0.0) return 0.0;
    return std::exp((log_scale + std::log(size)) / static_cast<double>(horizon));
  };

  DecayReport rep{};
  rep.rate_from_01 = run(cplx{0.0}, cplx{1.0});
  rep.rate_from_10 = run(cplx{1.0}, cplx{0.0});
  rep.rate = std::max(rep.rate_from_01, rep.rate_from_10);
  rep.decays = rep.rate < 1.0;
  rep.inside_disc = std::abs(lambda) < h;
  rep.d = d;
  rep.horizon = horizon;
  return rep;
}

}  // namespace hopsign
