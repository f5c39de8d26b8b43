#pragma once

// Dense complex eigenvalues: a balanced Hessenberg + shifted complex QR solver
// and a slow independent oracle (Hyman determinants, interpolated
// characteristic polynomial, Durand-Kerner) for small matrices.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hopsign {

using cplx = std::complex<double>;

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n);
  DenseMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t n() const noexcept { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const cplx> data() const noexcept { return a_; }

  cplx trace() const noexcept;
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<cplx> a_;
};

struct EigOptions {
  bool balance = true;
  /// Subdiagonal h(k,k-1) is set to zero once it falls below
  /// deflation_tol * (|h(k,k)| + |h(k-1,k-1)|).
  double deflation_tol = 2.220446049250313e-16;
  /// Iterations without a deflation before an exceptional shift is used.
  int exceptional_after = 30;
  /// Total iteration budget is iteration_factor * n.
  int iteration_factor = 30;
  /// Replace each numerically multiple eigenvalue by its cluster mean
  /// (see merge_multiple_eigenvalues).
  bool merge_multiple = true;
};

/// All n eigenvalues with multiplicity, in canonical order (see sort_eigenvalues).
/// Throws Error(solver_failure) with detail = index of the unconverged row.
std::vector<cplx> eigvals(const DenseMatrix& m, const EigOptions& opt = {});

/// eigvals over a list, computed in parallel; result i belongs to matrix i.
std::vector<std::vector<cplx>> eigvals_batch(std::span<const DenseMatrix> ms, const EigOptions& opt = {});

/// Sorts by real part, then by imaginary part inside runs whose real parts
/// agree to rel_tol * max(1, max|z|). Exact ties such as conjugate pairs thus
/// come out in the same order regardless of rounding noise.
void sort_eigenvalues(std::vector<cplx>& z, double rel_tol = 1e-9);

/// A computed k-fold eigenvalue splits into a cluster of radius about
/// (eps |M|)^{1/k} whose mean is accurate to working precision. A group of k
/// nearby values is treated as one multiple eigenvalue when, with w_i the
/// offsets from the group mean, every elementary symmetric function e_j(w),
/// j = 2..k, satisfies |e_j| <= eta * scale^j. Merged values are set to the
/// mean. Returns the number of groups merged.
std::size_t merge_multiple_eigenvalues(std::vector<cplx>& z, double scale, double eta = 1e-11);

/// Determinant by LU with partial pivoting.
cplx determinant(const DenseMatrix& m);

/// Characteristic-polynomial oracle for n <= 16. Throws Error(solver_failure)
/// with detail = iteration count if the root iteration does not settle.
std::vector<cplx> oracle_eigvals(const DenseMatrix& m);

/// Monic characteristic polynomial det(zI - M), coefficient k of z^k, as the
/// oracle builds it.
std::vector<cplx> characteristic_polynomial(const DenseMatrix& m);

/// Roots of a monic polynomial (coeffs[k] multiplies z^k) by Durand-Kerner.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

/// Smallest achievable max |a_i - b_pi(i)| over bijections pi. Sizes must match.
double matching_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace hopsign
