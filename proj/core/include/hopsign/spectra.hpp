#pragma once

// Finite and periodised hopping matrices, Bloch spectra of periodic words,
// the unions pi_{N,sigma}, seeded random ensembles and the cross-checks that
// compare computed spectra with closed forms and with each other.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopsign/eigen.hpp"
#include "hopsign/geometry.hpp"
#include "hopsign/seqcore.hpp"
#include "hopsign/transfer.hpp"

namespace hopsign {

struct CloudPoint {
  cplx z;
  std::uint32_t n;        // period of the word or size of the matrix
  std::uint64_t word_id;  // -1 positions as a bitmask (period <= 64), else a hash
  cplx alpha;             // Bloch phase; 0 for open matrices

  friend bool operator==(const CloudPoint&, const CloudPoint&) = default;
};

class SpectrumCloud {
 public:
  explicit SpectrumCloud(double sigma = 1.0) : sigma_(sigma) {}

  double sigma() const noexcept { return sigma_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

  /// Generation parameters, kept in insertion order; setting a key twice
  /// overwrites the earlier value.
  void set_param(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& params() const noexcept { return params_; }
  std::optional<std::string> param(const std::string& key) const;

  void add(const CloudPoint& p);
  void append(const SpectrumCloud& other);
  std::vector<CloudPoint>& points() noexcept { return points_; }
  const std::vector<CloudPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::vector<cplx> values() const;

  /// Lexicographic by (re, im, n, word_id, alpha).
  void sort();

 private:
  double sigma_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<CloudPoint> points_;
};

/// N x N matrix: superdiagonal 1, subdiagonal c_1..c_{N-1}; c has N-1 entries.
DenseMatrix build_finite(std::span<const double> c);

/// As build_finite with c_1..c_{N-1} from c[0..N-2], plus the corner
/// entries (1, N) = alpha c_N and (N, 1) = 1/alpha, c_N = c[N-1].
/// Needs N >= 3 and |alpha| = 1 to within 1e-12.
DenseMatrix build_periodic(std::span<const double> c, cplx alpha);

/// Periodic three-term operator
///   (A f)_n = sub[n mod p] f_{n-1} + diag[n mod p] f_n + f_{n+1}.
struct PeriodicTridiag {
  std::vector<double> diag;
  std::vector<double> sub;

  static PeriodicTridiag from_word(const SignWord& word);
  static PeriodicTridiag from_diag_word(const DiagWord& word);

  std::size_t period() const noexcept { return sub.size(); }
  /// Same operator written with period p * times.
  PeriodicTridiag repeated(std::size_t times) const;
  /// Repeats period-1 and period-2 operators up to period 4.
  PeriodicTridiag bloch_ready() const;
};

/// N x N Floquet matrix for f_{n+N} = f_n / alpha (needs N >= 3).
DenseMatrix build_periodic(const PeriodicTridiag& op, cplx alpha);

/// Eigenvalues at one Bloch phase. Periods 1 and 2 are handled directly,
/// the colliding corner and band entries being added.
std::vector<cplx> floquet_eigvals(const PeriodicTridiag& op, cplx alpha);

/// exp(2 pi i k / count), k = 0..count-1.
std::vector<cplx> alpha_grid(std::size_t count);

std::uint64_t word_id(const SignWord& word) noexcept;

/// Union of Spec(A^{(N,per)}_{c,alpha}) over the alpha grid.
SpectrumCloud bloch_spectrum(const SignWord& word, std::size_t alpha_count);
SpectrumCloud bloch_spectrum(const PeriodicTridiag& op, std::size_t alpha_count, double sigma);

/// A point of the full spectrum (all |alpha| = 1) near lambda: the phases
/// of the Floquet multipliers at lambda pick alpha, and the closest
/// eigenvalue at those phases is returned. It is always a spectrum point,
/// so |result - lambda| bounds the distance to the spectrum from above; the
/// bound is tight to first order when lambda is close to a band.
cplx spectrum_point_near(const PeriodicTridiag& op, cplx lambda);
double bloch_distance_bound(const PeriodicTridiag& op, cplx lambda);
double bloch_distance_bound(const SignWord& word, cplx lambda);

// ------------------------------------------------------------ enumeration

struct PiUnionOptions {
  std::size_t ceiling = 14;
  bool dedup_rotations = true;
};

struct PiUnionResult {
  SpectrumCloud cloud;
  std::vector<std::size_t> raw_words;      // index N: 2^N sign vectors
  std::vector<std::size_t> distinct_words; // index N: classes up to rotation
};

/// Bloch spectra of every word of period 1..n_max, sorted.
PiUnionResult pi_union(std::size_t n_max, double sigma, std::size_t alpha_count, const PiUnionOptions& opt = {});

/// Minimal-rotation representatives among length-n bitmasks.
std::vector<std::uint64_t> necklaces(std::size_t n);

// ---------------------------------------------------------------- sampling

struct PeriodicSampleConfig {
  std::size_t count = 10000;
  std::size_t n_min = 1;
  std::size_t n_max = 100;
  double p_sigma = 0.5;  // probability of +sigma
  double sigma = 0.5;
  std::uint64_t seed = 0;
};

/// Eigenvalues of `count` random A^{(N,per)}_{c,alpha}: N with weight
/// proportional to 1/N, signs i.i.d. and alpha uniform on the circle.
/// Sample k draws from its own stream, so results do not depend on
/// scheduling.
SpectrumCloud random_periodic_sample(const PeriodicSampleConfig& cfg);

struct FiniteSampleConfig {
  std::size_t n = 500;
  double p_sigma = 0.5;
  double sigma = 0.9025;
  std::uint64_t seed = 0;
  cplx alpha{1.0};
};

struct FinitePair {
  std::vector<double> c;  // c_1..c_N
  SpectrumCloud open;     // A^{(N)} from c_1..c_{N-1}
  SpectrumCloud periodic; // A^{(N,per)} from c_1..c_N
};

/// One draw of c, both matrix shapes.
FinitePair random_finite_pair(const FiniteSampleConfig& cfg);
SpectrumCloud random_finite_sample(const FiniteSampleConfig& cfg, bool periodic);

// ------------------------------------------------------------------ checks

struct BoundsReport {
  std::size_t points = 0;
  std::size_t annulus_violations = 0;   // outside <1 - sigma, 1 + sigma>
  std::size_t diamond_violations = 0;   // |x| + |y| > sqrt(2 (1 + sigma^2))
  std::size_t open_diamond_violations = 0;  // |x| + |y| > 2 sqrt(sigma)
  double min_abs = 0.0;
  double max_abs = 0.0;
  double max_l1 = 0.0;
};

BoundsReport bounds_report(std::span<const cplx> z, double sigma, double slack = 1e-9);

struct HoleSummary {
  std::size_t strict_inside = 0;   // both ellipse levels < 1
  std::size_t inside = 0;          // both levels < 1 - band
  double deepest_level = 0.0;      // min over points of max(level+, level-)
  double min_distance = 0.0;       // whole cloud to the closed hole
  // The constant words contribute the two ellipses, whose arcs form the
  // hole boundary, so the distance above is 0 whenever they are present.
  // This one skips them.
  double min_distance_nonconstant = 0.0;
  std::size_t nonconstant_points = 0;
};

/// sigma must lie in (0, 1). word_id is read as a sign mask (periods <= 64).
HoleSummary hole_summary(const SpectrumCloud& cloud, double band = kDefaultBandTol);

struct CurveCheck {
  double cloud_to_curve;     // max radial gap from Bloch points to r = rho(theta)
  double curve_to_spectrum;  // max distance from curve samples to the spectrum
  double hausdorff;          // max of the two
  double discrete_hausdorff; // point cloud against polyline vertices, for reference
  std::size_t cloud_points;
  std::size_t curve_points;
};

/// Bloch spectrum of sigma c^{(n,branch)} against the closed-form curve.
CurveCheck curve_check(int n, Branch branch, double sigma, std::size_t alpha_count, std::size_t curve_points = 2048);

struct SquareCheck {
  double squared_to_b;      // {lambda^2 : lambda in Spec A_c} -> Spec A_b
  double b_to_squared;      // Spec A_b -> squares
  double hausdorff;         // max of the two
  double mb_to_b;           // Spec M_b -> Spec A_b
  double b_to_mb;
  double mb_hausdorff;
  double discrete_hausdorff;  // the two alpha-sampled clouds, for reference
};

/// b has amplitude sigma^2; c = Gamma_{sigma,+}(b).
SquareCheck square_spectrum_check(const SignWord& b, std::size_t alpha_count);

struct UeBound {
  double max_abs;
  double bound;
  bool pass;
  long argmax;
};

/// Runs u_{n+1} = lambda u_n - c~_n u_{n-1} from (0, 1) up to i_max.
UeBound ue_bound_check(cplx lambda, long i_max);

struct SymmetryReport {
  double conj_distance;
  double rot_distance;  // lambda -> i lambda
  double neg_distance;  // lambda -> -lambda
  bool closed_conj;
  bool closed_rot;
  bool closed_neg;
};

SymmetryReport symmetry_check(const SpectrumCloud& cloud, double tol = 1e-8);

/// Spectrum of c^{(m,branch)} at sigma = 1: the 2^{m+1} rays
/// r exp(i pi j / 2^m), 0 <= r <= 2^{1/2^m}, turned by pi / 2^{m+1} for
/// the minus branch.
double distance_to_star(cplx lambda, int m, Branch branch);
std::vector<std::pair<cplx, cplx>> star_segments(int m, Branch branch);

}  // namespace hopsign
