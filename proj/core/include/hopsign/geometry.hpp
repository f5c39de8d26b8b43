#pragma once

// Planar point-set geometry for spectra: bucketed nearest neighbours,
// Hausdorff distances, polylines and the distance to the closed hole.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hopsign/seqcore.hpp"

namespace hopsign {

using cplx = std::complex<double>;

/// Uniform grid over the bounding box, about two points per cell.
class PointIndex {
 public:
  explicit PointIndex(std::span<const cplx> points);

  std::size_t size() const noexcept { return points_.size(); }
  /// Index of the nearest point; size() when empty.
  std::size_t nearest(cplx q) const;
  /// Infinity when empty.
  double nearest_distance(cplx q) const;

 private:
  long cell_of(double v, double lo, long count) const noexcept;

  std::vector<cplx> points_;
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  long nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;  // CSR offsets, nx_ * ny_ + 1
  std::vector<std::size_t> order_;
};

/// max over a of the distance to the nearest point of b.
double directed_hausdorff(std::span<const cplx> a, std::span<const cplx> b);
double hausdorff(std::span<const cplx> a, std::span<const cplx> b);

struct Polyline {
  std::vector<cplx> vertices;
  bool closed = true;
};

double distance_to_polyline(cplx q, const Polyline& line);
/// max over points of distance_to_polyline.
double directed_hausdorff(std::span<const cplx> points, const Polyline& line);

/// Closed curve r = rho_n^{+/-}(theta) sampled at `count` angles.
Polyline rho_polyline(int n, Branch branch, double sigma, std::size_t count);
/// Boundary of E_{+/-sigma}.
Polyline ellipse_polyline(Branch branch, double sigma, std::size_t count);
/// Boundary of H_sigma, the intersection of the two ellipses; sigma in (0, 1).
Polyline hole_polyline(double sigma, std::size_t count);

/// Euclidean distance from lambda to the closure of H_sigma (0 inside).
/// H_sigma is empty at sigma = 1 and the result is then infinite.
double distance_to_hole_closure(cplx lambda, double sigma);

struct HoleReport {
  std::size_t inside = 0;  // points with both ellipse levels < 1
  double min_distance;     // to the closure; 0 if any point touches it
  std::size_t nearest;     // index of the point attaining min_distance
};

/// Hole statistics for a whole cloud. Candidates are the cloud points
/// nearest to a fine sampling of the boundary; the closest ones are then
/// measured exactly with distance_to_hole_closure.
HoleReport hole_report(std::span<const cplx> points, double sigma);

}  // namespace hopsign
