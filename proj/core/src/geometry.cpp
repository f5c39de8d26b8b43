#include "hopsign/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hopsign/error.hpp"
#include "hopsign/transfer.hpp"

namespace hopsign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double segment_distance(cplx q, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(q - a);
  const double t = std::clamp(((q - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(q - (a + t * ab));
}

}  // namespace

PointIndex::PointIndex(std::span<const cplx> points) : points_(points.begin(), points.end()) {
  if (points_.empty()) return;
  double x1 = points_[0].real(), y1 = points_[0].imag();
  x0_ = x1;
  y0_ = y1;
  for (const auto& p : points_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
      throw Error(ErrorCode::invalid_argument, "PointIndex needs finite points");
    }
    x0_ = std::min(x0_, p.real());
    x1 = std::max(x1, p.real());
    y0_ = std::min(y0_, p.imag());
    y1 = std::max(y1, p.imag());
  }
  const double w = std::max(x1 - x0_, 1e-300);
  const double h = std::max(y1 - y0_, 1e-300);
  const double target_cells = std::max(1.0, static_cast<double>(points_.size()) / 2.0);
  cell_ = std::sqrt(w * h / target_cells);
  // Degenerate boxes (points on a line) still get a sane number of cells.
  cell_ = std::max(cell_, std::max(w, h) / target_cells);
  nx_ = std::min<long>(4096, static_cast<long>(w / cell_) + 1);
  ny_ = std::min<long>(4096, static_cast<long>(h / cell_) + 1);
  cell_ = std::max(w / static_cast<double>(nx_), h / static_cast<double>(ny_)) * (1.0 + 1e-12);

  const auto cells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> key(points_.size());
  start_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long cx = cell_of(points_[i].real(), x0_, nx_);
    const long cy = cell_of(points_[i].imag(), y0_, ny_);
    key[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++start_[key[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) start_[c + 1] += start_[c];
  order_.resize(points_.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) order_[fill[key[i]]++] = i;
}

long PointIndex::cell_of(double v, double lo, long count) const noexcept {
  const long c = static_cast<long>(std::floor((v - lo) / cell_));
  return std::clamp(c, 0L, count - 1);
}

std::size_t PointIndex::nearest(cplx q) const {
  if (points_.empty()) return 0;
  const long qx = cell_of(q.real(), x0_, nx_);
  const long qy = cell_of(q.imag(), y0_, ny_);
  // Distance from q to the box, so rings start counting from the grid.
  const double outside_x = std::max({0.0, x0_ - q.real(), q.real() - (x0_ + cell_ * static_cast<double>(nx_))});
  const double outside_y = std::max({0.0, y0_ - q.imag(), q.imag() - (y0_ + cell_ * static_cast<double>(ny_))});
  const double outside = std::hypot(outside_x, outside_y);

  double best = kInf;
  std::size_t best_i = points_.size();
  const long max_ring = std::max(nx_, ny_);
  for (long ring = 0; ring <= max_ring; ++ring) {
    const double reach = static_cast<double>(std::max(0L, ring - 1)) * cell_;
    if (best_i != points_.size() && std::hypot(outside, reach) > best) break;
    for (long cy = qy - ring; cy <= qy + ring; ++cy) {
      if (cy < 0 || cy >= ny_) continue;
      const bool edge_row = cy == qy - ring || cy == qy + ring;
      for (long cx = qx - ring; cx <= qx + ring; cx += (edge_row ? 1 : 2 * ring)) {
        if (cx >= 0 && cx < nx_) {
          const auto c = static_cast<std::size_t>(cy * nx_ + cx);
          for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
            const double d = std::abs(points_[order_[k]] - q);
            if (d < best || (d == best && order_[k] < best_i)) {
              best = d;
              best_i = order_[k];
            }
          }
        }
        if (ring == 0) break;
      }
    }
  }
  return best_i;
}

double PointIndex::nearest_distance(cplx q) const {
  const std::size_t i = nearest(q);
  return i == points_.size() ? kInf : std::abs(points_[i] - q);
}

double directed_hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return kInf;
  const PointIndex index(b);
  double worst = 0.0;
  for (const auto& p : a) worst = std::max(worst, index.nearest_distance(p));
  return worst;
}

double hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double distance_to_polyline(cplx q, const Polyline& line) {
  const auto& v = line.vertices;
  if (v.empty()) return kInf;
  if (v.size() == 1) return std::abs(q - v[0]);
  double best = kInf;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) best = std::min(best, segment_distance(q, v[i], v[i + 1]));
  if (line.closed) best = std::min(best, segment_distance(q, v.back(), v.front()));
  return best;
}

double directed_hausdorff(std::span<const cplx> points, const Polyline& line) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, distance_to_polyline(p, line));
  return worst;
}

Polyline rho_polyline(int n, Branch branch, double sigma, std::size_t count) {
  if (count < 3) throw Error(ErrorCode::invalid_argument, "polyline needs at least 3 vertices");
  Polyline out;
  out.vertices.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.vertices.push_back(std::polar(rho_curve(n, branch, theta, sigma), theta));
  }
  return out;
}

Polyline ellipse_polyline(Branch branch, double sigma, std::size_t count) {
  if (count < 3) throw Error(ErrorCode::invalid_argument, "polyline needs at least 3 vertices");
  const double a = branch == Branch::plus ? 1.0 + sigma : 1.0 - sigma;
  const double b = branch == Branch::plus ? 1.0 - sigma : 1.0 + sigma;
  Polyline out;
  out.vertices.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.vertices.emplace_back(a * std::cos(t), b * std::sin(t));
  }
  return out;
}

Polyline hole_polyline(double sigma, std::size_t count) {
  if (count < 3) throw Error(ErrorCode::invalid_argument, "polyline needs at least 3 vertices");
  Polyline out;
  out.vertices.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.vertices.push_back(std::polar(hole_boundary_radius(theta, sigma), theta));
  }
  return out;
}

double distance_to_hole_closure(cplx lambda, double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw Error(ErrorCode::invalid_amplitude, "sigma must lie in (0, 1]");
  if (sigma == 1.0) return kInf;
  if (ellipse_level(lambda, Branch::plus, sigma) <= 1.0 && ellipse_level(lambda, Branch::minus, sigma) <= 1.0) {
    return 0.0;
  }
  // The hole is convex and star-shaped about 0: sample its boundary, then
  // refine the best few local minima by golden-section search.
  constexpr int kSamples = 2048;
  auto dist = [&](double theta) { return std::abs(lambda - std::polar(hole_boundary_radius(theta, sigma), theta)); };
  const double step = 2.0 * std::numbers::pi / kSamples;
  std::vector<double> d(kSamples);
  for (int k = 0; k < kSamples; ++k) d[static_cast<std::size_t>(k)] = dist(step * k);
  std::vector<int> minima;
  for (int k = 0; k < kSamples; ++k) {
    const double prev = d[static_cast<std::size_t>((k + kSamples - 1) % kSamples)];
    const double next = d[static_cast<std::size_t>((k + 1) % kSamples)];
    const double cur = d[static_cast<std::size_t>(k)];
    if (cur <= prev && cur <= next) minima.push_back(k);
  }
  std::sort(minima.begin(), minima.end(),
            [&](int a, int b) { return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)]; });
  if (minima.size() > 3) minima.resize(3);
  double best = *std::min_element(d.begin(), d.end());
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k : minima) {
    double lo = step * (k - 1);
    double hi = step * (k + 1);
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = dist(x1);
    double f2 = dist(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = dist(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = dist(x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

HoleReport hole_report(std::span<const cplx> points, double sigma) {
  HoleReport rep{0, kInf, points.size()};
  if (points.empty() || sigma == 1.0) return rep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (ellipse_level(points[i], Branch::plus, sigma) < 1.0 && ellipse_level(points[i], Branch::minus, sigma) < 1.0) {
      if (rep.inside++ == 0) rep.nearest = i;
    }
  }
  if (rep.inside > 0) {
    rep.min_distance = 0.0;
    return rep;
  }
  const PointIndex index(points);
  const Polyline boundary = hole_polyline(sigma, 8192);
  std::vector<std::pair<double, std::size_t>> candidates;
  candidates.reserve(boundary.vertices.size());
  for (const auto& b : boundary.vertices) {
    const std::size_t i = index.nearest(b);
    candidates.emplace_back(std::abs(points[i] - b), i);
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<std::size_t> seen;
  for (const auto& [approx, i] : candidates) {
    if (seen.size() >= 64) break;
    if (std::find(seen.begin(), seen.end(), i) != seen.end()) continue;
    seen.push_back(i);
    const double d = distance_to_hole_closure(points[i], sigma);
    if (d < rep.min_distance) {
      rep.min_distance = d;
      rep.nearest = i;
    }
  }
  return rep;
}

}  // namespace hopsign
