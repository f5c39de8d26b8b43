#pragma once

// Minimal static SVG output for spectrum plots: square panels laid out left
// to right, each showing the window [-extent, extent]^2.

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace hopsign::tools {

using cplx = std::complex<double>;

struct Stroke {
  std::string color = "#000000";
  double width = 1.0;
  std::string dash;  // stroke-dasharray, empty for solid
};

class SvgPanel {
 public:
  SvgPanel(double extent, std::string title, int size_px = 480);

  /// Draws at most max_points of the cloud, every k-th point in order.
  /// Returns the number drawn.
  std::size_t points(std::span<const cplx> z, const std::string& color, std::size_t max_points);
  void polyline(std::span<const cplx> v, bool closed, const Stroke& s);
  void circle(double radius, const Stroke& s);
  void segment(cplx a, cplx b, const Stroke& s);

  int size() const noexcept { return size_; }
  const std::string& body() const noexcept { return body_; }
  const std::string& title() const noexcept { return title_; }

 private:
  double px(double x) const noexcept;
  double py(double y) const noexcept;

  double extent_;
  std::string title_;
  int size_;
  std::string body_;
};

/// `comment` goes verbatim into an XML comment at the top ("--" is escaped).
std::string render_svg(std::span<const SvgPanel> panels, const std::string& comment);
void write_svg(const std::string& path, std::span<const SvgPanel> panels, const std::string& comment);

}  // namespace hopsign::tools
