#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "hopsign/error.hpp"

namespace hopsign::tools {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string stroke_attrs(const Stroke& s) {
  std::string a = " fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" + num(s.width) + "\"";
  if (!s.dash.empty()) a += " stroke-dasharray=\"" + s.dash + "\"";
  return a;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

SvgPanel::SvgPanel(double extent, std::string title, int size_px)
    : extent_(extent), title_(std::move(title)), size_(size_px) {
  if (!(extent > 0.0)) throw Error(ErrorCode::invalid_argument, "panel extent must be positive");
  // light axes
  body_ += "<line x1=\"0\" y1=\"" + num(py(0)) + "\" x2=\"" + num(size_) + "\" y2=\"" + num(py(0)) +
           "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
  body_ += "<line x1=\"" + num(px(0)) + "\" y1=\"0\" x2=\"" + num(px(0)) + "\" y2=\"" + num(size_) +
           "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
}

double SvgPanel::px(double x) const noexcept { return (x + extent_) / (2.0 * extent_) * size_; }
double SvgPanel::py(double y) const noexcept { return (extent_ - y) / (2.0 * extent_) * size_; }

std::size_t SvgPanel::points(std::span<const cplx> z, const std::string& color, std::size_t max_points) {
  if (z.empty() || max_points == 0) return 0;
  const std::size_t stride = (z.size() + max_points - 1) / max_points;
  std::string d;
  std::size_t drawn = 0;
  for (std::size_t k = 0; k < z.size(); k += stride) {
    // 1x1 px squares keep the file small compared with <circle> elements
    d += "M" + num(px(z[k].real()) - 0.5) + " " + num(py(z[k].imag()) - 0.5) + "h1v1h-1z";
    ++drawn;
  }
  body_ += "<path fill=\"" + color + "\" d=\"" + d + "\"/>\n";
  return drawn;
}

void SvgPanel::polyline(std::span<const cplx> v, bool closed, const Stroke& s) {
  if (v.empty()) return;
  std::string pts;
  for (const auto& p : v) pts += num(px(p.real())) + "," + num(py(p.imag())) + " ";
  body_ += std::string(closed ? "<polygon" : "<polyline") + " points=\"" + pts + "\"" + stroke_attrs(s) + "/>\n";
}

void SvgPanel::circle(double radius, const Stroke& s) {
  body_ += "<circle cx=\"" + num(px(0)) + "\" cy=\"" + num(py(0)) + "\" r=\"" + num(radius / (2.0 * extent_) * size_) +
           "\"" + stroke_attrs(s) + "/>\n";
}

void SvgPanel::segment(cplx a, cplx b, const Stroke& s) {
  body_ += "<line x1=\"" + num(px(a.real())) + "\" y1=\"" + num(py(a.imag())) + "\" x2=\"" + num(px(b.real())) +
           "\" y2=\"" + num(py(b.imag())) + "\"" + stroke_attrs(s) + "/>\n";
}

std::string render_svg(std::span<const SvgPanel> panels, const std::string& comment) {
  constexpr int kTitle = 24;
  constexpr int kGap = 16;
  int width = 0;
  int height = 0;
  for (const auto& p : panels) {
    width += p.size() + (width > 0 ? kGap : 0);
    height = std::max(height, p.size() + kTitle);
  }
  std::string safe = comment;
  for (std::size_t at = safe.find("--"); at != std::string::npos; at = safe.find("--", at + 2)) safe.replace(at, 2, "- -");

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- " + safe + " -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) + "\">\n";
  // comments cannot hold "--", so the exact text is repeated here
  out += "<metadata>" + escape(comment) + "</metadata>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  int x = 0;
  for (const auto& p : panels) {
    out += "<g transform=\"translate(" + std::to_string(x) + ",0)\">\n";
    out += "<text x=\"" + std::to_string(p.size() / 2) +
           "\" y=\"17\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" + escape(p.title()) +
           "</text>\n";
    out += "<g transform=\"translate(0," + std::to_string(kTitle) + ")\">\n";
    out += "<rect width=\"" + std::to_string(p.size()) + "\" height=\"" + std::to_string(p.size()) +
           "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
    out += p.body();
    out += "</g>\n</g>\n";
    x += p.size() + kGap;
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const std::string& path, std::span<const SvgPanel> panels, const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot open " + path + " for writing");
  out << render_svg(panels, comment);
  if (!out) throw Error(ErrorCode::io_failure, "failed writing " + path);
}

}  // namespace hopsign::tools
