// hopsign: spectra of random hopping-sign tridiagonal operators.
//
//   hopsign pi-union --sigma 0.5 --nmax 12 --out-csv pi12.csv --out-svg pi12.svg
//   hopsign sample --seed 7 --count 10000 --out-svg sample.svg
//   hopsign finite --seed 7 --n 500 --sigma 0.9025 --out-svg finite.svg
//   hopsign verify --json -
//   hopsign curve --n 2 --sigma 0.9025 --mode both
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid configuration (and
// I/O errors), 3 eigensolver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopsign/cloud_io.hpp"
#include "hopsign/error.hpp"
#include "hopsign/parallel.hpp"
#include "hopsign/spectra.hpp"
#include "svg.hpp"
#include "verify.hpp"

namespace {

using namespace hopsign;
using hopsign::tools::Stroke;
using hopsign::tools::SvgPanel;

enum Exit { kOk = 0, kVerifyFailed = 1, kBadConfig = 2, kSolverFailed = 3 };

struct Output {
  std::string csv;
  std::string svg;
  std::string overlay = "annulus,diamond,hole,ellipses";
  std::size_t svg_points = 60000;
};

std::string command_line;

std::set<std::string> parse_overlay(const std::string& spec) {
  std::set<std::string> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item == "none") continue;
    if (item != "annulus" && item != "diamond" && item != "hole" && item != "ellipses") {
      throw Error(ErrorCode::invalid_argument, "unknown overlay '" + item + "'");
    }
    out.insert(item);
  }
  return out;
}

void draw_guides(SvgPanel& panel, double sigma, const std::set<std::string>& overlay, bool open_diamond) {
  if (overlay.count("ellipses")) {
    for (Branch b : {Branch::plus, Branch::minus}) {
      panel.polyline(ellipse_polyline(b, sigma, 720).vertices, true, {"#7f7f7f", 0.8, ""});
    }
  }
  if (overlay.count("annulus")) {
    if (sigma < 1.0) panel.circle(1.0 - sigma, {"#1f77b4", 0.8, ""});
    panel.circle(1.0 + sigma, {"#1f77b4", 0.8, ""});
  }
  if (overlay.count("diamond")) {
    const double d = std::sqrt(2.0 * (1.0 + sigma * sigma));
    const std::vector<cplx> v = {{d, 0}, {0, d}, {-d, 0}, {0, -d}};
    panel.polyline(v, true, {"#2ca02c", 0.8, "6,4"});
    if (open_diamond) {
      const double e = 2.0 * std::sqrt(sigma);
      const std::vector<cplx> w = {{e, 0}, {0, e}, {-e, 0}, {0, -e}};
      panel.polyline(w, true, {"#2ca02c", 0.8, "2,3"});
    }
  }
  if (overlay.count("hole") && sigma < 1.0) {
    panel.polyline(hole_polyline(sigma, 1440).vertices, true, {"#d62728", 2.5, ""});
  }
}

double extent_for(double sigma) { return std::max(1.2, 1.1 * (1.0 + sigma)); }

void emit(const Output& out, const SpectrumCloud& cloud, std::vector<SvgPanel> panels) {
  if (!out.csv.empty()) {
    write_csv(out.csv, cloud);
    std::cout << "wrote " << out.csv << " (" << cloud.size() << " points)\n";
  }
  if (!out.svg.empty()) {
    std::string comment = artifact_version() + std::string("; command: ") + command_line;
    comment += "; seed: " + (cloud.seed() ? std::to_string(*cloud.seed()) : std::string("none"));
    tools::write_svg(out.svg, panels, comment);
    std::cout << "wrote " << out.svg << '\n';
  }
}

void print_bounds(const char* label, const BoundsReport& b, bool open) {
  std::printf("%s: %zu eigenvalues, |z| in [%.6f, %.6f], max |x|+|y| %.6f\n", label, b.points, b.min_abs, b.max_abs,
              b.max_l1);
  if (open) {
    std::printf("  outside |x|+|y| <= 2 sqrt(sigma): %zu\n", b.open_diamond_violations);
  } else {
    std::printf("  outside annulus: %zu, outside diamond: %zu\n", b.annulus_violations, b.diamond_violations);
  }
}

void print_hole(const SpectrumCloud& cloud) {
  if (!(cloud.sigma() < 1.0)) return;
  const HoleSummary h = hole_summary(cloud);
  std::printf("hole H_sigma: %zu points inside (%zu within 1e-9 of the boundary), min distance to closure %.6g\n",
              h.inside, h.strict_inside - h.inside, h.min_distance);
  std::printf("  excluding constant words: %zu points, min distance %.6g\n", h.nonconstant_points,
              h.min_distance_nonconstant);
}

// ---------------------------------------------------------------- commands

struct PiUnionArgs {
  double sigma = 0.5;
  std::size_t n_max = 2;
  std::size_t alpha_count = 512;
  std::size_t ceiling = 14;
  bool no_dedup = false;
};

int cmd_pi_union(const PiUnionArgs& a, const Output& out) {
  const auto overlay = parse_overlay(out.overlay);
  PiUnionOptions opt;
  opt.ceiling = a.ceiling;
  opt.dedup_rotations = !a.no_dedup;
  const PiUnionResult res = pi_union(a.n_max, a.sigma, a.alpha_count, opt);
  std::printf("pi_{%zu, %g}: %zu points from alpha_count %zu\n", a.n_max, a.sigma, res.cloud.size(), a.alpha_count);
  std::printf("  %-4s %10s %10s\n", "N", "2^N", "rotations");
  for (std::size_t n = 1; n <= a.n_max; ++n) {
    std::printf("  %-4zu %10zu %10zu\n", n, res.raw_words[n], res.distinct_words[n]);
  }
  const auto values = res.cloud.values();
  const BoundsReport b = bounds_report(values, a.sigma);
  print_bounds("bounds", b, false);
  print_hole(res.cloud);

  SvgPanel panel(extent_for(a.sigma), "pi_{" + std::to_string(a.n_max) + "}, sigma = " + CLI::detail::to_string(a.sigma));
  panel.points(values, "#000000", out.svg_points);
  draw_guides(panel, a.sigma, overlay, false);
  emit(out, res.cloud, {panel});
  return b.annulus_violations + b.diamond_violations == 0 ? kOk : kVerifyFailed;
}

struct SampleArgs {
  PeriodicSampleConfig cfg;
};

int cmd_sample(const SampleArgs& a, const Output& out) {
  const auto overlay = parse_overlay(out.overlay);
  const SpectrumCloud cloud = random_periodic_sample(a.cfg);
  const auto values = cloud.values();
  std::printf("%zu samples, N in [%zu, %zu] with weight 1/N, P(+sigma) = %g, seed %llu\n", a.cfg.count, a.cfg.n_min,
              a.cfg.n_max, a.cfg.p_sigma, static_cast<unsigned long long>(a.cfg.seed));
  const BoundsReport b = bounds_report(values, a.cfg.sigma);
  print_bounds("bounds", b, false);
  print_hole(cloud);

  SvgPanel panel(extent_for(a.cfg.sigma), std::to_string(a.cfg.count) + " periodic samples, sigma = " +
                                              CLI::detail::to_string(a.cfg.sigma));
  panel.points(values, "#000000", out.svg_points);
  draw_guides(panel, a.cfg.sigma, overlay, false);
  emit(out, cloud, {panel});
  return b.annulus_violations + b.diamond_violations == 0 ? kOk : kVerifyFailed;
}

struct FiniteArgs {
  FiniteSampleConfig cfg;
  std::string shape = "both";
  double alpha_angle = 0.0;
};

int cmd_finite(FiniteArgs a, const Output& out) {
  const auto overlay = parse_overlay(out.overlay);
  a.cfg.alpha = std::polar(1.0, a.alpha_angle);
  const FinitePair pair = random_finite_pair(a.cfg);
  const bool want_open = a.shape != "periodic";
  const bool want_periodic = a.shape != "open";

  SpectrumCloud merged(a.cfg.sigma);
  merged.set_seed(a.cfg.seed);
  for (const auto& [k, v] : pair.open.params()) merged.set_param(k, v);
  merged.set_param("shape", a.shape);
  std::vector<SvgPanel> panels;
  bool ok = true;
  const double ext = extent_for(a.cfg.sigma);
  if (want_open) {
    const BoundsReport b = bounds_report(pair.open.values(), a.cfg.sigma);
    print_bounds("open A^(N)", b, true);
    ok = ok && b.open_diamond_violations == 0;
    merged.append(pair.open);
    SvgPanel p(ext, "open, N = " + std::to_string(a.cfg.n));
    p.points(pair.open.values(), "#000000", out.svg_points);
    draw_guides(p, a.cfg.sigma, overlay, true);
    panels.push_back(std::move(p));
  }
  if (want_periodic) {
    const BoundsReport b = bounds_report(pair.periodic.values(), a.cfg.sigma);
    print_bounds("periodic A^(N,per)", b, false);
    ok = ok && b.annulus_violations + b.diamond_violations == 0;
    merged.append(pair.periodic);
    SvgPanel p(ext, "periodised, N = " + std::to_string(a.cfg.n));
    p.points(pair.periodic.values(), "#000000", out.svg_points);
    draw_guides(p, a.cfg.sigma, overlay, false);
    panels.push_back(std::move(p));
  }
  emit(out, merged, std::move(panels));
  return ok ? kOk : kVerifyFailed;
}

struct VerifyArgs {
  tools::VerifyOptions opt;
  std::string json;
};

int cmd_verify(const VerifyArgs& a) {
  const auto results = tools::run_verify(a.opt);
  const nlohmann::json summary = tools::to_json(results);
  if (a.json == "-") {
    std::cout << summary.dump(2) << '\n';
  } else {
    std::cout << tools::to_table(results);
    if (!a.json.empty()) {
      std::ofstream f(a.json);
      f << summary.dump(2) << '\n';
      if (!f) throw Error(ErrorCode::io_failure, "failed writing " + a.json);
    }
  }
  return summary["status"] == "pass" ? kOk : kVerifyFailed;
}

struct CurveArgs {
  int n = 0;
  std::string branch = "+";
  double sigma = 0.5;
  std::size_t alpha_count = 512;
  std::size_t curve_points = 2048;
  std::string mode = "both";
  double tol = 1e-6;
};

int cmd_curve(const CurveArgs& a, const Output& out) {
  const auto overlay = parse_overlay(out.overlay);
  const Branch branch = a.branch == "+" ? Branch::plus : Branch::minus;
  const bool closed = a.mode != "bloch";
  const bool bloch = a.mode != "closed-form";
  const bool star = a.sigma == 1.0;
  if (star && (a.n < 0 || a.n > 12)) throw Error(ErrorCode::invalid_argument, "sigma = 1 curves need 0 <= n <= 12");

  SvgPanel panel(extent_for(a.sigma), "c^(" + std::to_string(a.n) + "," + a.branch + "), sigma = " +
                                          CLI::detail::to_string(a.sigma));
  draw_guides(panel, a.sigma, overlay, false);
  SpectrumCloud cloud(a.sigma);
  cloud.set_param("curve", "n=" + std::to_string(a.n) + " branch=" + a.branch + " mode=" + a.mode);
  int status = kOk;

  if (bloch) {
    const SignWord word = c_iterate_word(a.n, branch, a.sigma);
    const SpectrumCloud b = bloch_spectrum(word, a.alpha_count);
    std::printf("Bloch spectrum: period %zu, %zu points\n", word.period(), b.size());
    panel.points(b.values(), "#000000", out.svg_points);
    cloud.append(b);
  }
  if (closed) {
    if (star) {
      for (const auto& [p, q] : star_segments(a.n, branch)) panel.segment(p, q, {"#ff7f0e", 1.2, ""});
      std::printf("closed form: %zu rays of length %.12g\n", star_segments(a.n, branch).size(),
                  std::pow(2.0, std::ldexp(1.0, -a.n)));
    } else {
      const Polyline line = rho_polyline(a.n, branch, a.sigma, a.curve_points);
      panel.polyline(line.vertices, true, {"#ff7f0e", 1.2, ""});
      std::printf("closed form: %zu vertices of r = rho_%d(theta)\n", line.vertices.size(), a.n);
      if (!bloch) {
        for (const auto& v : line.vertices) cloud.add({v, 0, 0, cplx{0.0}});
      }
    }
  }
  if (closed && bloch) {
    double h = 0.0;
    if (star) {
      for (const auto& p : cloud.points()) h = std::max(h, distance_to_star(p.z, a.n, branch));
      std::printf("max distance Bloch -> star: %.3g\n", h);
    } else {
      const CurveCheck c = curve_check(a.n, branch, a.sigma, a.alpha_count, a.curve_points);
      h = c.hausdorff;
      std::printf("Hausdorff(Bloch spectrum, rho curve) = %.3g  (cloud->curve %.3g, curve->spectrum %.3g)\n", c.hausdorff,
                  c.cloud_to_curve, c.curve_to_spectrum);
      std::printf("  alpha-sampled cloud vs polyline vertices: %.3g\n", c.discrete_hausdorff);
    }
    const bool pass = h <= a.tol;
    std::printf("%s: tolerance %.3g\n", pass ? "PASS" : "FAIL", a.tol);
    if (!pass) status = kVerifyFailed;
  }
  emit(out, cloud, {panel});
  return status;
}

CLI::Validator amplitude() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        const double v = std::stod(s);
        return v > 0.0 && v <= 1.0 ? std::string() : "sigma must lie in (0, 1]";
      },
      "(0,1]");
}

CLI::Validator probability() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        const double v = std::stod(s);
        return v > 0.0 && v < 1.0 ? std::string() : "probability must lie in (0, 1)";
      },
      "(0,1)");
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out-csv", out.csv, "CSV file for the point cloud");
  cmd->add_option("--out-svg", out.svg, "SVG figure");
  cmd->add_option("--overlay", out.overlay, "comma list of annulus,diamond,hole,ellipses (or none)")
      ->capture_default_str();
  cmd->add_option("--svg-points", out.svg_points, "maximum points drawn per panel")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Spectra of random hopping-sign tridiagonal operators"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

  Output out;

  PiUnionArgs pu;
  auto* c_pi = app.add_subcommand("pi-union", "union of Bloch spectra over all periods <= N_max");
  c_pi->add_option("--sigma", pu.sigma)->capture_default_str()->check(amplitude());
  c_pi->add_option("--nmax", pu.n_max)->capture_default_str()->check(CLI::Range(1, 63));
  c_pi->add_option("--alpha-count", pu.alpha_count)->capture_default_str()->check(CLI::Range(1, 1 << 20));
  c_pi->add_option("--ceiling", pu.ceiling, "largest N_max accepted")->capture_default_str();
  c_pi->add_flag("--no-dedup", pu.no_dedup, "enumerate all 2^N words instead of rotation classes");
  add_output(c_pi, out);

  SampleArgs sa;
  auto* c_sample = app.add_subcommand("sample", "random periodised matrices");
  c_sample->add_option("--seed", sa.cfg.seed)->required();
  c_sample->add_option("--count", sa.cfg.count)->capture_default_str()->check(CLI::Range(1, 10000000));
  c_sample->add_option("--nmin", sa.cfg.n_min)->capture_default_str()->check(CLI::Range(1, 100000));
  c_sample->add_option("--nmax", sa.cfg.n_max)->capture_default_str()->check(CLI::Range(1, 100000));
  c_sample->add_option("--p-sigma", sa.cfg.p_sigma)->capture_default_str()->check(probability());
  c_sample->add_option("--sigma", sa.cfg.sigma)->capture_default_str()->check(amplitude());
  add_output(c_sample, out);

  FiniteArgs fa;
  auto* c_finite = app.add_subcommand("finite", "one draw of c: open and periodised N x N matrices");
  c_finite->add_option("--seed", fa.cfg.seed)->required();
  c_finite->add_option("--n", fa.cfg.n, "matrix size")->capture_default_str()->check(CLI::Range(3, 20000));
  c_finite->add_option("--p-sigma", fa.cfg.p_sigma)->capture_default_str()->check(probability());
  c_finite->add_option("--sigma", fa.cfg.sigma)->capture_default_str()->check(amplitude());
  c_finite->add_option("--shape", fa.shape)->capture_default_str()->check(CLI::IsMember({"open", "periodic", "both"}));
  c_finite->add_option("--alpha-angle", fa.alpha_angle, "arg(alpha) in radians")->capture_default_str();
  add_output(c_finite, out);

  VerifyArgs va;
  auto* c_verify = app.add_subcommand("verify", "run the verification suites");
  c_verify->add_option("--rmax", va.opt.r_max)->capture_default_str()->check(CLI::Range(1, 14));
  c_verify->add_option("--tol", va.opt.tol, "tolerance for spectral distances")->capture_default_str()->check(
      CLI::PositiveNumber);
  c_verify->add_option("--inject-fault", va.opt.inject_fault, "flip c~_k before running (fault injection)")
      ->check(CLI::Range(1L, 1L << 20));
  c_verify->add_option("--json", va.json, "write the JSON summary here ('-' for stdout only)");

  CurveArgs ca;
  auto* c_curve = app.add_subcommand("curve", "spectrum of sigma c^(n,+/-): closed form and/or Bloch");
  c_curve->add_option("--n", ca.n)->capture_default_str()->check(CLI::Range(0, 12));
  c_curve->add_option("--branch", ca.branch)->capture_default_str()->check(CLI::IsMember({"+", "-"}));
  c_curve->add_option("--sigma", ca.sigma)->capture_default_str()->check(amplitude());
  c_curve->add_option("--alpha-count", ca.alpha_count)->capture_default_str()->check(CLI::Range(1, 1 << 20));
  c_curve->add_option("--curve-points", ca.curve_points)->capture_default_str()->check(CLI::Range(3, 1 << 22));
  c_curve->add_option("--mode", ca.mode)->capture_default_str()->check(
      CLI::IsMember({"closed-form", "bloch", "both"}));
  c_curve->add_option("--tol", ca.tol)->capture_default_str()->check(CLI::PositiveNumber);
  add_output(c_curve, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  try {
    if (threads > 0) set_worker_count(threads);
    if (*c_pi) return cmd_pi_union(pu, out);
    if (*c_sample) {
      if (sa.cfg.n_min > sa.cfg.n_max) throw Error(ErrorCode::invalid_argument, "--nmin exceeds --nmax");
      return cmd_sample(sa, out);
    }
    if (*c_finite) return cmd_finite(fa, out);
    if (*c_verify) return cmd_verify(va);
    if (*c_curve) {
      return cmd_curve(ca, out);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == ErrorCode::solver_failure ? kSolverFailed : kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  return kBadConfig;
}
