#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "hopsign/polyalg.hpp"
#include "hopsign/spectra.hpp"
#include "hopsign/transfer.hpp"

namespace hopsign::tools {

namespace {

// Tables of c~_n, u_n, v_n (n = 1..9) and of tr T_n (n = 1..8), ascending
// coefficients.
struct UVRow {
  int c_tilde;
  IntPolynomial u;
  IntPolynomial v;
};

const std::vector<UVRow>& uv_golden() {
  static const std::vector<UVRow> rows = {
      {1, {1}, {}},
      {1, {0, 1}, {-1}},
      {-1, {-1, 0, 1}, {0, -1}},
      {-1, {0, 0, 0, 1}, {-1, 0, -1}},
      {1, {-1, 0, 1, 0, 1}, {0, -2, 0, -1}},
      {-1, {0, -1, 0, 0, 0, 1}, {1, 0, -1, 0, -1}},
      {1, {-1, 0, 0, 0, 1, 0, 1}, {0, -1, 0, -2, 0, -1}},
      {-1, {0, 0, 0, 0, 0, 0, 0, 1}, {-1, 0, 0, 0, -1, 0, -1}},
      {1, {-1, 0, 0, 0, 1, 0, 1, 0, 1}, {0, -2, 0, -2, 0, -2, 0, -1}},
  };
  return rows;
}

const std::vector<IntPolynomial>& trace_golden() {
  static const std::vector<IntPolynomial> rows = {
      {0, 1},
      {-2, 0, 1},
      {0, -1, 0, 1},
      {-2, 0, 0, 0, 1},
      {0, -3, 0, -1, 0, 1},
      {0, 0, -1, 0, 0, 0, 1},
      {0, -1, 0, -2, 0, -1, 0, 1},
      {-2, 0, 0, 0, 0, 0, 0, 0, 1},
  };
  return rows;
}

CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.check = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  const CoefficientSource source = opt.inject_fault > 0 ? flipped_coefficients(opt.inject_fault) : default_coefficients();
  std::vector<CheckResult> out;

  out.push_back(timed("golden_table_uv", [&](CheckResult& r) {
    const UVTable t = uv_polys(10, source);
    const auto& g = uv_golden();
    r.pass = true;
    for (std::size_t n = 1; n <= g.size() && r.pass; ++n) {
      const int ct = source(static_cast<long>(n));
      if (ct != g[n - 1].c_tilde) {
        r.pass = false;
        r.detail = "c~_" + std::to_string(n) + " = " + std::to_string(ct);
      } else if (!(t.u[n] == g[n - 1].u)) {
        r.pass = false;
        r.detail = "u_" + std::to_string(n) + " = " + t.u[n].to_string("l");
      } else if (!(t.v[n] == g[n - 1].v)) {
        r.pass = false;
        r.detail = "v_" + std::to_string(n) + " = " + t.v[n].to_string("l");
      }
    }
    if (r.pass) r.detail = "n = 1..9";
  }));

  out.push_back(timed("golden_table_trace", [&](CheckResult& r) {
    const auto& g = trace_golden();
    r.pass = true;
    for (std::size_t n = 1; n <= g.size() && r.pass; ++n) {
      const IntPolynomial t = trace_poly(static_cast<long>(n), source);
      if (!(t == g[n - 1])) {
        r.pass = false;
        r.detail = "tr T_" + std::to_string(n) + " = " + t.to_string("l");
      }
    }
    if (r.pass) r.detail = "n = 1..8";
  }));

  out.push_back(timed("identities", [&](CheckResult& r) {
    const IdentityReport rep = verify_identities(opt.r_max, source);
    r.pass = rep.all_pass();
    for (const auto& c : rep.checks) {
      if (!c.pass) {
        r.detail = c.check + " failed at r=" + std::to_string(c.r) + ": " + c.detail;
        break;
      }
    }
    if (r.pass) r.detail = std::to_string(rep.checks.size()) + " checks, r = 1.." + std::to_string(opt.r_max);
  }));

  out.push_back(timed("p_table_recurrence", [&](CheckResult& r) {
    const PTable table = p_table(opt.p_table_rows);
    UVRecurrence rec(source);
    r.pass = table.collisions() == 0;
    long bad = 0;
    for (long i = 1; i <= opt.p_table_rows; ++i) {
      rec.advance();  // now holds u_i
      if (!(rec.u() == table.row_polynomial(i))) {
        if (bad++ == 0) r.detail = "first mismatch at i=" + std::to_string(i);
      }
    }
    r.pass = r.pass && bad == 0;
    r.max_error = static_cast<double>(bad);
    if (r.pass) r.detail = "i <= " + std::to_string(opt.p_table_rows);
  }));

  out.push_back(timed("ue_bound", [&](CheckResult& r) {
    r.pass = true;
    double worst = -1e300;
    for (double radius : {0.0, 0.25, 0.5, 0.75, 0.9}) {
      for (int k = 0; k < 8; ++k) {
        const cplx lambda = std::polar(radius, std::numbers::pi * k / 4.0);
        const UeBound b = ue_bound_check(lambda, 20000);
        worst = std::max(worst, b.max_abs - b.bound);
        if (!b.pass) r.pass = false;
      }
    }
    r.max_error = std::max(0.0, worst);
    r.detail = "max(|u_i| - bound) = " + fmt("%.3g", worst);
  }));

  out.push_back(timed("square_spectrum", [&](CheckResult& r) {
    r.pass = true;
    std::size_t words = 0;
    for (double s2 : {0.25, 0.81}) {
      for (std::size_t n = 1; n <= 3; ++n) {
        for (auto m : necklaces(n)) {
          const SquareCheck c = square_spectrum_check(SignWord::from_mask(m, n, s2), 128);
          r.max_error = std::max({r.max_error, c.hausdorff, c.mb_hausdorff});
          ++words;
        }
      }
    }
    r.pass = r.max_error <= opt.tol;
    r.detail = std::to_string(words) + " words, A_c^2 and M_b against A_b";
  }));

  out.push_back(timed("symmetry", [&](CheckResult& r) {
    PiUnionOptions po;
    po.dedup_rotations = true;
    const PiUnionResult pu = pi_union(4, 0.5, 64, po);
    const SymmetryReport s = symmetry_check(pu.cloud, 1e-8);
    r.max_error = std::max({s.conj_distance, s.rot_distance, s.neg_distance});
    r.pass = s.closed_conj && s.closed_rot && s.closed_neg;
    r.detail = "pi_4 at sigma 0.5: conj " + fmt("%.2g", s.conj_distance) + ", i* " + fmt("%.2g", s.rot_distance);
  }));

  out.push_back(timed("decay", [&](CheckResult& r) {
    r.pass = true;
    double worst = 0.0;
    for (int a = 0; a < 10; ++a) {
      for (int b = 0; b < 10; ++b) {
        const cplx lambda = std::polar(0.8 * (a + 1) / 10.0, 2.0 * std::numbers::pi * b / 10.0);
        const DecayReport d = decay_check(lambda, 0.5, 3);
        worst = std::max(worst, d.rate);
        if (!(d.rate < 1.0)) r.pass = false;
      }
    }
    const DecayReport outside = decay_check(cplx{1.2, 0.0}, 0.5, 3);
    if (!(outside.rate > 1.0)) r.pass = false;
    r.max_error = std::max(0.0, worst - 1.0);
    r.detail = "sigma 0.5, d 3: max rate " + fmt("%.4f", worst) + " on |lambda| <= 0.8, rate " +
               fmt("%.4f", outside.rate) + " at 1.2";
  }));

  return out;
}

nlohmann::json to_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back({{"check", r.check},
                   {"status", r.pass ? "pass" : "fail"},
                   {"max_error", r.max_error},
                   {"runtime_ms", std::round(r.runtime_ms * 1000.0) / 1000.0},
                   {"detail", r.detail}});
  }
  return {{"status", all ? "pass" : "fail"}, {"checks", arr}};
}

std::string to_table(const std::vector<CheckResult>& results) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-20s %-6s %12s %10s  %s\n", "check", "status", "max_error", "ms", "detail");
  out += line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-20s %-6s %12.3g %10.1f  %s\n", r.check.c_str(), r.pass ? "PASS" : "FAIL",
                  r.max_error, r.runtime_ms, r.detail.c_str());
    out += line;
  }
  return out;
}

}  // namespace hopsign::tools
