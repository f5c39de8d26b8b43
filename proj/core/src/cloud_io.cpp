#include "hopsign/cloud_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "hopsign/error.hpp"

#ifndef HOPSIGN_VERSION
#define HOPSIGN_VERSION "unknown"
#endif

namespace hopsign {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, long line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::io_failure, "bad number '" + s + "' in CSV", line_no);
}

std::uint64_t parse_u64(const std::string& s, long line_no) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::io_failure, "bad integer '" + s + "' in CSV", line_no);
}

constexpr const char* kHeader = "re,im,N,word_id,alpha_re,alpha_im";

}  // namespace

const char* artifact_version() noexcept { return "hopsign " HOPSIGN_VERSION; }

void write_csv(std::ostream& out, const SpectrumCloud& cloud) {
  out << "# version: " << artifact_version() << '\n';
  out << "# sigma: " << fmt_double(cloud.sigma()) << '\n';
  if (cloud.seed()) out << "# seed: " << *cloud.seed() << '\n';
  for (const auto& [k, v] : cloud.params()) out << "# param " << k << ": " << v << '\n';
  out << kHeader << '\n';
  std::string row;
  for (const auto& p : cloud.points()) {
    row.clear();
    row += fmt_double(p.z.real());
    row += ',';
    row += fmt_double(p.z.imag());
    row += ',';
    row += std::to_string(p.n);
    row += ',';
    row += std::to_string(p.word_id);
    row += ',';
    row += fmt_double(p.alpha.real());
    row += ',';
    row += fmt_double(p.alpha.imag());
    row += '\n';
    out << row;
  }
  if (!out) throw Error(ErrorCode::io_failure, "failed writing CSV");
}

void write_csv(const std::string& path, const SpectrumCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot open " + path + " for writing");
  write_csv(out, cloud);
  out.close();
  if (!out) throw Error(ErrorCode::io_failure, "failed writing " + path);
}

SpectrumCloud read_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  double sigma = 1.0;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> params;
  bool header_seen = false;
  std::vector<CloudPoint> points;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "sigma") {
        sigma = parse_double(value, line_no);
      } else if (key == "seed") {
        seed = parse_u64(value, line_no);
      } else if (key.rfind("param ", 0) == 0) {
        params.emplace_back(key.substr(6), value);
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) throw Error(ErrorCode::io_failure, "unexpected CSV header: " + line, line_no);
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw Error(ErrorCode::io_failure, "CSV row needs 6 fields", line_no);
    points.push_back({cplx{parse_double(f[0], line_no), parse_double(f[1], line_no)},
                      static_cast<std::uint32_t>(parse_u64(f[2], line_no)), parse_u64(f[3], line_no),
                      cplx{parse_double(f[4], line_no), parse_double(f[5], line_no)}});
  }
  if (!header_seen) throw Error(ErrorCode::io_failure, "CSV has no header row");

  SpectrumCloud cloud(sigma);
  if (seed) cloud.set_seed(*seed);
  for (const auto& [k, v] : params) cloud.set_param(k, v);
  cloud.points().reserve(points.size());
  for (const auto& p : points) cloud.add(p);
  return cloud;
}

SpectrumCloud read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path);
  return read_csv(in);
}

}  // namespace hopsign
