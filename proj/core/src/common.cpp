#include "hopsign/error.hpp"
#include "hopsign/parallel.hpp"

namespace hopsign {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_amplitude: return "invalid-amplitude";
    case ErrorCode::out_of_domain: return "out-of-domain";
    case ErrorCode::parameter_out_of_range: return "parameter-out-of-range";
    case ErrorCode::ceiling_exceeded: return "ceiling-exceeded";
    case ErrorCode::solver_failure: return "solver-failure";
    case ErrorCode::io_failure: return "io-failure";
  }
  return "unknown";
}

namespace {
std::atomic<unsigned> g_workers{0};
}

void set_worker_count(unsigned n) noexcept { g_workers = n; }

unsigned worker_count() noexcept {
  const unsigned n = g_workers.load();
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace hopsign
