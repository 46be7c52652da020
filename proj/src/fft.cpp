#include "cshl/fft.hpp"

#include <fftw3.h>

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cshl::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  fftw_plan handle = nullptr;
  Plan() = default;
  explicit Plan(fftw_plan p) : handle(p) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  Plan(Plan&& o) noexcept : handle(o.handle) { o.handle = nullptr; }
  ~Plan() {
    if (handle) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(handle);
    }
  }
};

// Key: {nt, n, direction}; nt == 0 marks a 2-D plan.
using Key = std::array<int, 3>;

fftw_plan lookup(int nt, int n, int sign) {
  thread_local std::map<Key, Plan> cache;
  const Key key{nt, n, sign};
  if (auto it = cache.find(key); it != cache.end()) return it->second.handle;

  std::lock_guard lock(planner_mutex());
  const std::size_t count = static_cast<std::size_t>(nt == 0 ? 1 : nt) * n * n;
  fftw_complex* scratch = fftw_alloc_complex(count);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = nt == 0 ? fftw_plan_dft_2d(n, n, scratch, scratch, sign, flags)
                        : fftw_plan_dft_3d(nt, n, n, scratch, scratch, sign, flags);
  fftw_free(scratch);
  if (!p) throw std::runtime_error("fftw planning failed");
  return cache.emplace(key, Plan(p)).first->second.handle;
}

void execute(fftw_plan p, std::span<cplx> data) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

void check_size(std::span<cplx> data, std::size_t expected) {
  if (data.size() != expected) throw std::invalid_argument("fft: buffer size mismatch");
}

}  // namespace

void forward_2d(int n, std::span<cplx> data) {
  const std::size_t total = static_cast<std::size_t>(n) * n;
  check_size(data, total);
  execute(lookup(0, n, FFTW_FORWARD), data);
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& v : data) v *= scale;
}

void inverse_2d(int n, std::span<cplx> data) {
  check_size(data, static_cast<std::size_t>(n) * n);
  execute(lookup(0, n, FFTW_BACKWARD), data);
}

void forward_3d(int nt, int n, std::span<cplx> data) {
  const std::size_t total = static_cast<std::size_t>(nt) * n * n;
  check_size(data, total);
  execute(lookup(nt, n, FFTW_FORWARD), data);
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& v : data) v *= scale;
}

void inverse_3d(int nt, int n, std::span<cplx> data) {
  check_size(data, static_cast<std::size_t>(nt) * n * n);
  execute(lookup(nt, n, FFTW_BACKWARD), data);
}

}  // namespace cshl::fft
