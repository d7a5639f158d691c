#include "madelab/core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

namespace madelab::fft {

namespace {

// The FFTW planner is not re-entrant; execution with new arrays is.
std::mutex planner_mutex;

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

Plan make_plan(int dims, int n0, int n1, int sign) {
  std::lock_guard lock(planner_mutex);
  const std::size_t total = static_cast<std::size_t>(n0) * n1;
  fftw_complex* scratch = fftw_alloc_complex(total);
  fftw_plan p = dims == 1
                    ? fftw_plan_dft_1d(n0, scratch, scratch, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED)
                    : fftw_plan_dft_2d(n0, n1, scratch, scratch, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  return Plan(p);
}

fftw_plan_s* cached_plan(const GridSpec& grid, int sign) {
  using Key = std::tuple<int, int, int, int>;
  thread_local std::map<Key, Plan> cache;
  const Key key{grid.dims(), grid.points(0), grid.points(1), sign};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache
             .emplace(key, make_plan(grid.dims(), grid.points(0),
                                     grid.points(1), sign))
             .first;
  return it->second.get();
}

void run(const GridSpec& grid, std::span<cplx> data, int sign) {
  if (data.size() != grid.size())
    throw InvalidArgument("fft: buffer does not match grid");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cached_plan(grid, sign), buf, buf);
}

}  // namespace

void forward(const GridSpec& grid, std::span<cplx> data) {
  run(grid, data, FFTW_FORWARD);
}

void backward(const GridSpec& grid, std::span<cplx> data) {
  run(grid, data, FFTW_BACKWARD);
}

std::vector<double> wavenumbers(const GridSpec& grid, int axis) {
  const int n = grid.points(axis);
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / grid.extent(axis);
  for (int m = 0; m < n; ++m) k[m] = base * frequency_index(m, n);
  return k;
}

}  // namespace madelab::fft
