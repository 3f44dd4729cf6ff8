#include "rdlab/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace rdlab {

Grid::Grid(int n_, double pmax_) : n(n_), pmax(pmax_) {
  require(n >= 4 && n % 4 == 0, ErrorCode::InvalidArgument, "grid: n must be a positive multiple of 4");
  require(pmax > 0 && std::isfinite(pmax), ErrorCode::InvalidArgument, "grid: pmax must be positive");
}

bool Grid::in_boundary_shell(std::size_t idx, int width) const {
  int i, j, k;
  unravel(idx, i, j, k);
  auto edge = [&](int a) { return a < width || a >= n - width; };
  return edge(i) || edge(j) || edge(k);
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

namespace {

struct PlanKey {
  int n, mode, sign;  // mode: 1..3 = full transform of that rank, 10+axis = one axis of n^3
  auto operator<=>(const PlanKey&) const = default;
};

fftw_plan get_plan(int n, int mode, int sign) {
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  const PlanKey key{n, mode, sign};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = nullptr;
  if (mode >= 1 && mode <= 3) {
    std::size_t total = 1;
    for (int d = 0; d < mode; ++d) total *= n;
    std::vector<fftw_complex> scratch(total);
    std::vector<int> dims(mode, n);
    plan = fftw_plan_dft(mode, dims.data(), scratch.data(), scratch.data(), sign, flags);
  } else {
    const int axis = mode - 10;
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    std::vector<fftw_complex> scratch(total);
    const int strides[3] = {n * n, n, 1};
    fftw_iodim dim{n, strides[axis], strides[axis]};
    fftw_iodim loops[2];
    int l = 0;
    for (int a = 0; a < 3; ++a)
      if (a != axis) loops[l++] = fftw_iodim{n, strides[a], strides[a]};
    plan = fftw_plan_guru_dft(1, &dim, 2, loops, scratch.data(), scratch.data(), sign, flags);
  }
  require(plan != nullptr, ErrorCode::Internal, "fftw planning failed");
  cache.emplace(key, plan);
  return plan;
}

void execute(fftw_plan plan, std::span<cplx> data) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

// Parity of the sum of the indices of flat position `idx` in an n^dims array.
inline int index_parity(std::size_t idx, int n, int dims) {
  int s = 0;
  for (int d = 0; d < dims; ++d) {
    s += static_cast<int>(idx % n);
    idx /= n;
  }
  return s & 1;
}

inline int axis_parity(std::size_t idx, int n, int axis) {
  const std::size_t strides[3] = {static_cast<std::size_t>(n) * n, static_cast<std::size_t>(n), 1};
  return static_cast<int>((idx / strides[axis]) % n) & 1;
}

void transform(std::span<cplx> data, const Grid& g, int dims, bool to_coord) {
  require(dims >= 1 && dims <= 3, ErrorCode::InvalidArgument, "fft: dims must be 1, 2 or 3");
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= g.n;
  require(data.size() == total, ErrorCode::InvalidArgument, "fft: array size does not match grid");

  // p_j x_l = n pi/2 - pi l - pi j + 2 pi j l / n per dimension.
  const double step = to_coord ? g.dp() : g.dx();
  const double scale = std::pow(step / std::sqrt(2.0 * kPi), dims);
  const double phase = (to_coord ? 1.0 : -1.0) * dims * g.n * kPi / 2.0;
  const cplx post = std::polar(scale, phase);

  for (std::size_t i = 0; i < total; ++i)
    if (index_parity(i, g.n, dims)) data[i] = -data[i];
  execute(get_plan(g.n, dims, to_coord ? FFTW_BACKWARD : FFTW_FORWARD), data);
  for (std::size_t i = 0; i < total; ++i) data[i] *= index_parity(i, g.n, dims) ? -post : post;
}

void transform_axis(std::span<cplx> data, const Grid& g, int axis, bool to_coord) {
  require(axis >= 0 && axis < 3, ErrorCode::InvalidArgument, "fft: axis must be 0, 1 or 2");
  require(data.size() == g.size(), ErrorCode::InvalidArgument, "fft: array size does not match grid");
  const double step = to_coord ? g.dp() : g.dx();
  const cplx post = std::polar(step / std::sqrt(2.0 * kPi), (to_coord ? 1.0 : -1.0) * g.n * kPi / 2.0);
  for (std::size_t i = 0; i < data.size(); ++i)
    if (axis_parity(i, g.n, axis)) data[i] = -data[i];
  execute(get_plan(g.n, 10 + axis, to_coord ? FFTW_BACKWARD : FFTW_FORWARD), data);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= axis_parity(i, g.n, axis) ? -post : post;
}

}  // namespace

void fft_to_coordinate(std::span<cplx> data, const Grid& grid, int dims) { transform(data, grid, dims, true); }
void fft_to_momentum(std::span<cplx> data, const Grid& grid, int dims) { transform(data, grid, dims, false); }
void fft_axis_to_coordinate(std::span<cplx> data, const Grid& grid, int axis) {
  transform_axis(data, grid, axis, true);
}
void fft_axis_to_momentum(std::span<cplx> data, const Grid& grid, int axis) {
  transform_axis(data, grid, axis, false);
}

}  // namespace rdlab
