#include "rdlab/resample.hpp"

#include <vector>

#include "rdlab/parallel.hpp"

namespace rdlab {

namespace {

std::size_t stride_of(const Grid& g, int axis) {
  const std::size_t n = g.n;
  return axis == 0 ? n * n : (axis == 1 ? n : 1);
}

// Base index of the line through transverse position `line` (0..n^2-1) along `axis`.
std::size_t line_base(const Grid& g, int axis, std::size_t line) {
  const std::size_t n = g.n;
  const std::size_t u = line / n, v = line % n;
  switch (axis) {
    case 0: return u * n + v;
    case 1: return u * n * n + v;
    default: return (u * n + v) * n;
  }
}

void shear(std::span<cplx> data, const Grid& g, int axis, int along, double factor, bool momentum_space) {
  // out(v) = in(v - factor * v_along * e_axis), a per-line translation done in the conjugate domain.
  const std::size_t n = g.n, s = stride_of(g, axis);
  if (momentum_space) {
    fft_axis_to_coordinate(data, g, axis);
  } else {
    fft_axis_to_momentum(data, g, axis);
  }
  parallel_for(0, n * n, [&](std::size_t line) {
    const std::size_t base = line_base(g, axis, line);
    int idx[3];
    g.unravel(base, idx[0], idx[1], idx[2]);
    const double coord = momentum_space ? g.p(idx[along]) : g.x(idx[along]);
    const double d = factor * coord;
    for (std::size_t j = 0; j < n; ++j) {
      const int jj = static_cast<int>(j);
      // momentum functions shift via e^{+i d x}; coordinate functions via e^{-i d p}
      const double phase = momentum_space ? d * g.x(jj) : -d * g.p(jj);
      data[base + j * s] *= std::polar(1.0, phase);
    }
  });
  if (momentum_space) {
    fft_axis_to_momentum(data, g, axis);
  } else {
    fft_axis_to_coordinate(data, g, axis);
  }
}

}  // namespace

void resample_momentum_lines(std::span<cplx> data, const Grid& grid, int axis,
                             const std::function<double(const Vec3&)>& source) {
  require(axis >= 0 && axis < 3, ErrorCode::InvalidArgument, "axis index must be 0, 1 or 2");
  require(data.size() == grid.size(), ErrorCode::InvalidArgument, "array does not match grid");
  const std::size_t n = grid.n, s = stride_of(grid, axis);
  std::vector<cplx> coord(data.begin(), data.end());
  fft_axis_to_coordinate(coord, grid, axis);
  const double norm = grid.dx() / std::sqrt(2 * kPi);
  const double lo = -grid.pmax, hi = grid.pmax;
  parallel_for(0, n * n, [&](std::size_t line) {
    const std::size_t base = line_base(grid, axis, line);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = base + k * s;
      const double q = source(grid.momentum(idx));
      if (!(q >= lo && q < hi)) {
        data[idx] = 0;
        continue;
      }
      // sum_j e^{-i q x_j} psi(x_j) with a rotating phasor
      const cplx step = std::polar(1.0, -q * grid.dx());
      cplx ph = std::polar(1.0, -q * grid.x(0));
      cplx acc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += ph * coord[base + j * s];
        ph *= step;
      }
      data[idx] = norm * acc;
    }
  });
}

void rotate_scalar(std::span<cplx> data, const Grid& grid, int axis, double angle, bool momentum_space) {
  require(axis >= 0 && axis < 3, ErrorCode::InvalidArgument, "axis index must be 0, 1 or 2");
  require(std::isfinite(angle), ErrorCode::InvalidArgument, "rotation angle must be finite");
  require(data.size() == grid.size(), ErrorCode::InvalidArgument, "array does not match grid");
  if (angle == 0.0) return;
  const int a = (axis + 1) % 3, b = (axis + 2) % 3;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(angle) / (0.5 * kPi))));
  const double theta = angle / steps;
  const double alpha = -std::tan(0.5 * theta), beta = std::sin(theta);
  for (int i = 0; i < steps; ++i) {
    shear(data, grid, a, b, alpha, momentum_space);
    shear(data, grid, b, a, beta, momentum_space);
    shear(data, grid, a, b, alpha, momentum_space);
  }
}

std::vector<cplx> coordinate_plane(std::span<const cplx> spectrum, const Grid& grid, int axis, double x_axis) {
  require(axis >= 0 && axis < 3, ErrorCode::InvalidArgument, "axis index must be 0, 1 or 2");
  require(spectrum.size() == grid.size(), ErrorCode::InvalidArgument, "array does not match grid");
  const std::size_t n = grid.n, s = stride_of(grid, axis);
  std::vector<cplx> phase(n);
  const double norm = grid.dp() / std::sqrt(2 * kPi);
  for (std::size_t j = 0; j < n; ++j) phase[j] = norm * std::polar(1.0, grid.p(static_cast<int>(j)) * x_axis);
  std::vector<cplx> plane(n * n);
  for (std::size_t line = 0; line < n * n; ++line) {
    const std::size_t base = line_base(grid, axis, line);
    cplx acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += phase[j] * spectrum[base + j * s];
    plane[line] = acc;
  }
  fft_to_coordinate(plane, grid, 2);
  return plane;
}

}  // namespace rdlab
