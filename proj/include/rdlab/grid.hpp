#pragma once

#include <cstddef>
#include <mutex>
#include <span>

#include "rdlab/types.hpp"

namespace rdlab {

/// Dual Cartesian grids. Momentum nodes p_j = -p_max + j dp, dp = 2 p_max / n;
/// coordinate nodes x_j = -L/2 + j dx, dx = pi / p_max, L = n dx. Axis 0 is
/// the slowest index.
struct Grid {
  int n = 64;
  double pmax = 4.0;

  Grid() = default;
  Grid(int n_, double pmax_);

  double dp() const { return 2.0 * pmax / n; }
  double dx() const { return kPi / pmax; }
  double length() const { return n * dx(); }
  double p(int j) const { return -pmax + j * dp(); }
  double x(int j) const { return -0.5 * length() + j * dx(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t index(int i, int j, int k) const { return (static_cast<std::size_t>(i) * n + j) * n + k; }
  void unravel(std::size_t idx, int& i, int& j, int& k) const {
    k = static_cast<int>(idx % n);
    j = static_cast<int>((idx / n) % n);
    i = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
  }
  Vec3 momentum(std::size_t idx) const {
    int i, j, k;
    unravel(idx, i, j, k);
    return {p(i), p(j), p(k)};
  }
  Vec3 position(std::size_t idx) const {
    int i, j, k;
    unravel(idx, i, j, k);
    return {x(i), x(j), x(k)};
  }
  /// True when any of the three indices lies in the outermost `width` nodes.
  bool in_boundary_shell(std::size_t idx, int width = 2) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Unitary transforms between the dual grids for a dense array of n^dims
/// values (dims = 1, 2 or 3, row-major):
///   coordinate: f(x) = (2 pi)^{-dims/2} dp^dims sum_p e^{i p.x} g(p)
///   momentum:   g(p) = (2 pi)^{-dims/2} dx^dims sum_x e^{-i p.x} f(x)
void fft_to_coordinate(std::span<cplx> data, const Grid& grid, int dims = 3);
void fft_to_momentum(std::span<cplx> data, const Grid& grid, int dims = 3);

/// Generic 1-D transform along one axis of an n^3 array (same conventions).
void fft_axis_to_coordinate(std::span<cplx> data, const Grid& grid, int axis);
void fft_axis_to_momentum(std::span<cplx> data, const Grid& grid, int axis);

/// FFTW planning is not thread-safe; every planner call takes this lock.
std::mutex& fftw_planner_mutex();

}  // namespace rdlab
