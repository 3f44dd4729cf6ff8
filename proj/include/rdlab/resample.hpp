#pragma once

#include <functional>
#include <span>

#include "rdlab/grid.hpp"

namespace rdlab {

/// Momentum-space line resampling. For every node q' of the output, the input
/// is evaluated at q' with component `axis` replaced by source(q'), using the
/// exact trigonometric interpolant of each line (the coordinate-space
/// representation along `axis`). Sources outside [-p_max, p_max) give 0.
/// `data` holds one n^3 scalar array; the result overwrites it.
void resample_momentum_lines(std::span<cplx> data, const Grid& grid, int axis,
                             const std::function<double(const Vec3&)>& source);

/// Rotation of a scalar n^3 array about coordinate axis `axis` by `angle`
/// (active, right-handed): out(v) = in(R^{-1} v). Three Fourier shears per
/// quarter turn. `momentum_space` selects which grid the array lives on.
void rotate_scalar(std::span<cplx> data, const Grid& grid, int axis, double angle, bool momentum_space);

/// Evaluates, for every transverse node of the plane orthogonal to `axis`, the
/// band-limited function whose momentum samples are `spectrum` at coordinate
/// value `x_axis` along `axis`. Returns the n^2 plane on the coordinate grid,
/// row-major over the two remaining axes in increasing order.
std::vector<cplx> coordinate_plane(std::span<const cplx> spectrum, const Grid& grid, int axis, double x_axis);

}  // namespace rdlab
