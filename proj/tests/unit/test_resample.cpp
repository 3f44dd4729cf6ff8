#include <doctest.h>

#include <vector>

#include "rdlab/grid.hpp"
#include "rdlab/resample.hpp"

using namespace rdlab;

namespace {

const Grid kGrid(32, 4.0);

constexpr double kWidth = 1.5;

// Momentum samples of a coordinate Gaussian of width kWidth centred at c.
cplx spectrum(const Vec3& q, const Vec3& c) {
  return std::exp(-0.5 * kWidth * kWidth * dot(q, q)) * std::exp(cplx(0, -dot(q, c)));
}

double coordinate_gaussian(const Vec3& d) {
  return std::exp(-dot(d, d) / (2 * kWidth * kWidth)) / std::pow(kWidth, 3);
}

std::vector<cplx> sampled(const Vec3& c) {
  std::vector<cplx> f(kGrid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = spectrum(kGrid.momentum(i), c);
  return f;
}

}  // namespace

TEST_CASE("line resampling reproduces the nodes and shifted samples") {
  const Vec3 c{0.5, -1.0, 2.0};
  std::vector<cplx> f = sampled(c);
  const auto orig = f;
  resample_momentum_lines(f, kGrid, 2, [](const Vec3& q) { return q.z; });
  double e = 0;
  for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - orig[i]));
  CHECK(e < 1e-12);

  f = orig;
  resample_momentum_lines(f, kGrid, 2, [](const Vec3& q) { return 1.1 * q.z + 0.13; });
  e = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Vec3 q = kGrid.momentum(i);
    const double s = 1.1 * q.z + 0.13;
    q.z = s;
    const cplx expect = (s >= -kGrid.pmax && s < kGrid.pmax) ? spectrum(q, c) : cplx(0);
    e = std::max(e, std::abs(f[i] - expect));
  }
  CHECK(e < 1e-7);
}

TEST_CASE("shear rotation of a displaced Gaussian") {
  const Vec3 c{1.5, -0.5, 0.7};
  for (double angle : {0.0, 0.7, -2.0}) {
    std::vector<cplx> f = sampled(c);
    rotate_scalar(f, kGrid, 2, angle, true);
    const Vec3 rc{std::cos(angle) * c.x - std::sin(angle) * c.y, std::sin(angle) * c.x + std::cos(angle) * c.y, c.z};
    double e = 0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - spectrum(kGrid.momentum(i), rc)));
    CHECK(e < 5e-6);
  }
  // Coordinate-space rotation of the coordinate Gaussian.
  std::vector<cplx> g(kGrid.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = coordinate_gaussian(kGrid.position(i) - c);
  }
  rotate_scalar(g, kGrid, 0, 1.2, false);
  const Vec3 rc{c.x, std::cos(1.2) * c.y - std::sin(1.2) * c.z, std::sin(1.2) * c.y + std::cos(1.2) * c.z};
  double e = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    e = std::max(e, std::abs(g[i] - coordinate_gaussian(kGrid.position(i) - rc)));
  }
  CHECK(e < 1e-6);
}

TEST_CASE("coordinate plane at an off-grid coordinate") {
  const Vec3 c{0.3, 0.0, -0.4};
  const std::vector<cplx> f = sampled(c);
  const double x1 = 0.37;
  const auto plane = coordinate_plane(f, kGrid, 1, x1);
  REQUIRE(plane.size() == static_cast<std::size_t>(kGrid.n * kGrid.n));
  double e = 0;
  for (int a = 0; a < kGrid.n; ++a)
    for (int b = 0; b < kGrid.n; ++b) {
      const Vec3 d = Vec3{kGrid.x(a), x1, kGrid.x(b)} - c;
      e = std::max(e, std::abs(plane[a * kGrid.n + b] - coordinate_gaussian(d)));
    }
  CHECK(e < 1e-8);
}
