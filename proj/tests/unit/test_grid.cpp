#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "rdlab/grid.hpp"
#include "rdlab/parallel.hpp"

using namespace rdlab;

TEST_CASE("grid geometry") {
  const Grid g(32, 4.0);
  CHECK(g.dp() == doctest::Approx(0.25));
  CHECK(g.dx() == doctest::Approx(kPi / 4));
  CHECK(g.p(0) == -4.0);
  CHECK(g.x(16) == doctest::Approx(0.0));
  int i, j, k;
  g.unravel(g.index(3, 5, 7), i, j, k);
  CHECK((i == 3 && j == 5 && k == 7));
  CHECK(g.in_boundary_shell(g.index(1, 10, 10)));
  CHECK_FALSE(g.in_boundary_shell(g.index(2, 10, 29)));
  CHECK_THROWS_AS(Grid(30, 4.0), Error);
  CHECK_THROWS_AS(Grid(32, -1.0), Error);
}

TEST_CASE("Gaussian transforms to the analytic Gaussian") {
  const Grid g(32, 4.0);
  std::vector<cplx> f(g.size());
  const Vec3 x0{0.5, -1.0, 0.25};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec3 d = g.position(i) - x0;
    f[i] = std::exp(-dot(d, d) / (2 * 1.5 * 1.5));
  }
  fft_to_momentum(f, g);
  double err = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec3 p = g.momentum(i);
    const cplx exact = std::pow(1.5, 3) * std::exp(-1.5 * 1.5 * dot(p, p) / 2) * std::exp(cplx(0, -dot(p, x0)));
    err = std::max(err, std::abs(f[i] - exact));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("round trip and Parseval") {
  const Grid g(16, 2.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::vector<cplx> f(g.size()), orig;
  for (auto& v : f) v = cplx(n(rng), n(rng));
  orig = f;
  double sx = 0, sp = 0;
  for (auto& v : f) sp += std::norm(v);
  fft_to_coordinate(f, g);
  for (auto& v : f) sx += std::norm(v);
  CHECK(sx * std::pow(g.dx(), 3) == doctest::Approx(sp * std::pow(g.dp(), 3)).epsilon(1e-12));
  fft_to_momentum(f, g);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f[i] - orig[i]) < 1e-12);

  for (int axis = 0; axis < 3; ++axis) {
    std::vector<cplx> a = orig;
    fft_axis_to_coordinate(a, g, axis);
    fft_axis_to_momentum(a, g, axis);
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - orig[i]));
    CHECK(e < 1e-12);
  }
  std::vector<cplx> all = orig, seq = orig;
  fft_to_coordinate(all, g);
  for (int axis = 0; axis < 3; ++axis) fft_axis_to_coordinate(seq, g, axis);
  double e = 0;
  for (std::size_t i = 0; i < all.size(); ++i) e = std::max(e, std::abs(all[i] - seq[i]));
  CHECK(e < 1e-12);
}

TEST_CASE("parallel_for covers the range once and honours RDLAB_THREADS") {
  setenv("RDLAB_THREADS", "3", 1);
  CHECK(thread_count() == 3u);
  std::vector<int> hits(5000, 0);
  parallel_for(0, hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(0, 4096, [](std::size_t i) {
    if (i == 4000) throw std::runtime_error("boom");
  }));
  unsetenv("RDLAB_THREADS");
  CHECK(thread_count() >= 1u);
}
