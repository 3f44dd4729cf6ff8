#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "rdlab/matrix.hpp"
#include "rdlab/types.hpp"

namespace oracle {

using rdlab::ComplexMatrix4;
using rdlab::cplx;
using rdlab::Vec3;

inline constexpr double pi = 3.14159265358979323846;

// Dirac matrices written out entry by entry.
inline ComplexMatrix4 from_rows(const std::array<std::array<cplx, 4>, 4>& rows) {
  ComplexMatrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rows[r][c];
  return m;
}

inline ComplexMatrix4 beta() {
  return from_rows({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}});
}

inline ComplexMatrix4 alpha(int k) {
  const cplx i(0, 1);
  if (k == 0) return from_rows({{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}});
  if (k == 1) return from_rows({{{0, 0, 0, -i}, {0, 0, i, 0}, {0, -i, 0, 0}, {i, 0, 0, 0}}});
  return from_rows({{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}}});
}

inline ComplexMatrix4 gamma(int mu) { return mu == 0 ? beta() : beta() * alpha(mu - 1); }

inline ComplexMatrix4 gamma5() {
  return from_rows({{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}});
}

inline ComplexMatrix4 sigma_cap(int k) { return gamma5() * alpha(k); }

inline ComplexMatrix4 alpha_dot(const Vec3& v) {
  return rdlab::cplx(v.x) * alpha(0) + rdlab::cplx(v.y) * alpha(1) + rdlab::cplx(v.z) * alpha(2);
}

// exp(A) by a scaled Taylor series with repeated squaring.
inline ComplexMatrix4 expm(ComplexMatrix4 a) {
  int squarings = 0;
  while (a.max_abs() > 0.25) {
    a = cplx(0.5) * a;
    ++squarings;
  }
  ComplexMatrix4 term = ComplexMatrix4::identity(), sum = ComplexMatrix4::identity();
  for (int n = 1; n < 30; ++n) {
    term = cplx(1.0 / n) * (term * a);
    sum = sum + term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0);
  w.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2 / ((1 - z * z) * dp * dp);
  }
}

// (1/8 pi) int d^3s e^{-m s}/s d_k g(x - s) for g(y) = exp(-|y|^2 / (2 w^2)),
// in spherical coordinates about x.
inline double yukawa_tail_gaussian(const Vec3& x, int k, double m, double width) {
  std::vector<double> cx, cw;
  gauss_legendre(24, cx, cw);
  const int nphi = 48, nr = 240;
  const double rmax = 30.0 / m, h = rmax / nr;
  double total = 0;
  for (int ir = 0; ir <= nr; ++ir) {
    const double s = ir * h;
    const double simpson = (ir == 0 || ir == nr) ? 1 : (ir % 2 ? 4 : 2);
    double ang = 0;
    for (std::size_t ic = 0; ic < cx.size(); ++ic) {
      const double ct = cx[ic], st = std::sqrt(1 - ct * ct);
      for (int ip = 0; ip < nphi; ++ip) {
        const double ph = 2 * pi * ip / nphi;
        const Vec3 y{x.x - s * st * std::cos(ph), x.y - s * st * std::sin(ph), x.z - s * ct};
        const double g = std::exp(-rdlab::dot(y, y) / (2 * width * width));
        ang += cw[ic] * (2 * pi / nphi) * (-y[k] / (width * width)) * g;
      }
    }
    total += simpson * h / 3 * s * std::exp(-m * s) * ang;
  }
  return total / (8 * pi);
}

// int d^3p / (2 pi)^3 e^{-i p.a} e^{-eps p^2} as a radial integral,
// (1 / 2 pi^2) int p^2 sinc(p a) e^{-eps p^2} dp, by composite Simpson.
inline double radial_locality(double a, double eps) {
  const double pmax = std::sqrt(60.0 / eps);
  const int n = 20000;
  const double h = pmax / n;
  double sum = 0;
  for (int i = 0; i <= n; ++i) {
    const double p = i * h;
    const double sinc = p * a == 0 ? 1.0 : std::sin(p * a) / (p * a);
    const double wgt = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += wgt * p * p * sinc * std::exp(-eps * p * p);
  }
  return sum * h / 3 / (2 * pi * pi);
}

}  // namespace oracle
