#include <doctest.h>

#include <random>

#include "rdlab/lorentz.hpp"

using namespace rdlab;

TEST_CASE("boost along z maps the rest momentum to (m cosh, m sinh)") {
  const double chi = 0.8, m = 1.3;
  const FourVector p = boost({0, 0, chi}) * FourVector(m, 0, 0, 0);
  CHECK(p[0] == doctest::Approx(m * std::cosh(chi)).epsilon(1e-15));
  CHECK(p[3] == doctest::Approx(m * std::sinh(chi)).epsilon(1e-15));
  CHECK(std::abs(p[1]) < 1e-15);
}

TEST_CASE("random transforms are proper orthochronous with exact inverses") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    LorentzTransform t;
    t.factors.push_back(LorentzFactor::make_boost({3 * u(rng), 2 * u(rng), u(rng)}));
    Vec3 n{u(rng), u(rng), u(rng) + 1.5};
    t.factors.push_back(LorentzFactor::make_rotation((1.0 / norm(n)) * n, 3 * u(rng)));
    const LorentzMatrix l = t.matrix();
    const double scale = l(0, 0) * l(0, 0);
    CHECK(l.pseudo_orthogonality_defect() < 1e-13 * scale);
    CHECK(l.is_proper_orthochronous());
    CHECK((l * t.inverse().matrix()).max_abs_diff(LorentzMatrix::identity()) < 1e-13 * scale);
    CHECK(l.determinant() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("Minkowski product is invariant") {
  const FourVector a(2.0, 0.3, -0.4, 1.1), b(1.5, -0.2, 0.7, 0.1);
  const LorentzMatrix l = boost({0.4, -0.9, 0.2}) * rotation({std::sqrt(0.5), std::sqrt(0.5), 0}, 0.6);
  CHECK(minkowski(l * a, l * b) == doctest::Approx(minkowski(a, b)).epsilon(1e-13));
  CHECK(minkowski(a, b) == doctest::Approx(2.0 * 1.5 - (0.3 * -0.2 + -0.4 * 0.7 + 1.1 * 0.1)));
}

TEST_CASE("standard boost and Wigner rotation") {
  const double m = 0.7;
  const Vec3 p{0.4, -1.0, 2.2};
  const FourVector k = standard_boost(p, m) * FourVector(m, 0, 0, 0);
  CHECK(k[0] == doctest::Approx(mass_shell_energy(m, p)).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) CHECK(k[i + 1] == doctest::Approx(p[i]).epsilon(1e-14));
  const LorentzMatrix w = wigner_rotation(boost({0.9, 0.1, -0.3}), p, m);
  CHECK(w.is_pure_rotation(1e-12));
  // Collinear boosts induce no Wigner rotation.
  CHECK(wigner_rotation(boost({0, 0, 0.5}), {0, 0, 1.0}, m).max_abs_diff(LorentzMatrix::identity()) < 1e-13);
}

TEST_CASE("rotation axis-angle round trip") {
  const Vec3 n = (1.0 / std::sqrt(14.0)) * Vec3{1, 2, 3};
  const AxisAngle aa = rotation_axis_angle(rotation(n, 1.1));
  CHECK(aa.angle == doctest::Approx(1.1).epsilon(1e-13));
  for (int k = 0; k < 3; ++k) CHECK(aa.axis[k] == doctest::Approx(n[k]).epsilon(1e-12));
}

TEST_CASE("mass shell rejects non-positive mass") {
  CHECK_THROWS_AS(mass_shell_energy(0.0, {1, 0, 0}), Error);
  CHECK(measure_weight({0, 0, 0}, 2.0) == doctest::Approx(1.0 / std::pow(2 * 3.14159265358979323846, 3)));
}
