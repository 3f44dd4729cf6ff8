#include <doctest.h>

#include "../support/oracles.hpp"
#include "rdlab/clifford.hpp"

using namespace rdlab;

TEST_CASE("Dirac matrices match the written-out representation") {
  const DiracSet& d = dirac_set();
  CHECK(d.beta == oracle::beta());
  CHECK(d.gamma5 == oracle::gamma5());
  for (int k = 0; k < 3; ++k) {
    CHECK(d.alpha[k] == oracle::alpha(k));
    CHECK(d.sigma_cap[k] == oracle::sigma_cap(k));
  }
  for (int mu = 0; mu < 4; ++mu) CHECK(d.gamma[mu] == oracle::gamma(mu));
}

TEST_CASE("Clifford relations hold exactly") {
  const ComplexMatrix4 id = ComplexMatrix4::identity();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const ComplexMatrix4 ac = oracle::gamma(mu) * oracle::gamma(nu) + oracle::gamma(nu) * oracle::gamma(mu);
      CHECK(anticommutator(dirac_set().gamma[mu], dirac_set().gamma[nu]) == ac);
      CHECK(ac == cplx(2 * metric(mu, nu)) * id);
    }
}

TEST_CASE("algebra suite covers all 16 anticommutators and passes") {
  const auto checks = check_dirac_algebra(dirac_set());
  int gamma_pairs = 0;
  for (const auto& c : checks) {
    CHECK_MESSAGE(c.passed, c.name);
    CHECK(c.deviation == 0.0);
    if (c.name.rfind("{gamma", 0) == 0 && c.name.find("gamma5") == std::string::npos) ++gamma_pairs;
  }
  CHECK(gamma_pairs == 16);
}

TEST_CASE("algebra suite detects a corrupted matrix") {
  DiracSet bad = dirac_set();
  bad.gamma[1](0, 2) += 1.0;
  int failures = 0;
  for (const auto& c : check_dirac_algebra(bad)) failures += c.passed ? 0 : 1;
  CHECK(failures > 0);
}

TEST_CASE("pauli rejects bad index") {
  CHECK_THROWS_AS(pauli(0), Error);
  CHECK_THROWS_AS(pauli(4), Error);
}

TEST_CASE("alpha_dot and sigma_dot are linear in the vector") {
  const Vec3 v{0.3, -1.2, 2.5};
  CHECK(distance(alpha_dot(v), oracle::alpha_dot(v)) < 1e-15);
  const ComplexMatrix4 s = cplx(v.x) * oracle::sigma_cap(0) + cplx(v.y) * oracle::sigma_cap(1) +
                           cplx(v.z) * oracle::sigma_cap(2);
  CHECK(distance(sigma_dot(v), s) < 1e-15);
}
