#include <doctest.h>

#include "rdlab/fields.hpp"
#include "rdlab/lorentz.hpp"
#include "rdlab/spinors.hpp"

using namespace rdlab;

namespace {

const Grid kGrid(48, 3.25);

PacketSpec spec(Vec3 p0 = {0, 0, 0.5}, cplx wp = 1.0, cplx wa = 0.0) {
  PacketSpec s;
  s.p0 = p0;
  s.x0 = {0.5, -0.25, 1.0};
  s.sigma = 2.5;
  s.weight_particle = wp;
  s.weight_antiparticle = wa;
  return s;
}

cplx overlap(const MomentumField& a, const MomentumField& b) {
  cplx s = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += std::conj(a.data[i]) * b.data[i];
  return s * std::pow(a.grid.dp(), 3);
}

}  // namespace

TEST_CASE("packet is normalized with mean momentum p0") {
  const Vec3 p0{0.2, -0.3, 0.5};
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec(p0));
  CHECK(total_probability(f) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(total_probability(to_coordinate(f)) == doctest::Approx(1.0).epsilon(1e-13));
  // |phi|^2 is the bare Gaussian envelope: (m/E) |psi_+|^2 = 1.
  Vec3 mean{};
  for (std::size_t i = 0; i < f.nodes(); ++i) mean = mean + norm2(f.at(i)) * std::pow(kGrid.dp(), 3) * kGrid.momentum(i);
  for (int k = 0; k < 3; ++k) CHECK(mean[k] == doctest::Approx(p0[k]).epsilon(1e-9));
  CHECK(boundary_ratio(f) < 1e-8);
}

TEST_CASE("packet hygiene rejects a packet that touches the box") {
  PacketSpec s = spec();
  s.sigma = 0.5;
  CHECK_THROWS_AS(gaussian_packet(kGrid, 1.0, s), Error);
}

TEST_CASE("packet envelope has the closed form") {
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec());
  const std::size_t i = kGrid.index(17, 15, 18);
  const Vec3 q = kGrid.momentum(i), d = q - Vec3{0, 0, 0.5};
  const double e = mass_shell_energy(1.0, q);
  const double n = std::pow(2.5 * 2.5 / kPi, 0.75);
  const cplx env = n * std::exp(-dot(d, d) * 2.5 * 2.5 / 2) * std::exp(cplx(0, -dot(q, Vec3{0.5, -0.25, 1.0})));
  const Spinor expect = cplx(std::sqrt(1.0 / e)) * env * particle_spinor(q, Spin::Up, 1.0).v;
  CHECK(std::sqrt(norm2(f.at(i) - expect)) < 1e-12);
}

TEST_CASE("Dirac evolution is a unitary group with the expected overlap") {
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec({0, 0, 0.5}, 1.0, 0.6));
  const MomentumField a = evolve_dirac(evolve_dirac(f, 0.7), 1.1), b = evolve_dirac(f, 1.8);
  double e = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) e = std::max(e, std::abs(a.data[i] - b.data[i]));
  CHECK(e < 1e-13);
  CHECK(total_probability(b) == doctest::Approx(total_probability(f)).epsilon(1e-13));

  const MomentumField p = gaussian_packet(kGrid, 1.0, spec());
  const double t = 2.3;
  cplx expect = 0;
  for (std::size_t i = 0; i < p.nodes(); ++i)
    expect += norm2(p.at(i)) * std::exp(cplx(0, -mass_shell_energy(1.0, kGrid.momentum(i)) * t));
  expect *= std::pow(kGrid.dp(), 3);
  CHECK(std::abs(overlap(p, evolve_dirac(p, t)) - expect) < 1e-12);
}

TEST_CASE("FW transform round trip, purity and evolution") {
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec());
  const MomentumField u = to_fw(f);
  CHECK(u.rep == Representation::FW);
  double lower = 0;
  for (std::size_t i = 2 * u.nodes(); i < u.data.size(); ++i) lower = std::max(lower, std::abs(u.data[i]));
  CHECK(lower < 1e-14);
  const MomentumField back = to_dirac(u);
  double e = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i) e = std::max(e, std::abs(back.data[i] - f.data[i]));
  CHECK(e < 1e-14);
  const MomentumField a = to_fw(evolve_dirac(f, 1.5)), b = evolve_fw(u, 1.5);
  e = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) e = std::max(e, std::abs(a.data[i] - b.data[i]));
  CHECK(e < 1e-13);
  CHECK_THROWS_AS(evolve_dirac(u, 1.0), Error);
  CHECK_THROWS_AS(evolve_fw(f, 1.0), Error);
}

TEST_CASE("particle projection removes the antiparticle part") {
  const MomentumField mixed = gaussian_packet(kGrid, 1.0, spec({0, 0, 0}, 1.0, 1.0));
  const MomentumField pure = gaussian_packet(kGrid, 1.0, spec({0, 0, 0}, 1.0, 0.0));
  const MomentumField p = project_particle(mixed);
  CHECK(total_probability(p) == doctest::Approx(0.5).epsilon(1e-12));
  double e = 0;
  for (std::size_t i = 0; i < p.data.size(); ++i)
    e = std::max(e, std::abs(p.data[i] - pure.data[i] / std::sqrt(2.0)));
  CHECK(e < 1e-13);
}

TEST_CASE("Dirac continuity residual converges at second order") {
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec());
  const auto r1 = continuity_residual(Representation::Dirac, f, 1.0, 0.04);
  const auto r2 = continuity_residual(Representation::Dirac, f, 1.0, 0.02);
  CHECK(r1.residual / r2.residual == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("FW longitudinal current satisfies its defining equation") {
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec());
  const auto fw = continuity_residual(Representation::FW, f, 1.0, 0.01);
  const auto d = continuity_residual(Representation::Dirac, f, 1.0, 0.01);
  CHECK(fw.residual < 1e-7 * fw.dt_rho_norm);
  CHECK(fw.nonlocality > d.nonlocality);
}

TEST_CASE("dominant frequency of a sampled sinusoid with drift") {
  std::vector<double> s;
  const double dt = 0.1;
  for (int i = 0; i < 128; ++i) s.push_back(0.3 * std::sin(2.3 * i * dt + 0.4) + 0.5 * i * dt + 1.0);
  CHECK(dominant_frequency(s, dt) == doctest::Approx(2.3).epsilon(0.01));
}

TEST_CASE("pure packet drifts at <p/E> without trembling") {
  const MomentumField f = gaussian_packet(kGrid, 1.0, spec());
  const auto r = zitterbewegung_experiment(f, 4.0, 16);
  CHECK(r.slope_x_hat.z == doctest::Approx(r.mean_p_over_e.z).epsilon(1e-6));
  CHECK(r.slope_x_p.z == doctest::Approx(r.mean_p_over_e.z).epsilon(1e-6));
}
