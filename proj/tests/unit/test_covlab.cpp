#include <doctest.h>

#include "rdlab/covlab.hpp"

using namespace rdlab;

namespace {

const Grid kGrid(48, 3.25);

MomentumField packet() {
  PacketSpec s;
  s.p0 = {0.5, 0, 0};
  s.sigma = 2.5;
  return gaussian_packet(kGrid, 1.0, s);
}

LorentzTransform boost_z(double chi) {
  LorentzTransform t;
  t.factors.push_back(LorentzFactor::make_boost({0, 0, chi}));
  return t;
}

}  // namespace

TEST_CASE("box probabilities and containing box") {
  const Grid g(16, 2.0);
  std::vector<double> rho(g.size(), 0.0);
  const std::size_t centre = g.index(8, 8, 8);
  rho[centre] = 1.0 / std::pow(g.dx(), 3);
  const BoxRegion box = containing_box(g, rho, 0.99);
  CHECK(box.contains(g.position(centre)));
  CHECK(box_probability(g, rho, box) == doctest::Approx(1.0));
  CHECK(box_probability(g, rho, BoxRegion{{5, 5, 5}, {6, 6, 6}}) == 0.0);
  CHECK(BoxRegion{{0, 0, 0}, {1, 2, 3}}.volume() == doctest::Approx(6.0));
}

TEST_CASE("classify accepts only single axis-aligned factors") {
  CHECK(classify(LorentzTransform{}).kind == AxisTransform::Kind::Identity);
  const AxisTransform b = classify(boost_z(-0.4));
  CHECK(b.kind == AxisTransform::Kind::Boost);
  CHECK(b.axis == 2);
  CHECK(b.amount == doctest::Approx(-0.4));
  LorentzTransform r;
  r.factors.push_back(LorentzFactor::make_rotation({1, 0, 0}, 0.3));
  CHECK(classify(r).kind == AxisTransform::Kind::Rotation);
  LorentzTransform bad = boost_z(0.2);
  bad.factors.push_back(LorentzFactor::make_rotation({0, 1, 0}, 0.2));
  CHECK_THROWS_AS(classify(bad), Error);
  CHECK_THROWS_AS(classify(LorentzTransform{{LorentzFactor::make_boost({0.1, 0.1, 0})}}), Error);
}

TEST_CASE("identity transport returns the field") {
  const MomentumField f = packet();
  const MomentumField g = boost_dirac_field(f, LorentzTransform{});
  double e = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i) e = std::max(e, std::abs(f.data[i] - g.data[i]));
  CHECK(e < 1e-15);
}

TEST_CASE("Dirac density is covariant, FW density is not") {
  const MomentumField f = packet();
  const auto r = boost_experiment(f, boost_z(0.15), 0.0);
  CHECK(r.dirac_residual < 1e-4);
  CHECK(r.fw_violation > 10 * r.dirac_residual);
  CHECK(r.norm_boosted == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(r.box_rest - r.box_boosted) < 1e-3);

  LorentzTransform rot;
  rot.factors.push_back(LorentzFactor::make_rotation({0, 0, 1}, 0.7));
  const auto rr = boost_experiment(f, rot, 0.0);
  CHECK(rr.dirac_residual < 1e-6);
  CHECK(rr.fw_violation < 1e-6);
}

TEST_CASE("FW transport paths agree and stay in the particle block") {
  const MomentumField u = to_fw(packet());
  const MomentumField a = boost_fw_field(u, boost_z(0.15), FwBoostPath::Conjugation);
  const MomentumField b = boost_fw_field(u, boost_z(0.15), FwBoostPath::Direct);
  double e = 0, peak = 0, lower = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    e = std::max(e, std::abs(a.data[i] - b.data[i]));
    peak = std::max(peak, std::abs(a.data[i]));
  }
  for (std::size_t i = 2 * b.nodes(); i < b.data.size(); ++i) lower = std::max(lower, std::abs(b.data[i]));
  CHECK(e / peak < 1e-10);
  CHECK(lower / peak < 1e-12);
}

TEST_CASE("support overflow is reported with the needed p_max") {
  const MomentumField f = packet();
  CHECK(required_pmax(f, boost_z(1.5)) > kGrid.pmax);
  try {
    boost_dirac_field(f, boost_z(1.5));
    FAIL("expected SupportOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportOverflow);
    CHECK(std::string(e.what()).find("p_max") != std::string::npos);
  }
}
