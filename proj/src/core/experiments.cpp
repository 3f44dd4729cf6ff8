#include "rdlab/experiments.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>

#include "rdlab/clifford.hpp"
#include "rdlab/covlab.hpp"
#include "rdlab/positionops.hpp"

namespace rdlab {

namespace {

using json = nlohmann::ordered_json;

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Context {
  const Config& cfg;
  std::uint64_t seed;
  json checks = json::array();
  json results = json::object();
  json warnings = json::array();
  std::map<std::string, Table> tables;
  bool passed = true;

  void check(const std::string& name, double measured, const std::string& relation, double tolerance, bool ok) {
    checks.push_back({{"name", name}, {"measured", measured}, {"relation", relation}, {"tolerance", tolerance},
                      {"passed", ok}});
    passed = passed && ok;
  }
  void at_most(const std::string& name, double measured, double tol) {
    check(name, measured, "<=", tol, measured <= tol);
  }
  void at_least(const std::string& name, double measured, double tol) {
    check(name, measured, ">=", tol, measured >= tol);
  }
  void below(const std::string& name, double measured, double tol) { check(name, measured, "<", tol, measured < tol); }
  double tol(const std::string& key) const { return cfg.number("tolerances." + key); }
};

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Spin spin_of(const Config& c) { return c.raw("packet.spin") == "up" ? Spin::Up : Spin::Down; }

int axis_of(const Config& c) {
  const std::string a = c.raw("boost.axis");
  return a == "x" ? 0 : (a == "y" ? 1 : 2);
}

Grid grid_of(const Config& c) { return Grid(c.integer("grid.n"), c.number("grid.pmax")); }

PacketSpec packet_of(const Config& c) {
  PacketSpec s;
  s.x0 = c.vec3("packet.x0");
  s.p0 = c.vec3("packet.p0");
  s.sigma = c.number("packet.sigma");
  auto mix = c.list("packet.mix");
  s.weight_particle = mix[0];
  s.weight_antiparticle = mix[1];
  s.spin = spin_of(c) == Spin::Up ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
  return s;
}

// ---------------------------------------------------------------- algebra

Vec3 random_ball(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
  d = (1.0 / norm(d)) * d;
  return radius * std::cbrt(uni(rng)) * d;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
  return (1.0 / norm(d)) * d;
}

double spinor_residual(const Spinor& a, const Spinor& b) { return std::sqrt(norm2(a - b)); }

void run_algebra(Context& ctx) {
  DiracSet set = dirac_set();
  const int corrupt = ctx.cfg.integer("algebra.corrupt_gamma");
  if (corrupt >= 0 && corrupt <= 3) {
    set.gamma[corrupt](0, 3) += 1.0;
    ctx.warnings.push_back("gamma^" + std::to_string(corrupt) + " deliberately corrupted (test hook)");
  }
  Table identities{{"identity", "deviation", "passed"}, {}};
  int anticommutators = 0;
  for (const auto& c : check_dirac_algebra(set)) {
    identities.rows.push_back({c.name, format_number(c.deviation), c.passed ? "1" : "0"});
    if (c.name.rfind("{gamma", 0) == 0 && c.name.find("gamma5") == std::string::npos) ++anticommutators;
    ctx.check("algebra: " + c.name, c.deviation, "==", 0.0, c.passed);
  }
  ctx.results["gamma_anticommutator_checks"] = anticommutators;
  ctx.tables["identities"] = std::move(identities);

  std::mt19937_64 rng(ctx.seed);
  const int samples = ctx.cfg.integer("algebra.random_momenta");
  const double m = ctx.cfg.number("mass");
  const double pmax = ctx.cfg.number("algebra.max_momentum") * m;
  const double tol = ctx.tol("spinor");
  double eig_p = 0, eig_ap = 0, eig_fw = 0, norm_dev = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec3 p = random_ball(rng, pmax);
    const double e = mass_shell_energy(m, p);
    for (Spin s : {Spin::Up, Spin::Down}) {
      Spinor pp = particle_spinor(p, s, m).v, ap = antiparticle_spinor(p, s, m).v;
      Spinor up = fw_spinor(p, s, Branch::Particle, m).v, ua = fw_spinor(p, s, Branch::Antiparticle, m).v;
      eig_p = std::max(eig_p, spinor_residual(hamiltonian_particle(p, m) * pp, cplx(e) * pp) / e);
      eig_ap = std::max(eig_ap, spinor_residual(hamiltonian_antiparticle(p, m) * ap, cplx(e) * ap) / e);
      // H_FW u_{+eps} = E u_{+eps}; -H_FW u_{-eps} = E u_{-eps} (lower block)
      eig_fw = std::max(eig_fw, spinor_residual(hamiltonian_fw(p, m) * up, cplx(e) * up) / e);
      eig_fw = std::max(eig_fw, spinor_residual(hamiltonian_fw(p, m) * ua, cplx(-e) * ua) / e);
      for (const Spinor* v : {&pp, &ap, &up, &ua}) norm_dev = std::max(norm_dev, std::abs(norm2(*v) - e / m));
    }
  }
  ctx.at_most("spinors: H_P eigen residual / E", eig_p, tol);
  ctx.at_most("spinors: H_AP eigen residual / E", eig_ap, tol);
  ctx.at_most("spinors: H_FW eigen residual / E", eig_fw, tol);
  ctx.at_most("spinors: |psi^dag psi - E/m|", norm_dev, tol);

  const double chi_max = ctx.cfg.number("algebra.max_rapidity");
  const double rtol = ctx.tol("representation");
  const auto& g = dirac_set();
  double galt = 0, pseudo = 0, fwdiag = 0, group = 0;
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < samples; ++i) {
    LorentzTransform t;
    t.factors.push_back(LorentzFactor::make_rotation(random_unit(rng), angle(rng)));
    t.factors.push_back(LorentzFactor::make_boost(random_ball(rng, chi_max)));
    t.factors.push_back(LorentzFactor::make_rotation(random_unit(rng), angle(rng)));
    const LorentzMatrix l = t.matrix();
    const ComplexMatrix4 mrep = spinor_rep(t), minv = spinor_rep(t.inverse());
    const double scale = std::max(1.0, l(0, 0));
    group = std::max(group, distance(mrep * minv, ComplexMatrix4::identity()));
    for (int mu = 0; mu < 4; ++mu) {
      ComplexMatrix4 rhs = ComplexMatrix4::zero();
      for (int nu = 0; nu < 4; ++nu) rhs = rhs + cplx(l(mu, nu)) * g.gamma[nu];
      galt = std::max(galt, distance(minv * g.gamma[mu] * mrep, rhs) / scale);
    }
    pseudo = std::max(pseudo, distance(g.gamma[0] * mrep.adjoint() * g.gamma[0], minv) / scale);
    const Vec3 p = random_ball(rng, pmax);
    const double e = mass_shell_energy(m, p);
    const ComplexMatrix4 u = fw_matrix(p, m);
    fwdiag = std::max(fwdiag, distance(u * hamiltonian_particle(p, m) * u.adjoint(), cplx(e) * g.beta) / e);
  }
  ctx.at_most("representation: GALT M^-1 gamma^mu M = Lambda^mu_nu gamma^nu (relative)", galt, rtol);
  ctx.at_most("representation: gamma0 M^dag gamma0 = M^-1 (relative)", pseudo, rtol);
  ctx.at_most("representation: M(Lambda) M(Lambda^-1) = 1", group, rtol);
  ctx.at_most("representation: U_FW H_P U_FW^dag = beta E (relative)", fwdiag, rtol);
  ctx.results["random_samples"] = samples;
  ctx.results["max_momentum"] = pmax;
  ctx.results["max_rapidity"] = chi_max;
}

// ---------------------------------------------------------------- locality

void run_locality(Context& ctx) {
  const double m = ctx.cfg.number("mass");
  auto eps = ctx.cfg.list("regulators.epsilon");
  std::sort(eps.begin(), eps.end(), std::greater<>());
  auto disp = ctx.cfg.list("locality.displacements");
  const double target = ctx.cfg.number("locality.target");
  if (std::find(disp.begin(), disp.end(), target) == disp.end()) disp.push_back(target);
  std::sort(disp.begin(), disp.end());
  if (eps.size() < 2) ctx.warnings.push_back("single epsilon: convergence in epsilon is unassessable");

  const double floor = ctx.tol("locality_floor");
  Table table{{"representation", "branch", "displacement", "epsilon", "ratio", "value_re", "value_im", "peak",
               "regulated_delta_peak"},
              {}};
  double worst_agreement = 0, worst_peak = 0, worst_a_mono = 0, worst_eps_mono = 0;
  std::map<std::pair<int, int>, std::vector<std::vector<double>>> ratios;  // (branch) -> [eps][disp]
  for (Branch br : {Branch::Particle, Branch::Antiparticle}) {
    std::vector<std::vector<double>> grid(eps.size(), std::vector<double>(disp.size()));
    for (std::size_t ie = 0; ie < eps.size(); ++ie) {
      const double oracle = std::pow(4 * kPi * eps[ie], -1.5);
      for (std::size_t ia = 0; ia < disp.size(); ++ia) {
        const Vec3 a{0, 0, disp[ia] / m};
        auto d = locality_integral(Representation::Dirac, br, Spin::Up, a, eps[ie], m);
        auto f = locality_integral(Representation::FW, br, Spin::Up, a, eps[ie], m);
        worst_agreement = std::max(worst_agreement, std::abs(d.value - f.value) / std::abs(d.peak));
        worst_agreement = std::max(worst_agreement, std::abs(d.peak - f.peak) / std::abs(d.peak));
        worst_peak = std::max(worst_peak, std::abs(d.peak.real() - oracle) / oracle);
        grid[ie][ia] = d.ratio;
        const char* bname = br == Branch::Particle ? "particle" : "antiparticle";
        for (const auto* r : {&d, &f})
          table.rows.push_back({r == &d ? "dirac" : "fw", bname, format_number(disp[ia]), format_number(eps[ie]),
                                format_number(r->ratio), format_number(r->value.real()),
                                format_number(r->value.imag()), format_number(r->peak.real()), format_number(oracle)});
        if (ia > 0) worst_a_mono = std::max(worst_a_mono, d.ratio - grid[ie][ia - 1]);
        if (ie > 0) worst_eps_mono = std::max(worst_eps_mono, d.ratio - grid[ie - 1][ia]);
        if (disp[ia] == target) {
          ctx.below(std::string("locality: ratio at |a|=") + label(target) + "/m, eps=" +
                        label(eps[ie]) + " (" + bname + ")",
                    d.ratio, ctx.tol("locality_ratio"));
        }
      }
    }
  }
  ctx.at_most("locality: ratio increase along |a| (monotone up to floor)", worst_a_mono, floor);
  ctx.at_most("locality: ratio increase as eps decreases (monotone up to floor)", worst_eps_mono, floor);
  ctx.at_most("locality: |Dirac - FW| / peak", worst_agreement, ctx.tol("locality_agreement"));
  ctx.at_most("locality: a=0 peak vs regulated delta (4 pi eps)^-3/2 (relative)", worst_peak,
              ctx.tol("locality_peak"));
  ctx.tables["table"] = std::move(table);
}

// ---------------------------------------------------------------- position

MomentumField random_packet(std::mt19937_64& rng, const Grid& grid, double m, double sigma, double weight_p,
                            double weight_a) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PacketSpec s;
  s.sigma = sigma;
  s.p0 = {0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng)};
  s.x0 = {u(rng), u(rng), u(rng)};
  s.spin = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
  s.weight_particle = weight_p;
  s.weight_antiparticle = weight_a;
  return gaussian_packet(grid, m, s);
}

void run_position(Context& ctx) {
  const Grid grid = grid_of(ctx.cfg);
  const double m = ctx.cfg.number("mass");
  Window w;
  w.center = ctx.cfg.number("position.window_center");
  w.width = ctx.cfg.number("position.window_width");
  w.core = ctx.cfg.number("position.window_core");
  const auto lattice = ctx.cfg.list("position.lattice");
  Table eig{{"operator", "x", "y", "z", "max_residual"}, {}};
  const std::pair<PositionOperator, const char*> ops[] = {
      {PositionOperator::XP, "X_P"}, {PositionOperator::XAP, "X_AP"}, {PositionOperator::XFW, "X_FW"}};
  for (const auto& [op, name] : ops) {
    double worst = 0;
    for (double a : lattice)
      for (double b : lattice)
        for (double c : lattice) {
          const Vec3 x{a / m, b / m, c / m};
          MomentumField st = localized_state(grid, m, op, spin_of(ctx.cfg), x, w);
          double r = 0;
          for (int k = 0; k < 3; ++k) r = std::max(r, eigen_residual(st, op, k, x[k], w));
          worst = std::max(worst, r);
          eig.rows.push_back({name, format_number(x.x), format_number(x.y), format_number(x.z), format_number(r)});
        }
    const double tol = ctx.tol("eigen");
    ctx.at_most(std::string("position: ") + name + " eigenvalue residual on window core", worst, tol);
    if (worst > tol)
      ctx.warnings.push_back(std::string(name) + " eigen residual above tolerance: refine the grid (raise grid.n) " +
                             "or widen the window (position.window_width)");
  }
  ctx.tables["eigen"] = std::move(eig);

  std::mt19937_64 rng(ctx.seed);
  const double sigma = ctx.cfg.number("packet.sigma");
  MomentumField f1 = random_packet(rng, grid, m, sigma, 1, 0), f2 = random_packet(rng, grid, m, sigma, 1, 0);
  MomentumField a1 = random_packet(rng, grid, m, sigma, 0, 1), a2 = random_packet(rng, grid, m, sigma, 0, 1);
  MomentumField u1 = to_fw(f1), u2 = to_fw(f2);
  double herm_p = 0, herm_ap = 0, herm_fw = 0;
  for (int k = 0; k < 3; ++k) {
    herm_p = std::max(herm_p, hermiticity_defect(f1, f2, PositionOperator::XP, k));
    herm_ap = std::max(herm_ap, hermiticity_defect(a1, a2, PositionOperator::XAP, k));
    herm_fw = std::max(herm_fw, hermiticity_defect(u1, u2, PositionOperator::XFW, k));
  }
  const double htol = ctx.tol("hermiticity");
  ctx.at_most("position: X_P Hermiticity defect (invariant measure)", herm_p, htol);
  ctx.at_most("position: X_AP Hermiticity defect (invariant measure)", herm_ap, htol);
  ctx.at_most("position: X_FW Hermiticity defect (invariant measure)", herm_fw, htol);

  MomentumField packet = gaussian_packet(grid, m, packet_of(ctx.cfg));
  if (packet.branch == BranchContent::Particle) {
    auto eq = mean_position_equivalence(packet);
    ctx.at_most("position: mean-position equivalence U^dag X_FW U = X_P", *std::max_element(eq.begin(), eq.end()),
                ctx.tol("equivalence"));
    ctx.results["equivalence_per_axis"] = json::array({eq[0], eq[1], eq[2]});
  } else {
    ctx.warnings.push_back("packet is not particle-branch: mean-position equivalence skipped");
  }
  const double eq_rand = [&] {
    auto e = mean_position_equivalence(f1);
    return *std::max_element(e.begin(), e.end());
  }();
  ctx.at_most("position: mean-position equivalence on a random particle packet", eq_rand, ctx.tol("equivalence"));

  MomentumField fw = to_fw(packet.branch == BranchContent::Particle ? packet : f1);
  ctx.at_most("position: x psi + Yukawa tail = F^-1 X_FW F psi", tail_consistency(to_coordinate(fw), m),
              ctx.tol("tail_consistency"));
  ctx.at_most("position: i[H_FW, X_FW] = beta p/E", velocity_commutator_check(fw), ctx.tol("velocity"));

  json tail = json::array();
  for (double s : {1.5, 2.0, 3.0}) {
    PacketSpec spec;
    spec.sigma = s / m;
    spec.hygiene = 1.0;
    CoordinateField g = to_coordinate(to_fw(gaussian_packet(grid, m, spec)));
    const double cell = std::pow(grid.dx(), 3);
    double nt = 0, nx = 0;
    for (int k = 0; k < 3; ++k) {
      auto t = yukawa_tail(g, m, k);
      auto x = multiply_coordinate(g, k);
      for (std::size_t i = 0; i < t.data.size(); ++i) {
        nt += std::norm(t.data[i]) * cell;
        nx += std::norm(x.data[i]) * cell;
      }
    }
    tail.push_back({{"sigma", s / m}, {"tail_over_position_norm", std::sqrt(nt / nx)}});
  }
  ctx.results["yukawa_tail_sweep"] = tail;
  ctx.results["window"] = {{"center", w.center}, {"width", w.width}, {"core", w.core}};
}

// ---------------------------------------------------------------- zitterbewegung

Table trajectory_table(const ZitterbewegungResult& r) {
  Table t{{"t", "xhat_x", "xhat_y", "xhat_z", "xp_x", "xp_y", "xp_z", "v_x", "v_y", "v_z"}, {}};
  for (const auto& s : r.samples) {
    std::vector<std::string> row{format_number(s.t)};
    for (const Vec3* v : {&s.x_hat, &s.x_p, &s.p_over_e})
      for (int k = 0; k < 3; ++k) row.push_back(format_number((*v)[k]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void run_zitterbewegung(Context& ctx) {
  const Grid grid = grid_of(ctx.cfg);
  const double m = ctx.cfg.number("mass");
  PacketSpec pure = packet_of(ctx.cfg);
  pure.weight_particle = 1;
  pure.weight_antiparticle = 0;
  auto r = zitterbewegung_experiment(gaussian_packet(grid, m, pure), ctx.cfg.number("times.T"),
                                     ctx.cfg.integer("times.samples"));
  double dx = 0, dp = 0;
  for (int k = 0; k < 3; ++k) {
    dx = std::max(dx, std::abs(r.slope_x_hat[k] - r.mean_p_over_e[k]));
    dp = std::max(dp, std::abs(r.slope_x_p[k] - r.mean_p_over_e[k]));
  }
  ctx.at_most("zitterbewegung: pure packet |d<x>/dt - <p/E>|", dx, ctx.tol("zb_slope"));
  ctx.at_most("zitterbewegung: pure packet |d<X_P>/dt - <p/E>|", dp, ctx.tol("zb_slope"));
  ctx.results["pure"] = {{"slope_x_hat", vec_json(r.slope_x_hat)},
                         {"slope_x_p", vec_json(r.slope_x_p)},
                         {"mean_p_over_e", vec_json(r.mean_p_over_e)},
                         {"offset_x_p_minus_x_hat", vec_json(r.samples.front().x_p - r.samples.front().x_hat)},
                         {"oscillation_amplitude", r.oscillation_amplitude}};
  ctx.tables["pure"] = trajectory_table(r);

  PacketSpec mixed = packet_of(ctx.cfg);
  auto mix = ctx.cfg.list("zitterbewegung.mixed_mix");
  mixed.weight_particle = mix[0];
  mixed.weight_antiparticle = mix[1];
  mixed.p0 = ctx.cfg.vec3("zitterbewegung.mixed_p0");
  auto z = zitterbewegung_experiment(gaussian_packet(grid, m, mixed), ctx.cfg.number("zitterbewegung.mixed_T"),
                                     ctx.cfg.integer("zitterbewegung.mixed_samples"));
  const double expected = 2 * z.mean_energy;
  if (mix[0] != 0 && mix[1] != 0) {
    ctx.at_most("zitterbewegung: mixed packet |omega - 2<E>| / 2<E>",
                std::abs(z.dominant_frequency - expected) / expected, ctx.tol("zb_frequency"));
  } else {
    ctx.warnings.push_back("zitterbewegung.mixed_mix has a single branch: frequency contract not assessed");
  }
  ctx.results["mixed"] = {{"dominant_frequency", z.dominant_frequency},
                          {"two_mean_energy", expected},
                          {"axis", z.axis},
                          {"oscillation_amplitude", z.oscillation_amplitude}};
  ctx.tables["mixed"] = trajectory_table(z);
}

// ---------------------------------------------------------------- continuity

void run_continuity(Context& ctx) {
  const Grid grid = grid_of(ctx.cfg);
  const double m = ctx.cfg.number("mass");
  MomentumField f = gaussian_packet(grid, m, packet_of(ctx.cfg));
  const double t0 = ctx.cfg.number("times.t0");
  auto dts = ctx.cfg.list("times.dt");
  std::sort(dts.begin(), dts.end(), std::greater<>());
  Table refine{{"level", "dt", "residual", "ratio"}, {}};
  double prev = 0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    auto r = continuity_residual(Representation::Dirac, f, t0, dts[i]);
    const double ratio = i > 0 ? prev / r.residual : 0.0;
    refine.rows.push_back({std::to_string(i), format_number(dts[i]), format_number(r.residual),
                           i > 0 ? format_number(ratio) : ""});
    if (r.dt_flagged) ctx.warnings.push_back("dt = " + label(dts[i]) + " is large: O(dt^2) dominates");
    if (i > 0) {
      const double lo = ctx.tol("continuity_ratio_low"), hi = ctx.tol("continuity_ratio_high");
      ctx.check("continuity: Dirac residual ratio dt=" + label(dts[i - 1]) + " -> " + label(dts[i]),
                ratio, "in", lo, ratio >= lo && ratio <= hi);
      ctx.checks.back()["tolerance"] = json::array({lo, hi});
    }
    prev = r.residual;
  }
  if (dts.size() < 2) ctx.warnings.push_back("single dt: convergence order unassessable");
  ctx.tables["refinement"] = std::move(refine);

  const double dtb = ctx.cfg.number("times.dt_bound");
  auto rb = continuity_residual(Representation::Dirac, f, t0, dtb);
  ctx.at_most("continuity: Dirac residual / ||rho|| at dt=" + label(dtb), rb.residual / rb.rho_norm,
              ctx.tol("continuity_bound"));

  auto rf = continuity_residual(Representation::FW, f, t0, dtb);
  ctx.at_most("continuity: FW longitudinal current defining residual", rf.residual, ctx.tol("fw_defining"));
  ctx.check("continuity: FW nonlocality proxy exceeds Dirac", rf.nonlocality - rb.nonlocality, ">", 0.0,
            rf.nonlocality > rb.nonlocality);
  ctx.results["nonlocality"] = {{"dirac", rb.nonlocality}, {"fw", rf.nonlocality},
                                {"gap", rf.nonlocality - rb.nonlocality}, {"box_fraction", 0.999}};

  const double T = ctx.cfg.number("times.drift_T") / m;
  Table drift{{"t", "norm_dirac", "norm_fw"}, {}};
  MomentumField fw = to_fw(f);
  const double n0 = total_probability(f);
  double worst = 0, cross = 0;
  for (int i = 0; i <= 20; ++i) {
    const double t = T * i / 20;
    const double nd = total_probability(evolve_dirac(f, t)), nf = total_probability(evolve_fw(fw, t));
    worst = std::max({worst, std::abs(nd - n0), std::abs(nf - n0)});
    cross = std::max(cross, std::abs(nd - nf));
    drift.rows.push_back({format_number(t), format_number(nd), format_number(nf)});
  }
  ctx.at_most("continuity: global norm drift over T", worst, ctx.tol("norm_drift"));
  ctx.at_most("continuity: |norm Dirac - norm FW|", cross, ctx.tol("norm_drift"));
  ctx.tables["drift"] = std::move(drift);
}

// ---------------------------------------------------------------- covariance

LorentzTransform axis_boost(int axis, double chi) {
  LorentzTransform t;
  if (chi == 0.0) return t;
  Vec3 r{};
  r[axis] = chi;
  t.factors.push_back(LorentzFactor::make_boost(r));
  return t;
}

json boost_json(const BoostExperimentReport& r) {
  return {{"rapidity", r.rapidity},
          {"dirac_residual", r.dirac_residual},
          {"fw_violation", r.fw_violation},
          {"box_rest", r.box_rest},
          {"box_boosted", r.box_boosted},
          {"box_rest_fw", r.box_rest_fw},
          {"box_boosted_fw", r.box_boosted_fw},
          {"box_halfwidth", r.box_halfwidth},
          {"norm_boosted", r.norm_boosted},
          {"norm_boosted_fw", r.norm_boosted_fw},
          {"grid", {{"n", r.grid.n}, {"pmax", r.grid.pmax}, {"mass", r.mass}}}};
}

void run_covariance(Context& ctx) {
  const Grid grid = grid_of(ctx.cfg);
  const double m = ctx.cfg.number("mass");
  const int axis = axis_of(ctx.cfg);
  const double t_slice = ctx.cfg.number("boost.t_slice");
  const double frac = ctx.cfg.number("boost.box_fraction");
  PacketSpec spec = packet_of(ctx.cfg);
  spec.p0 = ctx.cfg.vec3("boost.packet_p0");
  spec.weight_particle = 1;
  spec.weight_antiparticle = 0;
  MomentumField f = gaussian_packet(grid, m, spec);

  auto sweep = ctx.cfg.list("boost.sweep");
  const double chi = ctx.cfg.number("boost.rapidity");
  if (std::find(sweep.begin(), sweep.end(), chi) == sweep.end()) sweep.push_back(chi);
  std::sort(sweep.begin(), sweep.end());
  Table table{{"rapidity", "dirac_residual", "fw_violation", "box_rest", "box_boosted", "box_rest_fw",
               "box_boosted_fw", "status"},
              {}};
  json rows = json::array();
  std::vector<std::pair<double, double>> violations;
  BoostExperimentReport main{};
  bool have_main = false;
  for (double c : sweep) {
    try {
      auto r = boost_experiment(f, axis_boost(axis, c), t_slice, frac);
      rows.push_back(boost_json(r));
      table.rows.push_back({format_number(c), format_number(r.dirac_residual), format_number(r.fw_violation),
                            format_number(r.box_rest), format_number(r.box_boosted), format_number(r.box_rest_fw),
                            format_number(r.box_boosted_fw), "ok"});
      violations.emplace_back(c, r.fw_violation);
      if (c == 0.0) {
        ctx.at_most("covariance: identity Dirac residual", r.dirac_residual, ctx.tol("identity"));
        ctx.at_most("covariance: identity FW violation", r.fw_violation, ctx.tol("identity"));
      }
      if (c == chi) {
        main = r;
        have_main = true;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SupportOverflow) throw;
      rows.push_back({{"rapidity", c}, {"skipped", e.what()}});
      table.rows.push_back({format_number(c), "", "", "", "", "", "", "skipped"});
      ctx.warnings.push_back("rapidity " + label(c) + " skipped: " + e.what());
    }
  }
  ctx.results["sweep"] = rows;
  ctx.tables["sweep"] = std::move(table);

  require(have_main, ErrorCode::SupportOverflow,
          "boost.rapidity = " + label(chi) + " does not fit the momentum grid (raise grid.pmax)");
  ctx.at_most("covariance: Dirac consistency residual at chi=" + label(chi), main.dirac_residual,
              ctx.tol("dirac_covariance"));
  ctx.at_least("covariance: FW violation / Dirac residual at chi=" + label(chi),
               main.fw_violation / std::max(main.dirac_residual, 1e-300), ctx.tol("fw_gap"));
  double increase = 1.0;
  for (std::size_t i = 1; i < violations.size(); ++i)
    increase = std::min(increase, violations[i].second - violations[i - 1].second);
  ctx.check("covariance: FW violation increasing in rapidity (min step)", increase, ">", 0.0,
            violations.size() < 2 || increase > 0);
  const double dbox = std::abs(main.box_rest - main.box_boosted);
  const double fbox = std::abs(main.box_rest_fw - main.box_boosted_fw);
  ctx.at_most("covariance: Dirac box probability, 4-current transport vs boosted density", dbox, ctx.tol("box"));
  ctx.at_least("covariance: FW box probability departure", fbox, ctx.tol("box"));
  ctx.results["box"] = {{"fraction", frac}, {"halfwidth", main.box_halfwidth}, {"dirac_departure", dbox},
                        {"fw_departure", fbox}};

  // Two FW transport paths and branch purity.
  const LorentzTransform lt = axis_boost(axis, chi);
  MomentumField fw = to_fw(f);
  MomentumField c1 = boost_fw_field(fw, lt, FwBoostPath::Conjugation), c2 = boost_fw_field(fw, lt, FwBoostPath::Direct);
  double diff = 0, peak = 0, lower = 0;
  for (std::size_t i = 0; i < c1.data.size(); ++i) {
    diff = std::max(diff, std::abs(c1.data[i] - c2.data[i]));
    peak = std::max(peak, std::abs(c1.data[i]));
  }
  for (std::size_t i = 2 * c2.nodes(); i < c2.data.size(); ++i) lower += std::norm(c2.data[i]);
  lower = std::sqrt(lower * std::pow(grid.dp(), 3));
  ctx.at_most("covariance: FW transport, direct S_FW vs conjugation (max diff / peak)", diff / peak,
              ctx.tol("fw_paths"));
  ctx.at_most("covariance: FW branch purity after boost (lower-component norm)", lower, ctx.tol("fw_purity"));

  LorentzTransform rot;
  Vec3 ax{};
  ax[axis] = 1;
  rot.factors.push_back(LorentzFactor::make_rotation(ax, ctx.cfg.number("boost.rotation_angle")));
  auto rr = boost_experiment(f, rot, t_slice, frac);
  ctx.at_most("covariance: rotation Dirac residual", rr.dirac_residual, ctx.tol("rotation"));
  ctx.at_most("covariance: rotation FW violation", rr.fw_violation, ctx.tol("rotation"));
  ctx.results["rotation"] = boost_json(rr);

  if (ctx.cfg.integer("boost.refine") != 0) {
    const Grid fine(grid.n + grid.n / 4, grid.pmax);
    MomentumField ff = gaussian_packet(fine, m, spec);
    auto rf = boost_experiment(ff, lt, t_slice, frac);
    ctx.check("covariance: Dirac residual shrinks under momentum-grid refinement (fine / coarse)",
              rf.dirac_residual / main.dirac_residual, "<", 1.0, rf.dirac_residual < main.dirac_residual);
    ctx.check("covariance: FW violation persists under refinement (fine / coarse)", rf.fw_violation / main.fw_violation,
              ">", 0.5, rf.fw_violation > 0.5 * main.fw_violation);
    ctx.results["refinement"] = {{"coarse", boost_json(main)}, {"fine", boost_json(rf)}};
  }
}

using Runner = void (*)(Context&);

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"algebra-check", run_algebra},   {"locality", run_locality},     {"position", run_position},
      {"zitterbewegung", run_zitterbewegung}, {"continuity", run_continuity}, {"covariance", run_covariance},
  };
  return r;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    require(out.good(), ErrorCode::Io, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::Io, "cannot rename into '" + path.string() + "'");
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& r : runners()) n.push_back(r.first);
    return n;
  }();
  return names;
}

ExperimentResult run_experiment(const std::string& command, const Config& config, std::uint64_t seed) {
  Runner runner = nullptr;
  for (const auto& r : runners())
    if (r.first == command) runner = r.second;
  require(runner != nullptr, ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  config.validate();

  const auto start = std::chrono::steady_clock::now();
  Context ctx{config, seed, json::array(), json::object(), json::array(), {}, true};
  runner(ctx);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report;
  report["command"] = command;
  report["version"] = RDLAB_VERSION_STRING;
  report["seed"] = seed;
  report["passed"] = ctx.passed;
  report["runtime_s"] = elapsed;
  json echo = json::object();
  for (const auto& [k, v] : config.entries()) echo[k] = v;
  report["config"] = echo;
  report["config_text"] = config.source_text();
  json eff = json::object();
  for (const auto& [k, v] : config.effective()) eff[k] = v;
  report["effective_config"] = eff;
  report["grid"] = {{"n", config.integer("grid.n")}, {"pmax", config.number("grid.pmax")},
                    {"mass", config.number("mass")}};
  report["checks"] = ctx.checks;
  report["results"] = ctx.results;
  report["warnings"] = ctx.warnings;

  ExperimentResult out;
  out.command = command;
  out.passed = ctx.passed;
  out.report_json = report.dump(2);
  out.tables = std::move(ctx.tables);
  return out;
}

void write_outputs(const ExperimentResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec && std::filesystem::is_directory(dir), ErrorCode::Io, "cannot create output directory '" + dir + "'");
  const std::filesystem::path base(dir);
  write_atomic(base / (result.command + ".report.json"), result.report_json + "\n");
  for (const auto& [name, table] : result.tables) {
    std::string text;
    for (std::size_t i = 0; i < table.header.size(); ++i) text += (i ? "," : "") + csv_cell(table.header[i]);
    text += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_cell(row[i]);
      text += "\n";
    }
    write_atomic(base / (result.command + "." + name + ".csv"), text);
  }
}

}  // namespace rdlab
