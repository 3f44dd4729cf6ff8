#include "rdlab/covlab.hpp"

#include <algorithm>

#include "rdlab/clifford.hpp"
#include "rdlab/parallel.hpp"
#include "rdlab/resample.hpp"

namespace rdlab {

namespace {

template <class F>
MomentumField map_nodes(const MomentumField& f, F&& fn) {
  MomentumField out = f;
  parallel_for(0, f.nodes(), [&](std::size_t i) { out.set(i, fn(f.grid.momentum(i), f.at(i))); });
  return out;
}

int single_axis(const Vec3& v) {
  int axis = -1;
  for (int k = 0; k < 3; ++k) {
    if (v[k] == 0.0) continue;
    if (axis >= 0) return -1;
    axis = k;
  }
  return axis;
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i];
  }
  return den > 0 ? std::sqrt(num / den) : 0.0;
}

void require_particle(const MomentumField& f, Representation rep) {
  require(f.rep == rep, ErrorCode::Precondition,
          rep == Representation::Dirac ? "expected a Dirac-representation field" : "expected an FW-representation field");
  require(f.branch == BranchContent::Particle, ErrorCode::Precondition,
          "Lorentz transport is implemented for particle-branch fields");
}

void check_support(const MomentumField& f, const LorentzTransform& t) {
  const double need = required_pmax(f, t);
  require(need <= f.grid.pmax, ErrorCode::SupportOverflow,
          "transformed packet leaves the momentum box: needs p_max >= " + std::to_string(need) + " (have " +
              std::to_string(f.grid.pmax) + ")");
}

// Resamples every component at Lambda^{-1} q', then applies `node(q', q_src, s)`.
template <class F>
MomentumField pushforward(const MomentumField& f, const LorentzTransform& t, F&& node) {
  const AxisTransform at = classify(t);
  const LorentzMatrix inv = t.matrix().inverse();
  const double m = f.mass;
  MomentumField out = f;
  if (at.kind == AxisTransform::Kind::Rotation) {
    for (int c = 0; c < 4; ++c) rotate_scalar(out.component(c), f.grid, at.axis, at.amount, true);
  } else if (at.kind == AxisTransform::Kind::Boost) {
    check_support(f, t);
    const int axis = at.axis;
    for (int c = 0; c < 4; ++c)
      resample_momentum_lines(out.component(c), f.grid, axis,
                              [&](const Vec3& q) { return (inv * on_shell(m, q)).spatial()[axis]; });
  }
  parallel_for(0, out.nodes(), [&](std::size_t i) {
    Vec3 q = f.grid.momentum(i);
    Vec3 src = (inv * on_shell(m, q)).spatial();
    out.set(i, node(q, src, out.at(i)));
  });
  return out;
}

// Density of the field sampled on the plane x_axis = value, row-major over the other two axes.
std::vector<std::vector<cplx>> spinor_plane(const MomentumField& f, int axis, double value) {
  std::vector<std::vector<cplx>> comps(4);
  for (int c = 0; c < 4; ++c) comps[c] = coordinate_plane(f.component(c), f.grid, axis, value);
  return comps;
}

std::size_t plane_to_index(const Grid& g, int axis, int j, std::size_t line) {
  const std::size_t n = g.n, u = line / n, v = line % n;
  switch (axis) {
    case 0: return g.index(j, static_cast<int>(u), static_cast<int>(v));
    case 1: return g.index(static_cast<int>(u), j, static_cast<int>(v));
    default: return g.index(static_cast<int>(u), static_cast<int>(v), j);
  }
}

std::vector<double> rotated_density(const std::vector<double>& rho, const Grid& g, const AxisTransform& at) {
  std::vector<cplx> buf(rho.begin(), rho.end());
  rotate_scalar(buf, g, at.axis, at.amount, false);
  std::vector<double> out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = buf[i].real();
  return out;
}

void check_time_range(const MomentumField& f, double t0, double t1) {
  for (double t : {t0, t1}) {
    // Wrapped density at the shell, relative to the peak density.
    double edge = std::pow(boundary_ratio(to_coordinate(evolve_dirac(f, t))), 2);
    require(edge <= 1e-8, ErrorCode::Precondition,
            "slice needs rest-frame times outside the range the box can hold (t = " + std::to_string(t) +
                ", boundary/peak density = " + std::to_string(edge) + ")");
  }
}

}  // namespace

double box_probability(const Grid& grid, const std::vector<double>& rho, const BoxRegion& box) {
  require(box.volume() > 0, ErrorCode::InvalidArgument, "box has no volume");
  require(rho.size() == grid.size(), ErrorCode::InvalidArgument, "density does not match grid");
  double acc = 0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (box.contains(grid.position(i))) acc += rho[i];
  return acc * std::pow(grid.dx(), 3);
}

double box_probability(const CoordinateField& g, const BoxRegion& box) {
  return box_probability(g.grid, density(g), box);
}

BoxRegion containing_box(const Grid& grid, const std::vector<double>& rho, double fraction) {
  require(fraction > 0 && fraction <= 1, ErrorCode::InvalidArgument, "box fraction must lie in (0, 1]");
  double total = 0;
  Vec3 c{};
  for (std::size_t i = 0; i < rho.size(); ++i) {
    total += rho[i];
    c = c + rho[i] * grid.position(i);
  }
  require(total > 0, ErrorCode::Precondition, "density has no weight");
  c = (1.0 / total) * c;
  std::vector<std::pair<double, double>> by_distance(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Vec3 d = grid.position(i) - c;
    by_distance[i] = {std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}), rho[i]};
  }
  std::sort(by_distance.begin(), by_distance.end());
  double acc = 0, h = by_distance.back().first;
  for (const auto& [dist, w] : by_distance) {
    acc += w;
    if (acc >= fraction * total) {
      h = dist;
      break;
    }
  }
  h += 0.5 * grid.dx();  // box faces halfway between node layers
  return {c - Vec3{h, h, h}, c + Vec3{h, h, h}};
}

AxisTransform classify(const LorentzTransform& t) {
  AxisTransform at;
  if (t.factors.empty()) return at;
  require(t.factors.size() == 1, ErrorCode::InvalidArgument,
          "field transport supports a single boost or rotation factor");
  const LorentzFactor& f = t.factors.front();
  if (f.kind == LorentzFactor::Kind::Boost) {
    if (norm(f.rapidity) == 0.0) return at;
    int axis = single_axis(f.rapidity);
    require(axis >= 0, ErrorCode::InvalidArgument, "field transport supports boosts along a coordinate axis");
    at.kind = AxisTransform::Kind::Boost;
    at.axis = axis;
    at.amount = f.rapidity[axis];
  } else {
    if (f.angle == 0.0) return at;
    int axis = single_axis(f.axis);
    require(axis >= 0, ErrorCode::InvalidArgument, "field transport supports rotations about a coordinate axis");
    at.kind = AxisTransform::Kind::Rotation;
    at.axis = axis;
    at.amount = f.axis[axis] > 0 ? f.angle : -f.angle;
  }
  return at;
}

double required_pmax(const MomentumField& f, const LorentzTransform& t, double threshold) {
  const LorentzMatrix l = t.matrix();
  double peak = 0;
  for (std::size_t i = 0; i < f.nodes(); ++i) peak = std::max(peak, norm2(f.at(i)));
  double reach = 0;
  const double cut = threshold * threshold * peak;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    if (norm2(f.at(i)) <= cut) continue;
    Vec3 q = (l * on_shell(f.mass, f.grid.momentum(i))).spatial();
    reach = std::max({reach, std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  }
  return reach + 2 * f.grid.dp();
}

MomentumField boost_dirac_field(const MomentumField& f, const LorentzTransform& t) {
  require_particle(f, Representation::Dirac);
  require(t.matrix().is_proper_orthochronous(), ErrorCode::InvalidArgument, "transformation must be proper orthochronous");
  const ComplexMatrix4 mrep = spinor_rep(t);
  const double m = f.mass;
  return pushforward(f, t, [&](const Vec3& q, const Vec3& src, const Spinor& s) {
    return cplx(mass_shell_energy(m, src) / mass_shell_energy(m, q)) * (mrep * s);
  });
}

MomentumField boost_fw_field(const MomentumField& f, const LorentzTransform& t, FwBoostPath path) {
  require_particle(f, Representation::FW);
  if (path == FwBoostPath::Conjugation) return to_fw(boost_dirac_field(to_dirac(f), t));
  require(t.matrix().is_proper_orthochronous(), ErrorCode::InvalidArgument, "transformation must be proper orthochronous");
  const ComplexMatrix4 mrep = spinor_rep(t);
  const double m = f.mass;
  return pushforward(f, t, [&](const Vec3& q, const Vec3& src, const Spinor& s) {
    Spinor d = mrep * apply_fw(src, m, s, true);
    return cplx(mass_shell_energy(m, src) / mass_shell_energy(m, q)) * apply_fw(q, m, d);
  });
}

CovarianceSlices covariance_slices(const MomentumField& f, const LorentzTransform& t, double t_slice, bool with_fw) {
  require_particle(f, Representation::Dirac);
  require(std::isfinite(t_slice), ErrorCode::InvalidArgument, "slice time must be finite");
  const AxisTransform at = classify(t);
  const Grid& g = f.grid;
  const LorentzMatrix l = t.matrix(), inv = l.inverse();
  CovarianceSlices out;

  out.a_dirac = density(to_coordinate(evolve_dirac(boost_dirac_field(f, t), t_slice)));
  MomentumField fw = to_fw(f);
  if (with_fw) out.a_fw = density(to_coordinate(evolve_fw(boost_fw_field(fw, t, FwBoostPath::Direct), t_slice)));

  if (at.kind != AxisTransform::Kind::Boost) {
    // Lambda^0_mu = delta^0_mu: B is the rest density at R^{-1} x' on the same time slice.
    check_time_range(f, t_slice, t_slice);
    out.b_dirac = density(to_coordinate(evolve_dirac(f, t_slice)));
    if (with_fw) out.b_fw = density(to_coordinate(evolve_fw(fw, t_slice)));
    if (at.kind == AxisTransform::Kind::Rotation) {
      out.b_dirac = rotated_density(out.b_dirac, g, at);
      if (with_fw) out.b_fw = rotated_density(out.b_fw, g, at);
    }
    return out;
  }

  const int axis = at.axis;
  auto rest_time = [&](int j) { return inv(0, 0) * t_slice + inv(0, axis + 1) * g.x(j); };
  auto rest_coord = [&](int j) { return inv(axis + 1, 0) * t_slice + inv(axis + 1, axis + 1) * g.x(j); };
  check_time_range(f, std::min(rest_time(0), rest_time(g.n - 1)), std::max(rest_time(0), rest_time(g.n - 1)));

  const std::size_t plane = static_cast<std::size_t>(g.n) * g.n;
  const double l00 = l(0, 0), l0a = l(0, axis + 1);
  const ComplexMatrix4& alpha = dirac_set().alpha[axis];
  out.b_dirac.assign(g.size(), 0.0);
  if (with_fw) out.b_fw.assign(g.size(), 0.0);
  for (int j = 0; j < g.n; ++j) {
    const double tj = rest_time(j), xj = rest_coord(j);
    auto psi = spinor_plane(evolve_dirac(f, tj), axis, xj);
    for (std::size_t line = 0; line < plane; ++line) {
      Spinor s{psi[0][line], psi[1][line], psi[2][line], psi[3][line]};
      out.b_dirac[plane_to_index(g, axis, j, line)] = l00 * norm2(s) + l0a * inner(s, alpha * s).real();
    }
    if (!with_fw) continue;
    MomentumField fwt = evolve_fw(fw, tj);
    auto chi = spinor_plane(fwt, axis, xj);
    auto jspec = longitudinal_current_spectrum(g, fw_density_rate(fwt), axis);
    auto jplane = coordinate_plane(jspec, g, axis, xj);
    for (std::size_t line = 0; line < plane; ++line) {
      Spinor s{chi[0][line], chi[1][line], chi[2][line], chi[3][line]};
      out.b_fw[plane_to_index(g, axis, j, line)] = l00 * norm2(s) + l0a * jplane[line].real();
    }
  }
  return out;
}

double dirac_covariance_check(const MomentumField& f, const LorentzTransform& t, double t_slice) {
  CovarianceSlices s = covariance_slices(f, t, t_slice, false);
  return relative_l2(s.a_dirac, s.b_dirac);
}

FwViolation fw_consistency_violation(const MomentumField& f, const LorentzTransform& t, double t_slice) {
  CovarianceSlices s = covariance_slices(f, t, t_slice, true);
  return {relative_l2(s.a_fw, s.b_fw), relative_l2(s.a_dirac, s.b_dirac)};
}

BoostExperimentReport boost_experiment(const MomentumField& f, const LorentzTransform& t, double t_slice,
                                       double box_fraction) {
  const AxisTransform at = classify(t);
  CovarianceSlices s = covariance_slices(f, t, t_slice, true);
  BoostExperimentReport r;
  r.rapidity = at.kind == AxisTransform::Kind::Boost ? at.amount : 0.0;
  r.axis = at.axis;
  r.grid = f.grid;
  r.mass = f.mass;
  r.dirac_residual = relative_l2(s.a_dirac, s.b_dirac);
  r.fw_violation = relative_l2(s.a_fw, s.b_fw);
  BoxRegion box = containing_box(f.grid, s.a_dirac, box_fraction);
  r.box_halfwidth = 0.5 * (box.hi.x - box.lo.x);
  r.box_boosted = box_probability(f.grid, s.a_dirac, box);
  r.box_rest = box_probability(f.grid, s.b_dirac, box);
  r.box_boosted_fw = box_probability(f.grid, s.a_fw, box);
  r.box_rest_fw = box_probability(f.grid, s.b_fw, box);
  const double cell = std::pow(f.grid.dx(), 3);
  for (double v : s.a_dirac) r.norm_boosted += v * cell;
  for (double v : s.a_fw) r.norm_boosted_fw += v * cell;
  return r;
}

}  // namespace rdlab
