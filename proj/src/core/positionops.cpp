#include "rdlab/positionops.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "rdlab/clifford.hpp"
#include "rdlab/parallel.hpp"

namespace rdlab {

namespace {

double field_norm(const SpinorField& f, double cell) {
  double acc = 0;
  for (const auto& v : f.data) acc += std::norm(v);
  return std::sqrt(acc * cell);
}

double diff_norm(const SpinorField& a, const SpinorField& b, double cell) {
  double acc = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) acc += std::norm(a.data[i] - b.data[i]);
  return std::sqrt(acc * cell);
}

void check_axis(int k) { require(k >= 0 && k < 3, ErrorCode::InvalidArgument, "axis index must be 0, 1 or 2"); }

template <class F>
MomentumField combine(const MomentumField& base, F&& fn) {
  MomentumField out = base;
  parallel_for(0, base.nodes(), [&](std::size_t i) { out.set(i, fn(i, base.grid.momentum(i))); });
  return out;
}

MomentumField xfw_impl(const MomentumField& f, int k) {
  MomentumField d = spectral_derivative(f, k);
  const double m = f.mass;
  return combine(d, [&](std::size_t i, const Vec3& q) {
    double e2 = dot(q, q) + m * m;
    return d.at(i) + cplx(0, 0.5 * q[k] / e2) * f.at(i);
  });
}

struct GaussLegendre {
  std::vector<double> x, w;
};

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<GaussLegendre>();
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    require(t != nullptr, ErrorCode::Internal, "Gauss-Legendre table allocation failed");
    slot->x.resize(n);
    slot->w.resize(n);
    for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &slot->x[i], &slot->w[i], t);
    gsl_integration_glfixed_table_free(t);
  }
  return *slot;
}

Spinor locality_spinor(Representation rep, Branch branch, Spin spin, const Vec3& p, double m) {
  if (rep == Representation::FW) return fw_spinor(p, spin, branch, m).v;
  return branch == Branch::Particle ? particle_spinor(p, spin, m).v : antiparticle_spinor(p, spin, m).v;
}

cplx locality_value(Representation rep, Branch branch, Spin spin, const Vec3& a, double eps, double m) {
  const double alen = norm(a);
  Vec3 e3 = alen > 0 ? (1.0 / alen) * a : Vec3{0, 0, 1};
  Vec3 helper = std::abs(e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1 = cross(helper, e3);
  e1 = (1.0 / norm(e1)) * e1;
  Vec3 e2 = cross(e3, e1);

  const double pmax = std::sqrt(40.0 / eps);
  const double panel = alen > 0 ? std::min(kPi / alen, 1.0) : pmax / 24;
  const int panels = static_cast<int>(std::ceil(pmax / panel));
  const double h = pmax / panels;
  const GaussLegendre& radial = gauss_legendre(12);
  constexpr int n_phi = 4;
  const double sign = branch == Branch::Particle ? -1.0 : 1.0;

  const std::size_t nodes = static_cast<std::size_t>(panels) * radial.x.size();
  std::vector<cplx> partial(nodes);
  parallel_for(0, nodes, [&](std::size_t idx) {
    int pi = static_cast<int>(idx / radial.x.size());
    std::size_t ri = idx % radial.x.size();
    double p = h * (pi + 0.5 * (radial.x[ri] + 1.0));
    double wr = 0.5 * h * radial.w[ri];
    double e = std::sqrt(p * p + m * m);
    const GaussLegendre& polar = gauss_legendre(static_cast<int>(std::ceil(0.5 * p * alen)) + 20);
    cplx acc = 0;
    for (std::size_t ti = 0; ti < polar.x.size(); ++ti) {
      double ct = polar.x[ti], st = std::sqrt(std::max(0.0, 1 - ct * ct));
      cplx phase = std::polar(1.0, sign * p * alen * ct);
      double ang = 0;
      for (int fi = 0; fi < n_phi; ++fi) {
        double phi = 2 * kPi * fi / n_phi;
        Vec3 pv = p * (st * std::cos(phi) * e1 + st * std::sin(phi) * e2 + ct * e3);
        Spinor s = locality_spinor(rep, branch, spin, pv, m);
        ang += norm2(s);
      }
      acc += polar.w[ti] * (2 * kPi / n_phi) * ang * phase;
    }
    partial[idx] = wr * p * p * (m / e) / std::pow(2 * kPi, 3) * std::exp(-eps * p * p) * acc;
  });
  cplx total = 0;
  for (const auto& v : partial) total += v;
  return total;
}

}  // namespace

MomentumField spectral_derivative(const MomentumField& f, int k) {
  check_axis(k);
  MomentumField out = f;
  const Grid& g = f.grid;
  for (int c = 0; c < 4; ++c) {
    auto comp = out.component(c);
    fft_axis_to_coordinate(comp, g, k);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      int a[3];
      g.unravel(i, a[0], a[1], a[2]);
      comp[i] *= g.x(a[k]);
    }
    fft_axis_to_momentum(comp, g, k);
  }
  return out;
}

MomentumField apply_dirac_coordinate(const MomentumField& f, int k) {
  require(f.rep == Representation::Dirac, ErrorCode::Precondition, "Dirac coordinate needs a Dirac field");
  return spectral_derivative(f, k);
}

MomentumField apply_XP(const MomentumField& f, int k) {
  require(f.rep == Representation::Dirac && f.branch == BranchContent::Particle, ErrorCode::Precondition,
          "X_P acts on particle-branch Dirac fields");
  MomentumField d = spectral_derivative(f, k);
  const double m = f.mass;
  return combine(d, [&](std::size_t i, const Vec3& q) {
    double e2 = dot(q, q) + m * m;
    Spinor s = f.at(i);
    Spinor tail = cplx(0, 1) * apply_spinor_boost(q, m, apply_spinor_boost_inverse_derivative(q, m, k, s));
    return d.at(i) + tail + cplx(0, q[k] / e2) * s;
  });
}

MomentumField apply_XAP(const MomentumField& f, int k) {
  require(f.rep == Representation::Dirac && f.branch == BranchContent::Antiparticle, ErrorCode::Precondition,
          "X_AP acts on antiparticle-branch Dirac fields");
  MomentumField d = spectral_derivative(f, k);
  const double m = f.mass;
  return combine(d, [&](std::size_t i, const Vec3& q) {
    double e2 = dot(q, q) + m * m;
    Spinor s = f.at(i);
    // d/dq [M^{-1}(L_{-q})] = -(d M^{-1})(-q)
    Spinor tail = cplx(0, -1) * apply_spinor_boost(-q, m, apply_spinor_boost_inverse_derivative(-q, m, k, s));
    return d.at(i) + tail + cplx(0, q[k] / e2) * s;
  });
}

MomentumField apply_XFW(const MomentumField& f, int k) {
  require(f.rep == Representation::FW, ErrorCode::Precondition, "X_FW acts on FW-representation fields");
  return xfw_impl(f, k);
}

MomentumField apply_position(const MomentumField& f, PositionOperator op, int k) {
  switch (op) {
    case PositionOperator::XP: return apply_XP(f, k);
    case PositionOperator::XAP: return apply_XAP(f, k);
    case PositionOperator::XFW: return apply_XFW(f, k);
  }
  fail(ErrorCode::InvalidArgument, "unknown position operator");
}

cplx measure_inner(const MomentumField& g, const MomentumField& f) {
  require(g.same_layout(f), ErrorCode::InvalidArgument, "fields live on different grids");
  cplx acc = 0;
  for (std::size_t i = 0; i < f.nodes(); ++i)
    acc += mass_shell_energy(f.mass, f.grid.momentum(i)) / f.mass * inner(g.at(i), f.at(i));
  return acc * std::pow(f.grid.dp(), 3);
}

cplx flat_inner(const MomentumField& g, const MomentumField& f) {
  require(g.same_layout(f), ErrorCode::InvalidArgument, "fields live on different grids");
  cplx acc = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i) acc += std::conj(g.data[i]) * f.data[i];
  return acc * std::pow(f.grid.dp(), 3);
}

Vec3 expectation_XP(const MomentumField& f) {
  MomentumField p = project_particle(f);
  const double cell = std::pow(p.grid.dp(), 3);
  double n = field_norm(p, cell);
  require(n > 0, ErrorCode::Precondition, "field has no particle-branch content");
  // Re <p, i d p> is the coordinate centroid (Parseval); the i q/E^2 term is
  // anti-Hermitian and drops out of the real part.
  CoordinateField psi = to_coordinate(p);
  Vec3 r{};
  for (std::size_t i = 0; i < psi.nodes(); ++i) r = r + norm2(psi.at(i)) * psi.grid.position(i);
  r = std::pow(psi.grid.dx(), 3) * r;
  const double m = p.mass;
  for (std::size_t i = 0; i < p.nodes(); ++i) {
    Vec3 q = p.grid.momentum(i);
    Spinor s = p.at(i);
    for (int k = 0; k < 3; ++k) {
      Spinor t = apply_spinor_boost(q, m, apply_spinor_boost_inverse_derivative(q, m, k, s));
      r[k] += cell * (cplx(0, 1) * inner(s, t)).real();
    }
  }
  return (1.0 / (n * n)) * r;
}

Vec3 expectation_velocity(const MomentumField& f) {
  require(f.rep == Representation::Dirac, ErrorCode::Precondition, "velocity expectation needs a Dirac field");
  const double m = f.mass;
  Vec3 acc{};
  double total = 0;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    Vec3 q = f.grid.momentum(i);
    double e = mass_shell_energy(m, q);
    Spinor s = f.at(i);
    // phi^dag (H/E) phi = |P+ phi|^2 - |P- phi|^2 selects the group-velocity sign per branch.
    Spinor hs = apply_alpha_dot(q, s);
    for (int c = 0; c < 4; ++c) hs[c] += (c < 2 ? m : -m) * s[c];
    double signed_weight = inner(s, hs).real() / e;
    acc = acc + (signed_weight / e) * q;
    total += norm2(s);
  }
  require(total > 0, ErrorCode::Precondition, "field is zero");
  return (1.0 / total) * acc;
}

double expectation_energy(const MomentumField& f) {
  double acc = 0, total = 0;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    double w = norm2(f.at(i));
    acc += w * mass_shell_energy(f.mass, f.grid.momentum(i));
    total += w;
  }
  require(total > 0, ErrorCode::Precondition, "field is zero");
  return acc / total;
}

double Window::value(const Vec3& q) const {
  double v = 1;
  for (int k = 0; k < 3; ++k) v *= 0.5 * (std::erf((q[k] + center) / width) - std::erf((q[k] - center) / width));
  return v;
}

bool Window::in_core(const Vec3& q) const {
  return std::abs(q.x) <= core && std::abs(q.y) <= core && std::abs(q.z) <= core;
}

MomentumField localized_state(const Grid& grid, double m, PositionOperator op, Spin spin, const Vec3& x,
                              const Window& window) {
  require(window.width > 0 && window.center > window.core, ErrorCode::InvalidArgument,
          "window needs width > 0 and center > core");
  const Representation rep = op == PositionOperator::XFW ? Representation::FW : Representation::Dirac;
  const BranchContent content = op == PositionOperator::XAP ? BranchContent::Antiparticle : BranchContent::Particle;
  MomentumField f(grid, m, rep, content);
  parallel_for(0, f.nodes(), [&](std::size_t i) {
    Vec3 q = grid.momentum(i);
    double e = mass_shell_energy(m, q);
    cplx env = std::polar(window.value(q), -dot(q, x));
    Spinor s;
    switch (op) {
      case PositionOperator::XP: s = cplx(m / e) * apply_spinor_boost(q, m, rest_spinor(Branch::Particle, spin, m).v); break;
      case PositionOperator::XAP:
        s = cplx(m / e) * apply_spinor_boost(-q, m, rest_spinor(Branch::Antiparticle, spin, m).v);
        break;
      case PositionOperator::XFW: s = cplx(std::sqrt(m / e)) * rest_spinor(Branch::Particle, spin, m).v; break;
    }
    f.set(i, env * s);
  });
  return f;
}

double eigen_residual(const MomentumField& f, PositionOperator op, int k, double eigenvalue, const Window& window) {
  MomentumField xf = apply_position(f, op, k);
  double res = 0, peak = 0;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    if (!window.in_core(f.grid.momentum(i))) continue;
    Spinor s = f.at(i);
    res = std::max(res, std::sqrt(norm2(xf.at(i) - cplx(eigenvalue) * s)));
    peak = std::max(peak, std::sqrt(norm2(s)));
  }
  require(peak > 0, ErrorCode::Precondition, "window core holds no grid nodes");
  return res / peak;
}

double hermiticity_defect(const MomentumField& g, const MomentumField& f, PositionOperator op, int k) {
  cplx lhs = measure_inner(g, apply_position(f, op, k));
  cplx rhs = measure_inner(apply_position(g, op, k), f);
  double ng = std::sqrt(measure_inner(g, g).real()), nf = std::sqrt(measure_inner(f, f).real());
  return std::abs(lhs - rhs) / (ng * nf);
}

std::array<double, 3> mean_position_equivalence(const MomentumField& f) {
  require(f.rep == Representation::Dirac && f.branch == BranchContent::Particle, ErrorCode::Precondition,
          "mean-position equivalence holds on the particle subspace only");
  const double cell = std::pow(f.grid.dp(), 3);
  const double nf = field_norm(f, cell);
  MomentumField u = to_fw(f);
  std::array<double, 3> r{};
  for (int k = 0; k < 3; ++k) {
    MomentumField lhs = to_dirac(apply_XFW(u, k));
    MomentumField rhs = apply_XP(f, k);
    r[k] = diff_norm(lhs, rhs, cell) / nf;
  }
  return r;
}

CoordinateField yukawa_tail(const CoordinateField& g, double m, int k) {
  check_axis(k);
  require(m > 0, ErrorCode::InvalidArgument, "mass must be positive");
  CoordinateField out = g;
  const Grid& grid = g.grid;
  for (int c = 0; c < 4; ++c) {
    auto comp = out.component(c);
    fft_to_momentum(comp, grid);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      Vec3 q = grid.momentum(i);
      comp[i] *= cplx(0, 0.5 * q[k] / (dot(q, q) + m * m));
    }
    fft_to_coordinate(comp, grid);
  }
  return out;
}

CoordinateField multiply_coordinate(const CoordinateField& g, int k) {
  check_axis(k);
  CoordinateField out = g;
  for (int c = 0; c < 4; ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= g.grid.position(i)[k];
  }
  return out;
}

double tail_consistency(const CoordinateField& g, double m) {
  const double cell = std::pow(g.grid.dx(), 3);
  const double ng = field_norm(g, cell);
  MomentumField f = to_momentum(g);
  f.mass = m;
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    CoordinateField lhs = multiply_coordinate(g, k);
    CoordinateField tail = yukawa_tail(g, m, k);
    for (std::size_t i = 0; i < lhs.data.size(); ++i) lhs.data[i] += tail.data[i];
    CoordinateField rhs = to_coordinate(xfw_impl(f, k));
    worst = std::max(worst, diff_norm(lhs, rhs, cell) / ng);
  }
  return worst;
}

double velocity_commutator_check(const MomentumField& f) {
  require(f.rep == Representation::FW, ErrorCode::Precondition, "velocity check needs an FW field");
  const double m = f.mass;
  const double cell = std::pow(f.grid.dp(), 3);
  auto beta_e = [&](const MomentumField& in) {
    return combine(in, [&](std::size_t i, const Vec3& q) {
      double e = mass_shell_energy(m, q);
      Spinor s = in.at(i);
      return Spinor{e * s[0], e * s[1], -e * s[2], -e * s[3]};
    });
  };
  MomentumField hf = beta_e(f);
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    MomentumField hx = beta_e(apply_XFW(f, k));
    MomentumField xh = apply_XFW(hf, k);
    MomentumField expected = combine(f, [&](std::size_t i, const Vec3& q) {
      double v = q[k] / mass_shell_energy(m, q);
      Spinor s = f.at(i);
      return Spinor{v * s[0], v * s[1], -v * s[2], -v * s[3]};
    });
    MomentumField got = combine(f, [&](std::size_t i, const Vec3&) {
      return cplx(0, 1) * (hx.at(i) - xh.at(i));
    });
    worst = std::max(worst, diff_norm(got, expected, cell) / field_norm(f, cell));
  }
  return worst;
}

LocalityReport locality_integral(Representation rep, Branch branch, Spin spin, const Vec3& a, double epsilon,
                                 double m) {
  require(epsilon > 0, ErrorCode::InvalidArgument, "locality regulator epsilon must be positive");
  require(m > 0, ErrorCode::InvalidArgument, "mass must be positive");
  LocalityReport r;
  r.displacement = a;
  r.epsilon = epsilon;
  r.value = locality_value(rep, branch, spin, a, epsilon, m);
  r.peak = locality_value(rep, branch, spin, Vec3{}, epsilon, m);
  r.ratio = std::abs(r.value) / std::abs(r.peak);
  return r;
}

}  // namespace rdlab
