#include "rdlab/spinors.hpp"

#include "rdlab/clifford.hpp"

namespace rdlab {

namespace {
const cplx I(0.0, 1.0);
}

SpinorAmplitude rest_spinor(Branch branch, Spin spin, double m) {
  SpinorAmplitude s;
  s.branch = branch;
  s.spin = spin;
  s.m = m;
  const int offset = branch == Branch::Particle ? 0 : 2;
  s.v[offset + (spin == Spin::Up ? 0 : 1)] = 1.0;
  return s;
}

ComplexMatrix4 hamiltonian_particle(const Vec3& p, double m) {
  return alpha_dot(p) + cplx(m) * dirac_set().beta;
}

ComplexMatrix4 hamiltonian_antiparticle(const Vec3& p, double m) {
  return alpha_dot(p) - cplx(m) * dirac_set().beta;
}

ComplexMatrix4 hamiltonian_fw(const Vec3& p, double m) {
  return cplx(mass_shell_energy(m, p)) * dirac_set().beta;
}

ComplexMatrix4 spinor_boost(const Vec3& p, double m) {
  const double e = mass_shell_energy(m, p);
  const double norm_factor = 1.0 / std::sqrt(2.0 * m * (e + m));
  return cplx(norm_factor) * (cplx(e + m) * ComplexMatrix4::identity() + alpha_dot(p));
}

ComplexMatrix4 spinor_boost_inverse(const Vec3& p, double m) {
  const double e = mass_shell_energy(m, p);
  const double norm_factor = 1.0 / std::sqrt(2.0 * m * (e + m));
  return cplx(norm_factor) * (cplx(e + m) * ComplexMatrix4::identity() - alpha_dot(p));
}

ComplexMatrix4 spinor_boost_inverse_derivative(const Vec3& p, double m, int k) {
  require(k >= 0 && k < 3, ErrorCode::InvalidArgument, "derivative axis must be 0, 1 or 2");
  // M^{-1} = n(E) (E + m - alpha.p), n = (2m(E+m))^{-1/2}, dE/dp^k = p^k/E,
  // dn/dp^k = -n p^k / (2E(E+m)).
  const double e = mass_shell_energy(m, p);
  const double n = 1.0 / std::sqrt(2.0 * m * (e + m));
  const double de = p[k] / e;
  const double dn = -n * p[k] / (2.0 * e * (e + m));
  const auto id = ComplexMatrix4::identity();
  return cplx(dn) * (cplx(e + m) * id - alpha_dot(p)) + cplx(n) * (cplx(de) * id - dirac_set().alpha[k]);
}

ComplexMatrix4 spinor_factor(const LorentzFactor& f) {
  const auto id = ComplexMatrix4::identity();
  if (f.kind == LorentzFactor::Kind::Boost) {
    const double chi = norm(f.rapidity);
    require(std::isfinite(chi), ErrorCode::InvalidArgument, "spinor_factor: non-finite rapidity");
    if (chi == 0.0) return id;
    const Vec3 n = (1.0 / chi) * f.rapidity;
    return cplx(std::cosh(chi / 2)) * id + cplx(std::sinh(chi / 2)) * alpha_dot(n);
  }
  const double len = norm(f.axis);
  require(len > 0 && std::abs(len - 1.0) <= 1e-12 && std::isfinite(f.angle), ErrorCode::InvalidArgument,
          "spinor_factor: rotation needs a unit axis and finite angle");
  return cplx(std::cos(f.angle / 2)) * id - (I * std::sin(f.angle / 2)) * sigma_dot(f.axis);
}

ComplexMatrix4 spinor_rep(const LorentzTransform& t) {
  ComplexMatrix4 m = ComplexMatrix4::identity();
  for (const auto& f : t.factors) m = m * spinor_factor(f);
  return m;
}

SpinorAmplitude particle_spinor(const Vec3& p, Spin spin, double m) {
  auto s = rest_spinor(Branch::Particle, spin, m);
  s.v = spinor_boost(p, m) * s.v;
  s.p = p;
  return s;
}

SpinorAmplitude antiparticle_spinor(const Vec3& p, Spin spin, double m) {
  auto s = rest_spinor(Branch::Antiparticle, spin, m);
  s.v = spinor_boost(p, m) * s.v;
  s.p = p;
  return s;
}

ComplexMatrix4 fw_matrix(const Vec3& p, double m) {
  const double e = mass_shell_energy(m, p);
  const double norm_factor = 1.0 / std::sqrt(2.0 * e * (e + m));
  const auto& d = dirac_set();
  return cplx(norm_factor) * (cplx(e + m) * ComplexMatrix4::identity() + d.beta * alpha_dot(p));
}

Vec3 fw_parameter(const Vec3& p, double m) {
  require(m > 0, ErrorCode::InvalidArgument, "mass must be positive");
  const double pn = norm(p);
  if (pn == 0.0) return {};
  return (-std::atan2(pn, m) / pn) * p;
}

SpinorAmplitude fw_spinor(const Vec3& p, Spin spin, Branch branch, double m) {
  if (branch == Branch::Particle) {
    auto s = particle_spinor(p, spin, m);
    s.v = fw_matrix(p, m) * s.v;
    return s;
  }
  auto s = antiparticle_spinor(p, spin, m);
  s.v = fw_matrix(p, m).adjoint() * s.v;
  return s;
}

ComplexMatrix4 wigner_spinor(const LorentzMatrix& r) {
  const AxisAngle aa = rotation_axis_angle(r);
  const auto id = ComplexMatrix4::identity();
  if (aa.angle == 0.0) return id;
  return cplx(std::cos(aa.angle / 2)) * id - (I * std::sin(aa.angle / 2)) * sigma_dot(aa.axis);
}

Spinor apply_alpha_dot(const Vec3& v, const Spinor& s) {
  const cplx minus(v.x, -v.y), plus(v.x, v.y);
  return {v.z * s[2] + minus * s[3], plus * s[2] - v.z * s[3], v.z * s[0] + minus * s[1], plus * s[0] - v.z * s[1]};
}

Spinor apply_spinor_boost(const Vec3& p, double m, const Spinor& s) {
  const double e = mass_shell_energy(m, p);
  const double n = 1.0 / std::sqrt(2.0 * m * (e + m));
  return cplx(n) * (cplx(e + m) * s + apply_alpha_dot(p, s));
}

Spinor apply_spinor_boost_inverse_derivative(const Vec3& p, double m, int k, const Spinor& s) {
  require(k >= 0 && k < 3, ErrorCode::InvalidArgument, "derivative axis must be 0, 1 or 2");
  const double e = mass_shell_energy(m, p);
  const double n = 1.0 / std::sqrt(2.0 * m * (e + m));
  const double de = p[k] / e;
  const double dn = -n * p[k] / (2.0 * e * (e + m));
  Vec3 axis{};
  axis[k] = 1.0;
  return cplx(dn) * (cplx(e + m) * s - apply_alpha_dot(p, s)) + cplx(n) * (cplx(de) * s - apply_alpha_dot(axis, s));
}

Spinor apply_fw(const Vec3& p, double m, const Spinor& s, bool adjoint) {
  const double e = mass_shell_energy(m, p);
  const double n = 1.0 / std::sqrt(2.0 * e * (e + m));
  Spinor a = apply_alpha_dot(p, s);
  // beta alpha.p: flip the sign of the lower block; the adjoint flips the whole term.
  const double sign = adjoint ? -1.0 : 1.0;
  return {n * ((e + m) * s[0] + sign * a[0]), n * ((e + m) * s[1] + sign * a[1]),
          n * ((e + m) * s[2] - sign * a[2]), n * ((e + m) * s[3] - sign * a[3])};
}

}  // namespace rdlab
