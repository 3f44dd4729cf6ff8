#pragma once

#include "rdlab/lorentz.hpp"
#include "rdlab/matrix.hpp"

namespace rdlab {

/// Energy branch: +epsilon (particle) or -epsilon (antiparticle).
enum class Branch { Particle, Antiparticle };

/// Spin label lambda = +1/2 (Up) or -1/2 (Down), quantized along z in the rest frame.
enum class Spin { Up, Down };

struct SpinorAmplitude {
  Spinor v{};
  Branch branch = Branch::Particle;
  Spin spin = Spin::Up;
  Vec3 p{};
  double m = 1.0;
};

/// Rest-frame basis: sigma^3 eigenvectors in the upper (particle) or lower
/// (antiparticle) block.
SpinorAmplitude rest_spinor(Branch branch, Spin spin, double m = 1.0);

/// H_P = alpha.p + beta m
ComplexMatrix4 hamiltonian_particle(const Vec3& p, double m);
/// H_AP = alpha.p - beta m
ComplexMatrix4 hamiltonian_antiparticle(const Vec3& p, double m);
/// H_FW = beta E_p
ComplexMatrix4 hamiltonian_fw(const Vec3& p, double m);

/// M(L_p) = (E_p + m + alpha.p) / sqrt(2m(E_p + m))
ComplexMatrix4 spinor_boost(const Vec3& p, double m);
/// M^{-1}(L_p) = (E_p + m - alpha.p) / sqrt(2m(E_p + m))
ComplexMatrix4 spinor_boost_inverse(const Vec3& p, double m);
/// Closed-form d/dp^k of M^{-1}(L_p), k in {0, 1, 2}.
ComplexMatrix4 spinor_boost_inverse_derivative(const Vec3& p, double m, int k);

/// Spinor representation of one factor: cosh(chi/2) + alpha.n sinh(chi/2)
/// for boosts, exp(-i theta Sigma.n / 2) for rotations.
ComplexMatrix4 spinor_factor(const LorentzFactor& f);
/// M(Lambda) as the ordered product of factor representations.
ComplexMatrix4 spinor_rep(const LorentzTransform& t);

/// psi_{+eps}(p, lambda) = M(L_p) psi_{+eps}(k, lambda)
SpinorAmplitude particle_spinor(const Vec3& p, Spin spin, double m);
/// psi_{-eps}(p, lambda) = M(L_p) psi_{-eps}(k, lambda)
SpinorAmplitude antiparticle_spinor(const Vec3& p, Spin spin, double m);

/// U_FW(p) = (E_p + m + beta alpha.p) / sqrt(2 E_p (E_p + m)); unitary, and
/// U_FW(-p) = U_FW(p)^dagger.
ComplexMatrix4 fw_matrix(const Vec3& p, double m);

/// FW parameter vector xi with U_FW(p) = exp(-gamma^0 gamma^5 Sigma.xi / 2):
/// |xi| = atan(|p| / m), xi parallel to -p.
Vec3 fw_parameter(const Vec3& p, double m);

/// u_{+eps} = U_FW(p) psi_{+eps}, u_{-eps} = U_FW(p)^dagger psi_{-eps}
SpinorAmplitude fw_spinor(const Vec3& p, Spin spin, Branch branch, double m);

/// D(R) = exp(-i theta Sigma.n / 2) for the axis/angle of a pure rotation R.
ComplexMatrix4 wigner_spinor(const LorentzMatrix& r);

/// Matrix-free forms of the operators above, for per-node loops.
Spinor apply_alpha_dot(const Vec3& v, const Spinor& s);
Spinor apply_spinor_boost(const Vec3& p, double m, const Spinor& s);
Spinor apply_spinor_boost_inverse_derivative(const Vec3& p, double m, int k, const Spinor& s);
/// U_FW(p) s, or U_FW(p)^dagger s when `adjoint` is set.
Spinor apply_fw(const Vec3& p, double m, const Spinor& s, bool adjoint = false);

inline Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

}  // namespace rdlab
