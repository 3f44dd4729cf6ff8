#pragma once

#include <array>

#include "rdlab/fields.hpp"

namespace rdlab {

/// i d/dq^k evaluated spectrally: transform to the coordinate grid, multiply
/// by x^k, transform back. Exact for band-limited periodic content.
MomentumField spectral_derivative(const MomentumField& f, int k);

/// Dirac coordinate operator. Fields are indexed by the Dirac momentum q, so
/// both branches use i d/dq^k (the antiparticle label p = -q turns this into
/// -i d/dp^k).
MomentumField apply_dirac_coordinate(const MomentumField& f, int k);

/// X_P^k = M(L_q) i d_k M^{-1}(L_q) + i q^k / E^2 in the unitary amplitude.
MomentumField apply_XP(const MomentumField& f, int k);
/// Antiparticle operator at Dirac momentum q (label p = -q).
MomentumField apply_XAP(const MomentumField& f, int k);
/// X_FW^k = i d_k + i q^k / (2 E^2) in the unitary amplitude.
MomentumField apply_XFW(const MomentumField& f, int k);

/// sum (E/m) g^dag f dq^3, the invariant-measure inner product.
cplx measure_inner(const MomentumField& g, const MomentumField& f);
/// sum g^dag f dq^3
cplx flat_inner(const MomentumField& g, const MomentumField& f);

/// Re <f, X_P f> (flat) on the +E projection of f.
Vec3 expectation_XP(const MomentumField& f);
/// Group velocity: sum phi^dag (H/E) phi q/E over sum |phi|^2, i.e. +q/E on
/// the particle branch and -q/E on the antiparticle branch.
Vec3 expectation_velocity(const MomentumField& f);
/// <E_q> with |phi|^2 weights.
double expectation_energy(const MomentumField& f);

/// Smooth momentum window prod_k [erf((q_k + c)/s) - erf((q_k - c)/s)] / 2;
/// equals 1 to working precision on the core |q_k| <= core.
struct Window {
  double center = 2.4;
  double width = 0.38;
  double core = 0.8;
  double value(const Vec3& q) const;
  bool in_core(const Vec3& q) const;
};

enum class PositionOperator { XP, XAP, XFW };

/// Sampled localized state of the given operator, windowed:
///   XP:  (m/E) e^{-i q.x} psi_{+eps}(q, s)
///   XAP: (m/E) e^{-i q.x} psi_{-eps}(-q, s)
///   XFW: sqrt(m/E) e^{-i q.x} (chi_s, 0)
MomentumField localized_state(const Grid& grid, double m, PositionOperator op, Spin spin, const Vec3& x,
                              const Window& window);

MomentumField apply_position(const MomentumField& f, PositionOperator op, int k);

/// max over the window core of |X^k f - x^k f| divided by max |f| there.
double eigen_residual(const MomentumField& f, PositionOperator op, int k, double eigenvalue, const Window& window);

/// |<g, X f> - <X g, f>| in the invariant measure, divided by ||g|| ||f||.
double hermiticity_defect(const MomentumField& g, const MomentumField& f, PositionOperator op, int k);

/// Per axis ||U^dag X_FW U f - X_P f|| / ||f|| (flat norms). Particle fields only.
std::array<double, 3> mean_position_equivalence(const MomentumField& f);

/// (1/8 pi) int d^3y e^{-m|x-y|}/|x-y| d_k psi(y), computed spectrally as the
/// inverse transform of i q^k / (2 (q^2 + m^2)) times the transform of psi.
CoordinateField yukawa_tail(const CoordinateField& g, double m, int k);

/// Multiplies each component by x^k on the coordinate grid.
CoordinateField multiply_coordinate(const CoordinateField& g, int k);

/// max_k || x^k g + tail_k(g) - F^{-1}[X_FW^k F g] || / ||g||.
double tail_consistency(const CoordinateField& g, double m);

/// max_k || i[H_FW, X_FW^k] f - beta (q^k/E) f || / ||f|| on an FW field.
double velocity_commutator_check(const MomentumField& f);

struct LocalityReport {
  Vec3 displacement{};
  double epsilon = 0;
  cplx value{};
  cplx peak{};
  double ratio = 0;
};

/// int dp psi^dag(p) e^{-i p.a} psi(p) e^{-eps p^2} over the invariant measure
/// m d^3p / ((2 pi)^3 E). Dirac uses psi_{+-eps}, FW uses u_{+-eps}; the
/// antiparticle phase is e^{+i p.a}. Spherical Gauss-Legendre quadrature with
/// the polar axis along a.
LocalityReport locality_integral(Representation rep, Branch branch, Spin spin, const Vec3& a, double epsilon,
                                 double m);

}  // namespace rdlab
