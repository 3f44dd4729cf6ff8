#pragma once

#include <vector>

#include "rdlab/fields.hpp"
#include "rdlab/lorentz.hpp"

namespace rdlab {

/// Axis-aligned cube or cuboid in coordinate units.
struct BoxRegion {
  Vec3 lo{}, hi{};
  double volume() const { return (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z); }
  bool contains(const Vec3& x) const {
    return x.x >= lo.x && x.x <= hi.x && x.y >= lo.y && x.y <= hi.y && x.z >= lo.z && x.z <= hi.z;
  }
};

/// Grid sum of rho over the box.
double box_probability(const Grid& grid, const std::vector<double>& rho, const BoxRegion& box);
double box_probability(const CoordinateField& g, const BoxRegion& box);

/// Smallest cube centred on the rho centroid that holds `fraction` of the total.
BoxRegion containing_box(const Grid& grid, const std::vector<double>& rho, double fraction);

/// A transformation the field pipelines can carry out exactly: identity, a
/// boost along a coordinate axis, or a rotation about a coordinate axis.
struct AxisTransform {
  enum class Kind { Identity, Boost, Rotation };
  Kind kind = Kind::Identity;
  int axis = 2;
  double amount = 0;  // signed rapidity or angle
};

/// Rejects anything that is not a single axis-aligned factor.
AxisTransform classify(const LorentzTransform& t);

/// phi'(q') = (E_q / E_q') M(Lambda) phi(Lambda^{-1} q'), so that
/// psi'(x') = M(Lambda) psi(Lambda^{-1} x') for positive-energy fields.
/// Rejects fields whose transported support leaves the momentum box.
MomentumField boost_dirac_field(const MomentumField& f, const LorentzTransform& t);

enum class FwBoostPath { Conjugation, Direct };

/// Conjugation: U_FW o boost_dirac_field o U_FW^dagger. Direct: resample the
/// FW amplitude and apply U_FW(q') M(Lambda) U_FW^dagger(Lambda^{-1} q').
MomentumField boost_fw_field(const MomentumField& f, const LorentzTransform& t,
                             FwBoostPath path = FwBoostPath::Conjugation);

/// Largest |q| reached by the transported support (nodes above `threshold`
/// of the peak), plus the shell margin: the p_max a boost needs.
double required_pmax(const MomentumField& f, const LorentzTransform& t, double threshold = 1e-8);

/// Densities on the t' slice of the transformed frame.
struct CovarianceSlices {
  std::vector<double> a_dirac;  // psi'^dag psi'
  std::vector<double> b_dirac;  // Lambda^0_mu j^mu(Lambda^{-1} x')
  std::vector<double> a_fw;     // psi'_FW^dag psi'_FW
  std::vector<double> b_fw;     // Lambda^0_mu J_FW^mu(Lambda^{-1} x'), longitudinal J_FW
};

CovarianceSlices covariance_slices(const MomentumField& f, const LorentzTransform& t, double t_slice,
                                   bool with_fw = true);

/// ||A - B||_2 / ||A||_2 for the Dirac density. Particle-branch input only.
double dirac_covariance_check(const MomentumField& f, const LorentzTransform& t, double t_slice);

struct FwViolation {
  double violation = 0;
  double dirac_reference = 0;
};
FwViolation fw_consistency_violation(const MomentumField& f, const LorentzTransform& t, double t_slice);

struct BoostExperimentReport {
  double rapidity = 0;
  int axis = 2;
  double dirac_residual = 0;
  double fw_violation = 0;
  double box_rest = 0;        // box integral of B (Dirac 4-current transport)
  double box_boosted = 0;     // box integral of A (Dirac)
  double box_rest_fw = 0;
  double box_boosted_fw = 0;
  double box_halfwidth = 0;
  double norm_boosted = 0;    // total probability of the transformed Dirac field
  double norm_boosted_fw = 0;
  Grid grid;
  double mass = 1;
};

/// Runs both pipelines on one transformation. The box is the smallest cube
/// around the boosted Dirac density that holds `box_fraction` of it.
BoostExperimentReport boost_experiment(const MomentumField& f, const LorentzTransform& t, double t_slice,
                                       double box_fraction = 0.99);

}  // namespace rdlab
