#pragma once

#include <array>
#include <vector>

#include "rdlab/types.hpp"

namespace rdlab {

/// Contravariant four-vector (t, x, y, z) in natural units.
struct FourVector {
  std::array<double, 4> c{};

  FourVector() = default;
  FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}
  FourVector(double t, const Vec3& v) : c{t, v.x, v.y, v.z} {}

  double t() const { return c[0]; }
  Vec3 spatial() const { return {c[1], c[2], c[3]}; }
  double operator[](int mu) const { return c[mu]; }
  double& operator[](int mu) { return c[mu]; }
};

/// Minkowski product with signature (+, -, -, -).
double minkowski(const FourVector& a, const FourVector& b);

/// Real 4x4 matrix Lambda^mu_nu.
class LorentzMatrix {
 public:
  LorentzMatrix() = default;
  static LorentzMatrix identity();

  double& operator()(int mu, int nu) { return e_[mu][nu]; }
  double operator()(int mu, int nu) const { return e_[mu][nu]; }

  friend LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b);
  friend FourVector operator*(const LorentzMatrix& a, const FourVector& v);

  /// eta Lambda^T eta; the inverse for any pseudo-orthogonal matrix.
  LorentzMatrix inverse() const;
  double determinant() const;
  /// max |Lambda^T eta Lambda - eta|
  double pseudo_orthogonality_defect() const;
  double max_abs_diff(const LorentzMatrix& o) const;
  bool is_proper_orthochronous(double tol = 1e-10) const;
  /// Time row and column are (1,0,0,0) and the spatial block is orthogonal.
  bool is_pure_rotation(double tol = 1e-10) const;

 private:
  std::array<std::array<double, 4>, 4> e_{};
};

/// E_p = sqrt(p^2 + m^2). Rejects m <= 0.
double mass_shell_energy(double m, const Vec3& p);

/// On-shell four-momentum (E_p, p).
FourVector on_shell(double m, const Vec3& p);

/// Pure boost along rapidity-vector chi; boost({0,0,chi}) maps (m,0,0,0) to
/// (m cosh chi, 0, 0, m sinh chi).
LorentzMatrix boost(const Vec3& rapidity);

/// Active rotation by `angle` about the unit vector `axis`.
LorentzMatrix rotation(const Vec3& axis, double angle);

/// Pure boost L_p taking (m, 0) to (E_p, p).
LorentzMatrix standard_boost(const Vec3& p, double m);

/// Wigner rotation L^{-1}(Lambda p) Lambda L(p).
LorentzMatrix wigner_rotation(const LorentzMatrix& lambda, const Vec3& p, double m);

/// Invariant mass-shell weight m / ((2 pi)^3 E_p).
double measure_weight(const Vec3& p, double m);

/// Axis and angle (angle in [0, pi]) of a pure rotation.
struct AxisAngle {
  Vec3 axis{0, 0, 1};
  double angle = 0;
};
AxisAngle rotation_axis_angle(const LorentzMatrix& r);

/// One factor of a general transformation, kept in closed form so that the
/// spinor representation never needs a matrix logarithm.
struct LorentzFactor {
  enum class Kind { Boost, Rotation };
  Kind kind = Kind::Boost;
  Vec3 rapidity{};       // boosts
  Vec3 axis{0, 0, 1};    // rotations
  double angle = 0;      // rotations

  static LorentzFactor make_boost(const Vec3& rapidity);
  static LorentzFactor make_rotation(const Vec3& axis, double angle);
  LorentzMatrix matrix() const;
};

/// Lambda = factors[0] * factors[1] * ... (the last factor acts first).
struct LorentzTransform {
  std::vector<LorentzFactor> factors;

  static LorentzTransform identity() { return {}; }
  LorentzMatrix matrix() const;
  LorentzTransform inverse() const;
};

}  // namespace rdlab
