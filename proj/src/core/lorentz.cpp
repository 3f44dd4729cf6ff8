#include "rdlab/lorentz.hpp"

#include <algorithm>

namespace rdlab {

namespace {
constexpr double eta(int mu) { return mu == 0 ? 1.0 : -1.0; }
}  // namespace

double minkowski(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

LorentzMatrix LorentzMatrix::identity() {
  LorentzMatrix m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) {
  LorentzMatrix m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double acc = 0;
      for (int k = 0; k < 4; ++k) acc += a(r, k) * b(k, c);
      m(r, c) = acc;
    }
  return m;
}

FourVector operator*(const LorentzMatrix& a, const FourVector& v) {
  FourVector out;
  for (int r = 0; r < 4; ++r) {
    double acc = 0;
    for (int k = 0; k < 4; ++k) acc += a(r, k) * v[k];
    out[r] = acc;
  }
  return out;
}

LorentzMatrix LorentzMatrix::inverse() const {
  LorentzMatrix m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = eta(r) * (*this)(c, r) * eta(c);
  return m;
}

double LorentzMatrix::determinant() const {
  // Laplace expansion along the first row.
  auto minor3 = [&](int skip_col) {
    int cols[3], k = 0;
    for (int c = 0; c < 4; ++c)
      if (c != skip_col) cols[k++] = c;
    const auto& a = *this;
    return a(1, cols[0]) * (a(2, cols[1]) * a(3, cols[2]) - a(2, cols[2]) * a(3, cols[1])) -
           a(1, cols[1]) * (a(2, cols[0]) * a(3, cols[2]) - a(2, cols[2]) * a(3, cols[0])) +
           a(1, cols[2]) * (a(2, cols[0]) * a(3, cols[1]) - a(2, cols[1]) * a(3, cols[0]));
  };
  double det = 0;
  for (int c = 0; c < 4; ++c) det += ((c % 2) ? -1.0 : 1.0) * e_[0][c] * minor3(c);
  return det;
}

double LorentzMatrix::pseudo_orthogonality_defect() const {
  double worst = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double acc = 0;
      for (int k = 0; k < 4; ++k) acc += (*this)(k, r) * eta(k) * (*this)(k, c);
      worst = std::max(worst, std::abs(acc - (r == c ? eta(r) : 0.0)));
    }
  return worst;
}

double LorentzMatrix::max_abs_diff(const LorentzMatrix& o) const {
  double worst = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs((*this)(r, c) - o(r, c)));
  return worst;
}

bool LorentzMatrix::is_proper_orthochronous(double tol) const {
  const double scale = std::max(1.0, e_[0][0] * e_[0][0]);
  return pseudo_orthogonality_defect() <= tol * scale && std::abs(determinant() - 1.0) <= tol * scale &&
         e_[0][0] >= 1.0 - tol;
}

bool LorentzMatrix::is_pure_rotation(double tol) const {
  if (std::abs(e_[0][0] - 1.0) > tol) return false;
  for (int k = 1; k < 4; ++k)
    if (std::abs(e_[0][k]) > tol || std::abs(e_[k][0]) > tol) return false;
  return pseudo_orthogonality_defect() <= tol && std::abs(determinant() - 1.0) <= tol;
}

double mass_shell_energy(double m, const Vec3& p) {
  require(m > 0, ErrorCode::InvalidArgument, "mass must be positive");
  return std::sqrt(dot(p, p) + m * m);
}

FourVector on_shell(double m, const Vec3& p) { return FourVector(mass_shell_energy(m, p), p); }

LorentzMatrix boost(const Vec3& rapidity) {
  const double chi = norm(rapidity);
  LorentzMatrix b = LorentzMatrix::identity();
  if (chi == 0.0) return b;
  require(std::isfinite(chi), ErrorCode::InvalidArgument, "boost: rapidity must be finite");
  const Vec3 n = (1.0 / chi) * rapidity;
  const double ch = std::cosh(chi), sh = std::sinh(chi);
  b(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    b(0, i + 1) = b(i + 1, 0) = sh * n[i];
    for (int j = 0; j < 3; ++j) b(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (ch - 1.0) * n[i] * n[j];
  }
  return b;
}

LorentzMatrix rotation(const Vec3& axis, double angle) {
  const double len = norm(axis);
  require(len > 0, ErrorCode::InvalidArgument, "rotation: zero axis");
  require(std::abs(len - 1.0) <= 1e-12, ErrorCode::InvalidArgument, "rotation: axis must be a unit vector");
  const Vec3 n = (1.0 / len) * axis;
  const double c = std::cos(angle), s = std::sin(angle);
  LorentzMatrix r = LorentzMatrix::identity();
  // Rodrigues: R = c I + s [n]_x + (1 - c) n n^T
  const double nx[3][3] = {{0, -n.z, n.y}, {n.z, 0, -n.x}, {-n.y, n.x, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i + 1, j + 1) = (i == j ? c : 0.0) + s * nx[i][j] + (1.0 - c) * n[i] * n[j];
  return r;
}

LorentzMatrix standard_boost(const Vec3& p, double m) {
  const double e = mass_shell_energy(m, p);
  const double pn = norm(p);
  if (pn == 0.0) return LorentzMatrix::identity();
  // Built from (E, p) directly instead of asinh(|p|/m) to keep the on-shell image exact.
  LorentzMatrix b = LorentzMatrix::identity();
  b(0, 0) = e / m;
  for (int i = 0; i < 3; ++i) {
    b(0, i + 1) = b(i + 1, 0) = p[i] / m;
    for (int j = 0; j < 3; ++j) b(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + p[i] * p[j] / (m * (e + m));
  }
  return b;
}

LorentzMatrix wigner_rotation(const LorentzMatrix& lambda, const Vec3& p, double m) {
  const FourVector lp = lambda * on_shell(m, p);
  return standard_boost(lp.spatial(), m).inverse() * lambda * standard_boost(p, m);
}

double measure_weight(const Vec3& p, double m) {
  const double e = mass_shell_energy(m, p);
  return m / (8.0 * kPi * kPi * kPi * e);
}

AxisAngle rotation_axis_angle(const LorentzMatrix& r) {
  require(r.is_pure_rotation(1e-9), ErrorCode::InvalidArgument, "expected a pure rotation");
  const double trace = r(1, 1) + r(2, 2) + r(3, 3);
  const double c = std::clamp((trace - 1.0) / 2.0, -1.0, 1.0);
  const Vec3 w{r(3, 2) - r(2, 3), r(1, 3) - r(3, 1), r(2, 1) - r(1, 2)};  // 2 sin(theta) n
  const double s2 = norm(w);
  AxisAngle out;
  out.angle = std::atan2(s2 / 2.0, c);
  if (out.angle < 1e-300) return {{0, 0, 1}, 0.0};
  if (s2 > 1e-6) {
    out.axis = (1.0 / s2) * w;
    return out;
  }
  // Angle close to pi: n n^T = (R + I) / 2 off the sine term.
  int best = 0;
  for (int k = 1; k < 3; ++k)
    if (r(k + 1, k + 1) > r(best + 1, best + 1)) best = k;
  Vec3 n;
  n[best] = std::sqrt(std::max(0.0, (r(best + 1, best + 1) + 1.0) / 2.0));
  for (int k = 0; k < 3; ++k)
    if (k != best) n[k] = (r(k + 1, best + 1) + r(best + 1, k + 1)) / (4.0 * n[best]);
  n = (1.0 / norm(n)) * n;
  // Fix the sign ambiguity of n using the (small) antisymmetric part when present.
  if (dot(n, w) < 0) n = -n;
  out.axis = n;
  return out;
}

LorentzFactor LorentzFactor::make_boost(const Vec3& rapidity) {
  require(std::isfinite(norm(rapidity)), ErrorCode::InvalidArgument, "boost factor: non-finite rapidity");
  LorentzFactor f;
  f.kind = Kind::Boost;
  f.rapidity = rapidity;
  return f;
}

LorentzFactor LorentzFactor::make_rotation(const Vec3& axis, double angle) {
  const double len = norm(axis);
  require(len > 0 && std::abs(len - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "rotation factor: axis must be a unit vector");
  require(std::isfinite(angle), ErrorCode::InvalidArgument, "rotation factor: non-finite angle");
  LorentzFactor f;
  f.kind = Kind::Rotation;
  f.axis = axis;
  f.angle = angle;
  return f;
}

LorentzMatrix LorentzFactor::matrix() const {
  return kind == Kind::Boost ? boost(rapidity) : rotation(axis, angle);
}

LorentzMatrix LorentzTransform::matrix() const {
  LorentzMatrix m = LorentzMatrix::identity();
  for (const auto& f : factors) m = m * f.matrix();
  return m;
}

LorentzTransform LorentzTransform::inverse() const {
  LorentzTransform inv;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    LorentzFactor f = *it;
    if (f.kind == LorentzFactor::Kind::Boost)
      f.rapidity = -f.rapidity;
    else
      f.angle = -f.angle;
    inv.factors.push_back(f);
  }
  return inv;
}

}  // namespace rdlab
