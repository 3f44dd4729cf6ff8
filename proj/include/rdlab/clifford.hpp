#pragma once

#include <string>
#include <vector>

#include "rdlab/matrix.hpp"

namespace rdlab {

/// Pauli matrix sigma^k for k in {1, 2, 3}. Throws InvalidArgument otherwise.
ComplexMatrix2 pauli(int k);

/// The Dirac-representation matrix set. Index 0 of `alpha` and `sigma_cap`
/// is axis 1 (x).
struct DiracSet {
  std::array<ComplexMatrix4, 3> alpha;
  ComplexMatrix4 beta;
  std::array<ComplexMatrix4, 4> gamma;
  ComplexMatrix4 gamma5;
  std::array<ComplexMatrix4, 3> sigma_cap;
};

/// Standard Dirac representation; built once, shared read-only.
const DiracSet& dirac_set();

/// Minkowski metric diag(+1, -1, -1, -1).
constexpr double metric(int mu, int nu) { return mu != nu ? 0.0 : (mu == 0 ? 1.0 : -1.0); }

/// alpha . v for a real 3-vector.
ComplexMatrix4 alpha_dot(const Vec3& v);
/// Sigma . v for a real 3-vector.
ComplexMatrix4 sigma_dot(const Vec3& v);

struct IdentityCheck {
  std::string name;
  bool passed = false;
  double deviation = 0;  // max entry modulus of lhs - rhs
};

/// Exact (zero tolerance) algebra suite: 16 gamma anticommutators, gamma5
/// relations, alpha/beta relations, hermiticity, Sigma identities.
std::vector<IdentityCheck> check_dirac_algebra(const DiracSet& set);

}  // namespace rdlab
