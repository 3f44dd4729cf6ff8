#include "rdlab/clifford.hpp"

namespace rdlab {

namespace {

const cplx I(0.0, 1.0);

ComplexMatrix4 block(const ComplexMatrix2& tl, const ComplexMatrix2& tr, const ComplexMatrix2& bl,
                     const ComplexMatrix2& br) {
  ComplexMatrix4 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(r, c) = tl(r, c);
      m(r, c + 2) = tr(r, c);
      m(r + 2, c) = bl(r, c);
      m(r + 2, c + 2) = br(r, c);
    }
  return m;
}

DiracSet build() {
  DiracSet s;
  const auto one = ComplexMatrix2::identity();
  const auto zero = ComplexMatrix2::zero();
  s.beta = block(one, zero, zero, -one);
  s.gamma[0] = s.beta;
  for (int k = 0; k < 3; ++k) {
    const auto sk = pauli(k + 1);
    s.alpha[k] = block(zero, sk, sk, zero);
    s.sigma_cap[k] = block(sk, zero, zero, sk);
    s.gamma[k + 1] = s.gamma[0] * s.alpha[k];
  }
  s.gamma5 = I * (s.gamma[0] * s.gamma[1] * s.gamma[2] * s.gamma[3]);
  return s;
}

IdentityCheck exact(std::string name, const ComplexMatrix4& lhs, const ComplexMatrix4& rhs) {
  const double dev = distance(lhs, rhs);
  return {std::move(name), lhs == rhs, dev};
}

}  // namespace

ComplexMatrix2 pauli(int k) {
  require(k >= 1 && k <= 3, ErrorCode::InvalidArgument,
          "pauli: axis index must be 1, 2 or 3, got " + std::to_string(k));
  ComplexMatrix2 m;
  switch (k) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -I;
      m(1, 0) = I;
      break;
    default:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
  }
  return m;
}

const DiracSet& dirac_set() {
  static const DiracSet set = build();
  return set;
}

ComplexMatrix4 alpha_dot(const Vec3& v) {
  const auto& d = dirac_set();
  return cplx(v.x) * d.alpha[0] + cplx(v.y) * d.alpha[1] + cplx(v.z) * d.alpha[2];
}

ComplexMatrix4 sigma_dot(const Vec3& v) {
  const auto& d = dirac_set();
  return cplx(v.x) * d.sigma_cap[0] + cplx(v.y) * d.sigma_cap[1] + cplx(v.z) * d.sigma_cap[2];
}

std::vector<IdentityCheck> check_dirac_algebra(const DiracSet& s) {
  std::vector<IdentityCheck> out;
  const auto id = ComplexMatrix4::identity();
  const auto zero = ComplexMatrix4::zero();

  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      out.push_back(exact("{gamma" + std::to_string(mu) + ",gamma" + std::to_string(nu) + "}",
                          anticommutator(s.gamma[mu], s.gamma[nu]),
                          cplx(2.0 * metric(mu, nu)) * id));

  for (int mu = 0; mu < 4; ++mu)
    out.push_back(exact("{gamma5,gamma" + std::to_string(mu) + "}",
                        anticommutator(s.gamma5, s.gamma[mu]), zero));
  out.push_back(exact("gamma5^2", s.gamma5 * s.gamma5, id));

  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      out.push_back(exact("{alpha" + std::to_string(k + 1) + ",alpha" + std::to_string(l + 1) + "}",
                          anticommutator(s.alpha[k], s.alpha[l]),
                          k == l ? cplx(2.0) * id : zero));
  for (int k = 0; k < 3; ++k)
    out.push_back(exact("{alpha" + std::to_string(k + 1) + ",beta}",
                        anticommutator(s.alpha[k], s.beta), zero));
  out.push_back(exact("beta^2", s.beta * s.beta, id));

  // gamma^0 gamma^5 Sigma^k = gamma^k is what puts the FW exponent in the form -gamma.xi/2.
  for (int k = 0; k < 3; ++k)
    out.push_back(exact("gamma0*gamma5*Sigma" + std::to_string(k + 1) + "=gamma" + std::to_string(k + 1),
                        s.gamma[0] * s.gamma5 * s.sigma_cap[k], s.gamma[k + 1]));

  out.push_back(exact("beta hermitian", s.beta.adjoint(), s.beta));
  out.push_back(exact("gamma5 hermitian", s.gamma5.adjoint(), s.gamma5));
  for (int k = 0; k < 3; ++k) {
    const auto n = std::to_string(k + 1);
    out.push_back(exact("alpha" + n + " hermitian", s.alpha[k].adjoint(), s.alpha[k]));
    out.push_back(exact("Sigma" + n + " hermitian", s.sigma_cap[k].adjoint(), s.sigma_cap[k]));
    out.push_back(exact("gamma" + n + " anti-hermitian", s.gamma[k + 1].adjoint(), -s.gamma[k + 1]));
  }
  return out;
}

}  // namespace rdlab
