#pragma once

#include <array>

#include "rdlab/types.hpp"

namespace rdlab {

/// Dense N x N complex matrix with value semantics. Products of matrices whose
/// entries are small Gaussian integers are exact in double precision, which the
/// Clifford checks rely on.
template <int N>
class ComplexMatrix {
 public:
  constexpr ComplexMatrix() = default;

  static ComplexMatrix identity() {
    ComplexMatrix m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero() { return ComplexMatrix{}; }

  cplx& operator()(int r, int c) { return e_[r * N + c]; }
  const cplx& operator()(int r, int c) const { return e_[r * N + c]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m;
    for (int r = 0; r < N; ++r)
      for (int k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx(0.0)) continue;
        for (int c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    for (int i = 0; i < N * N; ++i) a.e_[i] += b.e_[i];
    return a;
  }

  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    for (int i = 0; i < N * N; ++i) a.e_[i] -= b.e_[i];
    return a;
  }

  friend ComplexMatrix operator-(ComplexMatrix a) {
    for (auto& v : a.e_) v = -v;
    return a;
  }

  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    for (auto& v : a.e_) v *= s;
    return a;
  }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) { return a.e_ == b.e_; }

  /// Largest entry modulus; the norm used by every tolerance check.
  double max_abs() const {
    double m = 0;
    for (const auto& v : e_) m = std::max(m, std::abs(v));
    return m;
  }

  const std::array<cplx, N * N>& entries() const { return e_; }

 private:
  std::array<cplx, N * N> e_{};
};

using ComplexMatrix2 = ComplexMatrix<2>;
using ComplexMatrix4 = ComplexMatrix<4>;

inline Spinor operator*(const ComplexMatrix4& m, const Spinor& s) {
  Spinor r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m(i, j) * s[j];
  return r;
}

template <int N>
ComplexMatrix<N> anticommutator(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
  return a * b + b * a;
}

template <int N>
ComplexMatrix<N> commutator(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
  return a * b - b * a;
}

template <int N>
double distance(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
  return (a - b).max_abs();
}

}  // namespace rdlab
