#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace rdlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  InvalidArgument = 1,
  Precondition = 2,
  SupportOverflow = 3,
  Config = 4,
  Io = 5,
  Internal = 6,
};

/// Exception type thrown by every core routine. The C API maps `code()` onto
/// its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
  constexpr double& operator[](int k) { return k == 0 ? x : (k == 1 ? y : z); }

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Four complex components in the standard Dirac ordering.
using Spinor = std::array<cplx, 4>;

inline double norm2(const Spinor& s) {
  double acc = 0;
  for (const auto& c : s) acc += std::norm(c);
  return acc;
}

inline cplx inner(const Spinor& a, const Spinor& b) {
  cplx acc = 0;
  for (int i = 0; i < 4; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline Spinor operator+(const Spinor& a, const Spinor& b) {
  Spinor r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Spinor operator-(const Spinor& a, const Spinor& b) {
  Spinor r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Spinor operator*(cplx s, const Spinor& a) {
  Spinor r;
  for (int i = 0; i < 4; ++i) r[i] = s * a[i];
  return r;
}

}  // namespace rdlab
