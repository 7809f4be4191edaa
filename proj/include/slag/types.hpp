#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

// ℂ³ doubles as ℝ⁶: a complex vector z = x + iy carries the coordinates
// (x, y), and the complex structure J(x, y) = (-y, x) is multiplication by i.
namespace slag {

using cd = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;
using Vec3d = Eigen::Vector3d;
using Vec6d = Eigen::Matrix<double, 6, 1>;

inline constexpr double kPi = 3.14159265358979323846;

// Real inner product of ℝ⁶ expressed through the Hermitian product.
inline double dot6(const Vec3c& v, const Vec3c& w) { return v.dot(w).real(); }

inline Vec6d to_real6(const Vec3c& v) {
  Vec6d r;
  r << v(0).real(), v(1).real(), v(2).real(), v(0).imag(), v(1).imag(), v(2).imag();
  return r;
}

inline Vec3c from_real6(const Vec6d& r) {
  return Vec3c(cd(r(0), r(3)), cd(r(1), r(4)), cd(r(2), r(5)));
}

struct ConstraintViolation : std::runtime_error {
  explicit ConstraintViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slag
