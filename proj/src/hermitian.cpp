#include "slag/hermitian.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace slag {

namespace {

// Modified Gram-Schmidt over the real inner product of ℝ⁶ = ℂ³: preserves
// the real span, which is what the plane types store. Returns false when
// the input is numerically dependent.
bool mgs_real(std::vector<Vec3c>& v, double dep_tol = 1e-10) {
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = 0; j < i; ++j) v[i] -= dot6(v[j], v[i]) * v[j];
    double n = v[i].norm();
    if (n < dep_tol) return false;
    v[i] /= n;
  }
  return true;
}

// Hermitian Gram-Schmidt for complex spans.
bool mgs_hermitian(std::vector<Vec3c>& v, double dep_tol = 1e-10) {
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = 0; j < i; ++j) v[i] -= v[j].dot(v[i]) * v[j];
    double n = v[i].norm();
    if (n < dep_tol) return false;
    v[i] /= n;
  }
  return true;
}

}  // namespace

IsotropicPlane2::IsotropicPlane2(const Vec3c& v1, const Vec3c& v2, double tol) {
  std::vector<Vec3c> v{v1, v2};
  double scale = std::max(v1.norm(), v2.norm());
  if (scale == 0.0 || !mgs_real(v)) throw ConstraintViolation("isotropic plane: degenerate basis");
  if (std::abs(kahler_form(v[0], v[1])) > tol)
    throw ConstraintViolation("isotropic plane: kahler form does not vanish");
  b1 = v[0];
  b2 = v[1];
}

Lagrangian3Plane::Lagrangian3Plane(const Vec3c& v1, const Vec3c& v2, const Vec3c& v3,
                                   double tol) {
  std::vector<Vec3c> v{v1, v2, v3};
  if (!mgs_real(v)) throw ConstraintViolation("lagrangian plane: degenerate basis");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(kahler_form(v[i], v[j])) > tol)
        throw ConstraintViolation("lagrangian plane: kahler form does not vanish");
  basis.col(0) = v[0];
  basis.col(1) = v[1];
  basis.col(2) = v[2];
}

ComplexLineCP2::ComplexLineCP2(const Vec3c& v1, const Vec3c& v2, double tol) {
  std::vector<Vec3c> v{v1, v2};
  (void)tol;
  if (!mgs_hermitian(v)) throw ConstraintViolation("complex line: spanning pair dependent");
  s1 = v[0];
  s2 = v[1];
}

Vec3c ComplexLineCP2::normal() const {
  // Eigen's complex cross conjugates its result, which is exactly the
  // Hermitian normal of the spanning pair
  Vec3c n = s1.cross(s2);
  return n / n.norm();
}

bool ComplexLineCP2::contains(const Vec3c& p, double tol) const {
  return std::abs(normal().dot(p)) <= tol * p.norm();
}

double classify_lagrangian_plane(const Lagrangian3Plane& L) {
  cd d = hol_volume(L.b(0), L.b(1), L.b(2));
  if (std::abs(std::abs(d) - 1.0) > 1e-9)
    throw ConstraintViolation("classify: basis not Hermitian orthonormal (non-Lagrangian?)");
  // Υ(b1,b2,b3) = e^{-iθ}
  double theta = -std::arg(d);
  if (theta < 0) theta += 2 * kPi;
  return theta;
}

namespace {

Lagrangian3Plane extension_with_phase(const IsotropicPlane2& sigma, cd target_phase) {
  // The Hermitian orthocomplement of span_ℂ(b1, b2) is a complex line; the
  // real directions in it differ by a phase, fixed by the volume form.
  Vec3c w = sigma.b1.cross(sigma.b2);  // Eigen's cross is Hermitian-orthogonal to both
  double n = w.norm();
  if (n < 1e-10) throw ConstraintViolation("slag extension: degenerate isotropic plane");
  w /= n;
  cd d = hol_volume(sigma.b1, sigma.b2, w);
  Vec3c b3 = (target_phase / d) * w;
  return Lagrangian3Plane(sigma.b1, sigma.b2, b3);
}

}  // namespace

Lagrangian3Plane slag_extension(const IsotropicPlane2& sigma) {
  return extension_with_phase(sigma, cd(1.0, 0.0));
}

Lagrangian3Plane anti_slag_extension(const IsotropicPlane2& sigma) {
  return extension_with_phase(sigma, cd(0.0, -1.0));
}

AntiSlagReflection::AntiSlagReflection(const Lagrangian3Plane& Lperp, double phase_tol) {
  double theta = classify_lagrangian_plane(Lperp);
  if (std::abs(theta - kPi / 2) > phase_tol)
    throw ConstraintViolation("anti-slag reflection: plane phase is not pi/2");
  // U maps the standard L⊥ = span(i e_k) to Lperp: U e_k = -i b_k.
  Mat3c U = cd(0.0, -1.0) * Lperp.basis;
  S = U * U.transpose();
}

ComplexReflection::ComplexReflection(const ComplexLineCP2& Pi) {
  Vec3c nu = Pi.normal();
  R = Mat3c::Identity() - 2.0 * (nu * nu.adjoint());
}

double angle_between_complex_lines(const ComplexLineCP2& P1, const ComplexLineCP2& P2,
                                   const Vec3c& at) {
  if (at.norm() < 1e-12) throw DomainError("angle: zero base point");
  Vec3c p = at / at.norm();
  if (!P1.contains(p) || !P2.contains(p))
    throw DomainError("angle: lines do not intersect at the given point");
  auto tangent = [&p](const ComplexLineCP2& P) {
    // Direction within P Hermitian-orthogonal to p.
    Vec3c t1 = P.s1 - p.dot(P.s1) * p;
    Vec3c t2 = P.s2 - p.dot(P.s2) * p;
    Vec3c t = (t1.norm() >= t2.norm()) ? t1 : t2;
    return Vec3c(t / t.norm());
  };
  Vec3c t1 = tangent(P1), t2 = tangent(P2);
  double c = std::min(1.0, std::abs(t1.dot(t2)));
  return std::acos(c);
}

Vec3c complex_lagrangian_intersection(const ComplexLineCP2& Pi, const Lagrangian3Plane& L) {
  // Real 4-dim subspace (Pi) vs real 3-dim subspace (L): principal vectors
  // with cosine 1 span the intersection.
  Eigen::Matrix<double, 6, 4> BP;
  BP.col(0) = to_real6(Pi.s1);
  BP.col(1) = to_real6(apply_J(Pi.s1));
  BP.col(2) = to_real6(Pi.s2);
  BP.col(3) = to_real6(apply_J(Pi.s2));
  Eigen::Matrix<double, 6, 3> BL;
  for (int i = 0; i < 3; ++i) BL.col(i) = to_real6(L.b(i));
  Eigen::Matrix<double, 4, 3> M = BP.transpose() * BL;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(M, Eigen::ComputeFullV);
  int dim = 0;
  for (int i = 0; i < 3; ++i)
    if (svd.singularValues()(i) > 1.0 - 1e-8) ++dim;
  if (dim != 1) throw DomainError("intersection of complex plane and Lagrangian plane is not a line");
  Vec6d dir = BL * svd.matrixV().col(0);
  return from_real6(dir).normalized();
}

double wedge_angle_in_lagrangian(const ComplexLineCP2& P1, const ComplexLineCP2& P2,
                                 const Lagrangian3Plane& L) {
  Vec3c d1 = complex_lagrangian_intersection(P1, L);
  Vec3c d2 = complex_lagrangian_intersection(P2, L);
  double c = std::min(1.0, std::abs(dot6(d1, d2)));
  return std::acos(c);
}

}  // namespace slag
