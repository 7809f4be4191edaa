#include "slag/patch.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace slag {

double FrameSU3::defect() const {
  double orth = (U.adjoint() * U - Mat3c::Identity()).cwiseAbs().maxCoeff();
  double det = std::abs(U.determinant() - cd(1.0, 0.0));
  return std::max(orth, det);
}

void FrameSU3::require_valid(double tol) const {
  if (defect() > tol) throw ConstraintViolation("frame is not in SU(3)");
}

Mat3c FrameSU3::project_su3(const Mat3c& m) {
  Eigen::JacobiSVD<Mat3c> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3c q = svd.matrixU() * svd.matrixV().adjoint();
  // remove the residual determinant phase (|det q| = 1 already)
  cd d = q.determinant();
  q *= std::polar(1.0, -std::arg(d) / 3.0);
  return q;
}

double DiscretePatch::area() const {
  if (!closed || quadw.size() == 0) throw DomainError("area: patch is not closed");
  double a = 0;
  for (double w : quadw.v) a += w;
  return a;
}

double DiscretePatch::mesh_diameter_fs() const {
  auto fs = [](const Vec3c& a, const Vec3c& b) {
    double c = std::min(1.0, std::abs(a.dot(b)) / (a.norm() * b.norm()));
    return std::acos(c);
  };
  double d = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      if (i + 1 < n1 || periodic1) d = std::max(d, fs(pos(i, j), pos((i + 1) % n1, j)));
      if (j + 1 < n2 || periodic2) d = std::max(d, fs(pos(i, j), pos(i, (j + 1) % n2)));
    }
  return d;
}

void DiscretePatch::require_frames_valid(double tol) const {
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      FrameSU3 f{frame(i, j)};
      if (f.defect() > tol) throw ConstraintViolation("patch frame defect beyond tolerance");
      if (std::abs(pos(i, j).norm() - 1.0) > tol)
        throw ConstraintViolation("patch position off the unit sphere");
    }
}

LegendrianResiduals legendrian_residuals(const DiscretePatch& p) {
  LegendrianResiduals r;
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      if (!p.interior(i, j)) continue;
      Vec3c d1 = central_diff1(p.pos, i, j, p.periodic1);
      Vec3c d2 = central_diff2(p.pos, i, j, p.periodic2);
      double s1 = d1.norm(), s2 = d2.norm();
      if (s1 < 1e-300 || s2 < 1e-300) continue;
      const Vec3c& e3 = p.pos(i, j);
      r.contact = std::max({r.contact, std::abs(kahler_form(e3, d1)) / s1,
                            std::abs(kahler_form(e3, d2)) / s2});
      r.symplectic = std::max(r.symplectic, std::abs(kahler_form(d1, d2)) / (s1 * s2));
      const Mat3c& U = p.frame(i, j);
      r.phase = std::max(r.phase, std::abs(U.determinant().imag()));
    }
  return r;
}

}  // namespace slag
