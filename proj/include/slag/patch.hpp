#pragma once

#include "slag/grid.hpp"
#include "slag/hermitian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slag {

// Paired orthonormal frame (e, n) = (e1,e2,e3, n1,n2,n3) with n = J e,
// realized as the unitary matrix with columns (e1, e2, e3); position = e3.
struct FrameSU3 {
  Mat3c U = Mat3c::Identity();

  Vec3c e(int i) const { return U.col(i); }
  Vec3c n(int i) const { return cd(0, 1) * U.col(i); }
  Vec3c position() const { return U.col(2); }

  // max of orthogonality and determinant defects
  double defect() const;
  void require_valid(double tol = 1e-10) const;
  // nearest unitary with determinant 1 (polar projection + phase fix)
  static Mat3c project_su3(const Mat3c& m);
};

struct BoundaryTag {
  CurveFaceType type = CurveFaceType::Interior;
  int face_id = -1;
};

// Discretized special Legendrian immersion. A patch carries base points on
// S⁵, attached frames, a conformal chart (when the parameterization is
// conformal-affine), the log-conformal factor cache, and quadrature weights
// for closed patches.
struct DiscretePatch {
  int n1 = 0, n2 = 0;
  bool periodic1 = false, periodic2 = false;
  bool closed = false;  // closed surface: quadrature and mean values valid

  Grid2<Vec3c> pos;        // e3
  Grid2<Mat3c> frame;      // U = [e1 e2 e3]
  Chart chart;             // grid -> conformal z (valid iff has_chart)
  bool has_chart = false;
  GridD u;                 // log conformal factor at nodes
  GridD gaussK;            // Gaussian curvature cache
  GridC cubic;             // optional exact cubic coefficient H (Φ = H dz³); may be empty
  GridD quadw;             // per-node area weights (closed patches)

  // boundary edge tags: side 0..3 = (j=0, i=n1-1, j=n2-1, i=0)
  std::array<BoundaryTag, 4> boundary{};

  bool interior(int i, int j, int margin = 1) const {
    bool ok1 = periodic1 || (i >= margin && i < n1 - margin);
    bool ok2 = periodic2 || (j >= margin && j < n2 - margin);
    return ok1 && ok2;
  }

  double area() const;               // Σ quadrature weights (closed patches)
  double mesh_diameter_fs() const;   // max Fubini-Study edge length of the projected mesh

  void require_frames_valid(double tol = 1e-9) const;
};

struct LegendrianResiduals {
  double contact = 0;     // |ϖ(e3, de3)|
  double symplectic = 0;  // |ϖ(∂1 e3, ∂2 e3)|
  double phase = 0;       // |Im Υ(e1, e2, e3)|
};

// Finite-difference residuals of the special Legendrian differential system.
LegendrianResiduals legendrian_residuals(const DiscretePatch& p);

}  // namespace slag
