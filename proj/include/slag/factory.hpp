#pragma once

#include "slag/integrate.hpp"
#include "slag/patch.hpp"
#include "slag/triple.hpp"

#include <optional>

namespace slag {

// ---- hexagonal torus z_j = 3^{-1/2} e^{iθ_j}, θ₁+θ₂+θ₃ = 0 ----

// Closed-form data of the flat torus: chart constants and lattice.
struct HexTorus {
  static double log_factor() { return std::log(2.0) / 6.0; }  // u with e^{6u} = 2
  // conformal chart z = c1(θ₁+θ₂) + i c2(θ₁-θ₂), rotated by e^{-iφ}
  static double c1() { return std::exp(-log_factor()) / std::sqrt(2.0); }
  static double c2() { return std::exp(-log_factor()) / std::sqrt(6.0); }
  static cd lattice1(double phi = 0);  // image of (θ₁,θ₂) += (2π, 0)
  static cd lattice2(double phi = 0);  // image of (θ₁,θ₂) += (0, 2π)

  static Vec3c point(double th1, double th2);
  // frame [e1 e2 e3] adapted to the chart rotated by phi (z = e^{iφ} ζ)
  static Mat3c frame(double th1, double th2, double phi = 0);
  // cubic coefficient in the rotated chart; phi = π/3 gives h = +1
  static cd cubic(double phi = 0) { return -std::polar(1.0, 3.0 * phi); }
  static void theta_from_z(cd z, double& th1, double& th2);
};

// Patch over the (θ₁, θ₂) grid, periodic and closed, with the conformal
// chart attached (chart rotation phi).
DiscretePatch hexagonal_torus(int n, double phi = 0);

// Admissible triple (u = ln2/6, h = e^{i(3φ+π)}) on the torus lattice;
// phi = π/3 gives the unit-cubic normalization h ≡ 1.
AdmissibleTriple hexagonal_torus_triple(int n, double phi = kPi / 3.0);

// Seed frame matching hexagonal_torus_triple at grid node (0,0).
Mat3c hexagonal_torus_seed(double phi = kPi / 3.0);

// Half torus cut along the anti-special-Lagrangian curve θ₁+θ₂ = 0,
// direction 1 along the seam (q = θ₁-θ₂ ∈ [0,4π) periodic), direction 2
// transverse (p = θ₁+θ₂ ∈ [0, 2π]). Seam on side j = 0.
DiscretePatch hexagonal_half_torus(int n1, int n2);

// The anti-special-Lagrangian sphere containing the seam of the half torus.
Lagrangian3Plane hexagonal_seam_plane();

// ---- geodesic spheres L ∩ S⁵ ----

// Conformal stereographic chart over [-a, a]²; open patch with exact
// frames, u = ln(2/(1+|z|²)), K ≡ 1, h ≡ 0.
DiscretePatch geodesic_sphere_chart(const Lagrangian3Plane& L, int n, double a = 1.0);

// Closed full-sphere sampling: Gauss-Legendre latitudes x uniform
// longitudes; exact spherical quadrature weights, no chart.
DiscretePatch geodesic_sphere_gauss(const Lagrangian3Plane& L, int n_theta, int n_phi);

// Hemisphere bounded by the equator x₃ = 0, seam on side j = 0; tilt_rad
// rotates the interior off the orthogonal position (negative control for
// the reflection principle).
DiscretePatch geodesic_hemisphere(const Lagrangian3Plane& L, int n1, int n2,
                                  double tilt_rad = 0.0);

// Anti-special-Lagrangian plane through the equator of the standard sphere.
Lagrangian3Plane equatorial_seam_plane(const Lagrangian3Plane& L);

// Totally geodesic triple: u = ln(2/(1+|z|²)) on [-a,a]², h ≡ 0, c = 1.
AdmissibleTriple round_sphere_triple(int n, double a = 1.0);

// ---- product construction (Prop 1.5 for q circles) ----

// Legendrian lift of the product of q = 3 points RP⁰ ⊂ ℂP⁰: the Clifford
// circles scaled by r_i = sqrt((n_i+1)/3). Only n = (0,0,0) is supported.
DiscretePatch product_torus(const std::vector<int>& levels, int n);

// ---- Hopf projection ----

struct HopfProjection {
  Grid2<Vec3c> points;     // normalized homogeneous coordinates
  double metric_residual;  // max relative gap |d_FS - d_patch| / d_patch over edges
};

HopfProjection hopf_project(const DiscretePatch& p);

// ---- area ----

struct AreaReport {
  double area = 0;
  std::optional<double> cone_mass;  // area/3 for closed patches
};

AreaReport area_and_bound(const DiscretePatch& p);

// ---- reflection continuation (Prop 3.1) ----

// A reflection face: either an anti-special-Lagrangian sphere L⊥ ∩ S⁵ or a
// complex sphere Π ∩ S⁵, with the fixed subspace for distance/tangency.
struct ReflectionFace {
  CurveFaceType type = CurveFaceType::AntiSlag;
  Mat3c coef;       // p ↦ -coef·conj(p) (anti-slag) or p ↦ coef·p (complex)
  std::vector<Vec6d> fixed_basis;  // orthonormal real basis of the fixed subspace

  static ReflectionFace anti_slag(const Lagrangian3Plane& Lperp);
  static ReflectionFace complex_plane(const ComplexLineCP2& Pi);

  Vec3c apply(const Vec3c& p) const;
  double fixed_set_distance(const Vec3c& p) const;
};

struct ReflectContinueResult {
  DiscretePatch reflected;   // standalone mirror image (same grid layout)
  DiscretePatch unioned;     // glued double patch across the seam (side j=0)
  double seam_face_distance = 0;      // max distance of seam nodes from the face
  double seam_c1_jump = 0;            // max principal angle between one-sided tangent planes
  double orthogonality_deviation_deg = 0;
  bool orthogonality_warning = false;
};

// Analytic continuation of a patch across its side-0 boundary lying on the
// face's fixed-point set. Throws when the boundary is off the face; emits a
// warning (in the result) when the meeting angle is not orthogonal.
ReflectContinueResult reflect_continue(const DiscretePatch& p, const ReflectionFace& face,
                                       double boundary_tol = 1e-8,
                                       double warn_deg = 0.5);

}  // namespace slag
