#pragma once

#include "slag/types.hpp"

#include <array>
#include <optional>

// Linear algebra of ℂ³ ≅ ℝ⁶: complex structure, Kähler form, holomorphic
// volume, (special) Lagrangian planes, geodesic reflections, plane angles.
namespace slag {

enum class CurveFaceType { Interior, AntiSlag, Complex };

// J(x, y) = (-y, x), i.e. multiplication by i.
inline Vec3c apply_J(const Vec3c& v) { return cd(0.0, 1.0) * v; }

// ϖ = Σ dx^k ∧ dy^k; satisfies ⟨v, w⟩ = ϖ(v, Jw).
inline double kahler_form(const Vec3c& v, const Vec3c& w) { return v.dot(w).imag(); }

// Υ = dz¹ ∧ dz² ∧ dz³ evaluated on three vectors of ℝ⁶ = ℂ³.
inline cd hol_volume(const Vec3c& v1, const Vec3c& v2, const Vec3c& v3) {
  Mat3c m;
  m.col(0) = v1;
  m.col(1) = v2;
  m.col(2) = v3;
  return m.determinant();
}

// Oriented isotropic 2-plane: ϖ vanishes on the span.
struct IsotropicPlane2 {
  Vec3c b1, b2;  // orthonormal, ϖ(b1, b2) = 0

  IsotropicPlane2(const Vec3c& v1, const Vec3c& v2, double tol = 1e-12);
};

// Oriented Lagrangian 3-plane stored as an orthonormal basis. For a
// Lagrangian plane an ℝ-orthonormal basis is automatically Hermitian
// orthonormal, so the basis matrix is unitary.
struct Lagrangian3Plane {
  Mat3c basis;  // columns b1, b2, b3

  Lagrangian3Plane(const Vec3c& v1, const Vec3c& v2, const Vec3c& v3, double tol = 1e-12);

  Vec3c b(int i) const { return basis.col(i); }
};

// A complex 2-plane Π ⊂ ℂ³, i.e. a line in ℂP². Stored as a Hermitian
// orthonormal spanning pair.
struct ComplexLineCP2 {
  Vec3c s1, s2;

  ComplexLineCP2(const Vec3c& v1, const Vec3c& v2, double tol = 1e-12);

  // Hermitian unit normal (the line is the kernel of ⟨ν, ·⟩).
  Vec3c normal() const;
  bool contains(const Vec3c& p, double tol = 1e-9) const;
};

// Phase θ with Υ(b1, b2, b3) = e^{-iθ}. θ = 0 on Slag(3), θ = π/2 on Slag(3)⊥.
double classify_lagrangian_plane(const Lagrangian3Plane& L);

// The unique special Lagrangian 3-plane containing an isotropic 2-plane.
Lagrangian3Plane slag_extension(const IsotropicPlane2& sigma);

// Companion of slag_extension for the anti-special-Lagrangian family:
// the unique plane of phase π/2 containing sigma.
Lagrangian3Plane anti_slag_extension(const IsotropicPlane2& sigma);

// Geodesic reflection across L⊥ ∈ Slag(3)⊥. For the standard L⊥ = {x = 0}
// this is (x, y) ↦ (-x, y); the general case is the unitary conjugate,
// an anti-linear map p ↦ -S conj(p) with S = U Uᵀ symmetric unitary.
struct AntiSlagReflection {
  Mat3c S;

  explicit AntiSlagReflection(const Lagrangian3Plane& Lperp, double phase_tol = 1e-9);
  Vec3c operator()(const Vec3c& p) const { return -(S * p.conjugate()); }
  // Differential (the map is anti-linear, equal to itself).
  Vec3c dmap(const Vec3c& v) const { return -(S * v.conjugate()); }
};

// Geodesic reflection across a complex 2-plane Π: negates the Hermitian
// normal component, r(z) = z - 2⟨ν, z⟩ν.
struct ComplexReflection {
  Mat3c R;

  explicit ComplexReflection(const ComplexLineCP2& Pi);
  Vec3c operator()(const Vec3c& p) const { return R * p; }
  Vec3c dmap(const Vec3c& v) const { return R * v; }
};

inline Vec3c reflect_anti_slag(const Vec3c& p, const Lagrangian3Plane& Lperp) {
  return AntiSlagReflection(Lperp)(p);
}

inline Vec3c reflect_complex(const Vec3c& p, const ComplexLineCP2& Pi) {
  return ComplexReflection(Pi)(p);
}

// Angle ∈ [0, π/2] between two complex lines of ℂP² at a common point:
// cos θ = |⟨t1, t2⟩| for Hermitian unit tangents at the intersection.
double angle_between_complex_lines(const ComplexLineCP2& P1, const ComplexLineCP2& P2,
                                   const Vec3c& at);

// Angle of the wedge cut in a Lagrangian plane L by two complex planes
// meeting L in real lines (the Lemma 4.2 configuration).
double wedge_angle_in_lagrangian(const ComplexLineCP2& P1, const ComplexLineCP2& P2,
                                 const Lagrangian3Plane& L);

// Direction of the real line Π ∩ L; throws unless the intersection is
// one-dimensional.
Vec3c complex_lagrangian_intersection(const ComplexLineCP2& Pi, const Lagrangian3Plane& L);

}  // namespace slag
