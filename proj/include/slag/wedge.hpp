#pragma once

#include "slag/types.hpp"

#include <array>

// Λ²ℝ⁶ in the orthonormal basis ε_a ∧ ε_b, a < b, with the ℝ⁶ ordering
// (x¹, x², x³, y¹, y², y³). 15 components.
namespace slag {

using Wedge2 = Eigen::Matrix<double, 15, 1>;
using Mat15 = Eigen::Matrix<double, 15, 15>;

// Index of ε_a ∧ ε_b (a < b) in the component vector.
int wedge_index(int a, int b);

// Decomposable 2-vector v ∧ w.
Wedge2 wedge(const Vec3c& v, const Vec3c& w);

// Involution induced by J on Λ²ℝ⁶ (J∧J); squares to the identity with
// eigenspaces of dimension 9 (+1) and 6 (-1).
const Mat15& wedge_J();

// 2-vector dual to the Kähler form, Σ ε_k ∧ J(ε_k); |ϖ♯|² = 3.
const Wedge2& kahler_sharp();

struct WedgeSplit {
  Wedge2 trace;  // component along ϖ♯
  Wedge2 w8;     // remaining +1 eigenspace part (adjoint representation W⁸)
  Wedge2 minus;  // -1 eigenspace part Λ⁶₋
};

WedgeSplit j_eigenspace_split(const Wedge2& xi);

// so(6) matrix of a 2-vector: x ↦ ⟨v, x⟩w - ⟨w, x⟩v extended bilinearly.
Eigen::Matrix<double, 6, 6> wedge_to_so6(const Wedge2& xi);

// Inverse embedding of an antisymmetric real 6×6 matrix.
Wedge2 so6_to_wedge(const Eigen::Matrix<double, 6, 6>& A);

// Real so(6) form of a complex 3×3 matrix acting on ℂ³ = ℝ⁶.
Eigen::Matrix<double, 6, 6> complex_to_real6(const Mat3c& m);

// su(3) basis (anti-Hermitian trace-free), 8 elements.
std::array<Mat3c, 8> su3_basis();

// Generating function of the contact flow of ξ ∈ su(3):
// G_ξ(p) = ⟨p ∧ J(p), ξ⟩ = ⟨ξ p, J(p)⟩. Throws if ξ ∉ su(3).
double generating_function(const Mat3c& xi, const Vec3c& p);

// W⁸ image of ξ ∈ su(3) under the so(6) ↔ Λ² pairing used above.
Wedge2 su3_to_wedge(const Mat3c& xi);

}  // namespace slag
