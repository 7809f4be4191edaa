#pragma once

#include "slag/hermitian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slag {

// Unitary reflection of period two with its fixed complex line.
struct UnitaryReflection {
  Mat3c matrix;
  ComplexLineCP2 fixed_line;
  std::string word;

  UnitaryReflection(const Mat3c& m, const ComplexLineCP2& line, std::string w,
                    double tol = 1e-11);
};

// Chain of reflection faces with vertices and angles.
struct PolygonFace {
  int id;
  CurveFaceType type;
  ComplexLineCP2 line;              // complex faces
  std::optional<Lagrangian3Plane> lag;  // anti-special-Lagrangian faces
};

struct PolygonVertex {
  Vec3c point;   // representative in ℂ³ (projective for complex-complex vertices)
  double angle;  // ∈ (0, π/2]
};

struct PolygonGamma {
  std::vector<PolygonFace> faces;
  std::vector<PolygonVertex> vertices;  // vertex i = face i+1 ∩ face i+2 (cyclic)
  int k = 0;                            // parameter for the Γ_{k,3} family
};

// Faces z₁ = εz₂, z₁ = z₂, z₂ = z₃ of §6 with ε = exp(2πi/k).
PolygonGamma gamma_k3(int k);

// Reflections r₁ = (εz₂, ε̄z₁, z₃), r₂ = swap(z₁,z₂), r₃ = swap(z₂,z₃).
UnitaryReflection reflection_matrix(const PolygonGamma& gamma, int face_id);

struct GroupElement {
  Mat3c m;
  std::string word;
};

struct GroupClosure {
  std::vector<GroupElement> elements;  // [0] = identity
  std::vector<Mat3c> generators;
  double min_separation = 0;  // smallest pairwise Frobenius distance
  double max_unitarity_defect = 0;

  int order() const { return (int)elements.size(); }
  // index of the element nearest to m (within tol), or -1
  int find(const Mat3c& m, double tol = 1e-6) const;
};

struct ClosureOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Breadth-first closure of unitary generators; throws when the element
// count exceeds the safety bound. Elements are compared as matrices in
// U(3) (no projective identification).
GroupClosure close_group(const std::vector<Mat3c>& generators, int safety_bound,
                         double tol = 1e-6);

// Evaluates the defining relation words of G_{k,3}; returns the largest
// distance to the identity.
double verify_relations(int k);
double relations_residual(const Mat3c& r1, const Mat3c& r2, const Mat3c& r3, int k);

// Number of elements commuting with every generator.
int center_order(const GroupClosure& g);

struct TessellationReport {
  int k = 0;
  int order = 0;
  int faces = 0;           // coset count (= order)
  int vertices = 0;        // Σ cosets of the three vertex stabilizers
  int edges = 0;           // Σ cosets of the edge involutions
  std::array<int, 3> vertex_orbits{};  // cosets of the dihedral stabilizers
  std::array<int, 3> dihedral_orders{};
  double relations_residual = 0;
  int center = 0;
  double gauss_bonnet_integral = 0;  // Σ angle defects over the tiles
  int chi_formula = 0;               // k(3-k)
  int chi_euler = 0;                 // V - E + F
  int chi_gauss_bonnet = 0;
  int genus = 0;        // 1 + k(k-3)/2 for the ℂP² surface
  int lift_degree = 0;  // 3 when 3 | k, else 1
  long long lifted_genus = 0;
  int enlarged_order = 0;  // with the extra Lagrangian reflection (measured)
  double min_separation = 0;
};

TessellationReport tessellation_report(int k);

struct VertexFiniteness {
  bool rational = false;
  int denominator = 0;   // θ/2π = p/q in lowest terms when rational
  int dihedral_order = 0;  // closure of the two adjacent reflections
};

struct FinitenessReport {
  std::vector<VertexFiniteness> vertices;
  bool finite_type = false;
};

// Rationality via continued fractions (denominator ≤ 1000) plus the
// actual two-generator closure at each vertex.
FinitenessReport finiteness_test(const PolygonGamma& gamma, int denom_bound = 1000);

}  // namespace slag
