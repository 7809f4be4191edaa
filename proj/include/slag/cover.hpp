#pragma once

#include "slag/grid.hpp"
#include "slag/weierstrass.hpp"

#include <array>
#include <vector>

namespace slag {

// Threefold covering π₃ : T → ℂP¹ of the hexagonal torus branched over
// {0, 1, -1}, realized as z ↦ v/℘′(z) with the equianharmonic ℘ and
// v = ℘′((1+τ)/3). Lattice points map to 0, the branch points ±(1+τ)/3 to ±1.
class BranchedCover {
 public:
  BranchedCover();

  cd tau() const { return wp_.tau(); }
  const WeierstrassP& weierstrass() const { return wp_; }
  cd v() const { return v_; }
  const std::array<cd, 3>& branch_points() const { return branch_points_; }
  const std::array<cd, 3>& branch_values() const { return branch_values_; }

  // π₃(z); exact 0 at lattice points within pole_tol
  cd map(cd z, double pole_tol = 1e-8) const;
  // analytic derivative dπ₃/dz = -v ℘″/℘′² (℘″ = 6℘² for g₂ = 0)
  cd map_derivative(cd z) const;
  // pullback coefficient of (dw)³/(w²(w²-1)²); constant λ in theory
  cd pullback_coefficient(cd z) const;
  cd expected_constant() const;  // 27 v³ / (2 g₃)

  struct PullbackField {
    GridC field;        // zero on excluded nodes
    Grid2<char> excluded;
    double constancy = 0;  // max |field - expected| over included nodes
    int included = 0;
  };
  // field on the n×n torus grid, excluding disks around branch points and poles
  PullbackField pullback_field(int n, double exclusion_radius = 0.08) const;

  struct PreimageCount {
    int roots = 0;        // distinct preimage locations
    int multiplicity = 0; // total winding (the covering degree)
  };
  // preimages of w_target counted by cellwise winding of ℘′ - v/w_target
  PreimageCount count_preimages(cd w_target, int cells = 48) const;

  // candidate logarithmic coefficients at the branch points for the (3,3,k)
  // configuration: smooth pushed-down metric forces β = 3/m - 1 for a
  // branch value of upstairs order m, so (0, 0, 3/k - 1) at (V+, V-, V0).
  static std::array<double, 3> candidate_betas(int k);

 private:
  WeierstrassP wp_;
  cd v_;
  std::array<cd, 3> branch_points_;
  std::array<cd, 3> branch_values_;
};

}  // namespace slag
