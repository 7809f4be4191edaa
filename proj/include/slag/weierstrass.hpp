#pragma once

#include "slag/types.hpp"

#include <vector>

namespace slag {

// Weierstrass data of the lattice ℤ + τℤ. Invariants from Eisenstein
// q-series; ℘ and ℘′ by the truncated Laurent series inside a safe disk
// with one duplication step outward.
class WeierstrassP {
 public:
  explicit WeierstrassP(cd tau, int laurent_terms = 30);

  cd tau() const { return tau_; }
  cd g2() const { return g2_; }
  cd g3() const { return g3_; }

  // reduce z into the centered fundamental cell
  cd reduce(const cd& z) const;
  // distance from z to the nearest lattice point
  double lattice_distance(const cd& z) const;

  struct Value {
    cd p;   // ℘(z)
    cd dp;  // ℘′(z)
  };
  // throws DomainError when z is within pole_tol of a lattice point
  Value eval(const cd& z, double pole_tol = 1e-6) const;

 private:
  Value series(const cd& z) const;

  cd tau_, g2_, g3_;
  std::vector<cd> coeff_;  // Laurent coefficients c_k of Σ c_k z^{2k-2}
  double inner_radius_ = 0;
  double min_norm_ = 0;
};

// Mean-adjusted Green's function of the torus ℂ/(ℤ+τℤ):
// G(z) = ln|θ₁(πz|τ)/(π θ₁′(0|τ))| - π (Im z)²/Im τ, with
// ΔG = 2π (δ₀ - 1/Im τ) and G(z) = ln|z| + O(1) near 0.
double torus_green(cd z, cd tau);

// log θ₁ and its derivative are exposed for tests
cd theta1(cd v, cd tau);
cd theta1_prime0(cd tau);

}  // namespace slag
