#pragma once

#include "slag/laplace.hpp"
#include "slag/patch.hpp"
#include "slag/wedge.hpp"

#include <optional>

namespace slag {

// Gauss map u* = e1 ∧ e2 with the measured conformal factor against 2 - K.
struct GaussMapResult {
  Grid2<Wedge2> field;
  double factor_residual = 0;  // sup |measured - (2-K)| over interior nodes
};

GaussMapResult gauss_map(const DiscretePatch& p);

// Common shape of the polar/bipolar eigenmap reports.
struct EigenMapResult {
  Grid2<Wedge2> field;
  double unit_defect = 0;      // max ||field| - 1|
  double w8_defect = 0;        // max |⟨field, ϖ♯⟩| (W⁸ membership, when claimed)
  double factor_residual = 0;  // conformal factor against the stated value
  double laplace_residual = 0; // sup |Δf - λ(K) f| with the stated eigenvalue
};

// u*₊ = (e1∧e2 + n1∧n2)/√2: factor 3-2K, Δu*₊ = -2(3-2K)u*₊, lies in W⁸.
EigenMapResult polar_map(const DiscretePatch& p);

// u*₋ = (e1∧e2 - n1∧n2)/√2: Δu*₋ = -2u*₋; identified with the position.
EigenMapResult polar_minus_map(const DiscretePatch& p);

// u_* = sqrt(3/2)(e3∧n3 - ϖ♯/3): factor 3, Δu_* = -6u_*, lies in W⁸.
EigenMapResult bipolar_map(const DiscretePatch& p);

// dim 𝔊(Σ): rank of the 8 × samples matrix of u_ξ over an su(3) basis.
int killing_jacobi_dim(const DiscretePatch& p, double rel_threshold = 1e-8);

struct ProjectionIdentity {
  double cross_check = 0;      // Lemma 7.2 two-way evaluation gap
  double laplace_residual = 0; // sup |Δu_v + 6u_v - 2|
  std::optional<double> mean_value;  // ∫ (u_v - 1/3) dvol for closed patches
};

ProjectionIdentity projection_length_identity(const DiscretePatch& p, const Vec3c& v);

struct DistanceSweep {
  double max_distance = 0;   // max over probes of dist_FS(q, patch)
  double bound = 0;          // arccos(1/sqrt(3)) + 2 * mesh diameter
  double mesh_diameter = 0;
  int probes = 0;
};

DistanceSweep distance_bound_check(const DiscretePatch& p, int probes, unsigned seed = 20240501);

}  // namespace slag
