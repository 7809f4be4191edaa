#pragma once

#include "slag/grid.hpp"

#include <Eigen/Dense>

namespace slag {

// Discretized admissible triple (Σ, 𝔤, Φ): conformal grid domain,
// log-conformal factor u with 𝔤 = e^{2u}|dz|², cubic coefficient h with
// Φ = h (dz)³ in the grid coordinate, and space-form constant c.
struct AdmissibleTriple {
  Chart chart;
  int n1 = 0, n2 = 0;
  bool periodic1 = false, periodic2 = false;
  GridD u;
  GridC h;
  double c = 1.0;
  // associated-family bookkeeping: h = e^{i phase} h_base, kept so that the
  // composition law of the S¹ family is exact on stored fields
  GridC h_base;
  double family_phase = 0.0;

  double max_step() const { return std::max(std::abs(chart.step1), std::abs(chart.step2)); }
  void set_base() {
    h_base = h;
    family_phase = 0.0;
  }
};

// Flat Laplacian in the chart coordinate for a (possibly non-orthogonal)
// affine grid. For the hexagonal lattice this reduces to the uniform
// 7-point stencil with weight 2/3.
struct ParallelogramStencil {
  double w1 = 0;       // (±1, 0)
  double w2 = 0;       // (0, ±1)
  double wd = 0;       // diagonal pair
  int d1 = 1, d2 = 1;  // diagonal offset (d1, d2) and its negative
  double center = 0;
};

ParallelogramStencil laplace_stencil(const Chart& chart);

GridD flat_laplacian(const GridD& f, const Chart& chart, bool periodic1, bool periodic2);

// Gaussian curvature K = -e^{-2u} Δu of 𝔤 = e^{2u}|dz|² (interior/periodic
// nodes; boundary copied from one-sided values is not needed by callers).
GridD curvature_field(const GridD& u, const Chart& chart, bool periodic1, bool periodic2);

struct ResidualField {
  GridD field;
  double sup = 0;
};

// |K - (c - 2|h|² e^{-6u})| with the discrete curvature above.
ResidualField admissibility_residual(const AdmissibleTriple& t);

// Discrete Cauchy-Riemann residual |∂̄h| of the cubic coefficient.
ResidualField dbar_residual(const AdmissibleTriple& t);

// Simons-type identity residual |−ΔK − 12K‖h‖² − 8‖h₁‖²| with norms and
// Laplacian taken in 𝔤; h₁ from dh = −3ihρ + h₁(ω¹+iω²).
ResidualField simons_residual(const AdmissibleTriple& t);

struct FlatCheckResult {
  GridD curvature;  // discrete curvature of g̃ = ((c-K)/2)^{1/3} 𝔤
  double sup = 0;
  double margin = 0;  // min of c - K over the grid
};

// Theorem-8.2 flatness check; throws DomainError when K ≥ c somewhere.
FlatCheckResult flat_check_scaled_metric(const GridD& u, double c, const Chart& chart,
                                         bool periodic1, bool periodic2);

// Φ ↦ e^{iτ}Φ member of the associated family.
AdmissibleTriple associated_family(const AdmissibleTriple& t, double tau);

// Values of the connection forms of Eqs. (11)-(13) on a grid edge.
// α = [[0, ρ, ω¹], [-ρ, 0, ω²], [-ω¹, -ω², 0]], β has the trace-free
// upper-left 2x2 block with β¹₁ - iβ¹₂ = (a - ib)(ω¹ + iω²).
struct ConnectionSample {
  double rho = 0, w1 = 0, w2 = 0, b11 = 0, b12 = 0;

  Eigen::Matrix3d alpha() const;
  Eigen::Matrix3d beta() const;
  Mat3c psi() const;  // α + iβ ∈ su(3)
};

struct EdgeRef {
  int i0 = 0, j0 = 0;  // from node
  int dir = 1;         // 1 or 2
  double t = 0.5;      // sample position along the edge
};

ConnectionSample connection_from_triple(const AdmissibleTriple& t, const EdgeRef& e);

}  // namespace slag
