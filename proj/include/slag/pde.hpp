#pragma once

#include "slag/grid.hpp"
#include "slag/triple.hpp"

#include <functional>
#include <vector>

namespace slag {

// Flat domain of the compatibility equation: torus with periods (1, ω) or a
// rectangle with Dirichlet data.
struct FlatDomain {
  enum class Kind { Torus, Rectangle };
  Kind kind = Kind::Torus;
  cd omega{0.5, std::sqrt(3.0) / 2.0};  // hexagonal by default
  double width = 1.0, height = 1.0;
  int n1 = 64, n2 = 64;

  static FlatDomain torus(cd omega, int n);
  static FlatDomain rectangle(double w, double h, int n1, int n2);

  Chart chart() const;
  bool periodic() const { return kind == Kind::Torus; }
};

struct SingularSource {
  cd location;  // snapped to the nearest cell center on construction
  double beta;
};

struct PdeProblem {
  FlatDomain domain;
  double lambda = 1.0;
  std::vector<SingularSource> sources;
  std::function<double(cd)> boundary;  // Dirichlet data, rectangle only

  PdeProblem(FlatDomain d, double lam);
  void add_source(cd where, double beta);

  // analytic singular part s(z) = Σ β_i G(z - p_i) and its Laplacian value
  double singular_part(cd z) const;
  double singular_laplacian() const;  // constant away from sources (torus mean term)
  double constant_solution() const { return std::log(2.0 * lambda * lambda) / 6.0; }
};

struct PdeResidual {
  GridD field;      // pointwise residual, zero on excluded nodes
  double sup = 0;   // over non-excluded nodes
  Grid2<char> excluded;  // boundary nodes and 4Δ source disks
};

// Residual of Δu + e^{2u} - 2λ²e^{-4u} with the Laplacian applied to the
// regular part u - s near sources.
PdeResidual pde_residual(const PdeProblem& prob, const GridD& u);

struct NewtonHistory {
  std::vector<double> residual_sup;  // after each accepted step, starting with the initial
  std::vector<double> sup_error;     // against the caller's reference field, when given
  std::vector<double> step_scale;
  bool converged = false;
  bool used_homotopy = false;  // boundary-data continuation was required
  int iterations = 0;
};

struct NewtonFailure : std::runtime_error {
  NewtonHistory history;
  NewtonFailure(const std::string& w, NewtonHistory h)
      : std::runtime_error(w), history(std::move(h)) {}
};

struct PdeSolution {
  GridD u;  // full field (regular part + singular part at nodes)
  GridD v;  // regular part
  NewtonHistory history;
};

// Damped Newton iteration on the regular part; residual sup-norm target
// 1e-9. An optional reference field is tracked as a per-iteration sup error
// (used by the convergence-tail measurements).
PdeSolution newton_solve(const PdeProblem& prob, const GridD& initial, double tol = 1e-9,
                         const GridD* reference = nullptr);

// newton_solve with the singular split u = v + Σ β ln|z - p|; identical to
// newton_solve when the source list is empty.
PdeSolution singular_solve(const PdeProblem& prob, const GridD& initial_v, double tol = 1e-9,
                           const GridD* reference = nullptr);

// K = -e^{-2u} Δu on the problem's grid.
GridD curvature_of(const PdeProblem& prob, const GridD& u);

// Linearization versus centered finite differences; returns the relative error.
double jacobian_check(const PdeProblem& prob, const GridD& u, const GridD& direction,
                      double step = 1e-5);

// Admissible triple of a solved problem: 𝔤 = e^{2u}|dz|², Φ = λ (dz)³.
AdmissibleTriple triple_from_solution(const PdeProblem& prob, const GridD& u);

}  // namespace slag
