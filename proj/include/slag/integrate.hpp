#pragma once

#include "slag/patch.hpp"
#include "slag/triple.hpp"

namespace slag {

struct InadmissibleTriple : std::runtime_error {
  double residual;
  InadmissibleTriple(double r, double tol)
      : std::runtime_error("triple admissibility residual " + std::to_string(r) +
                           " exceeds tolerance " + std::to_string(tol)),
        residual(r) {}
};

struct IntegrationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HolonomyReport {
  double max_cell = 0;  // max Frobenius mismatch over plaquettes
  double total = 0;     // sum over plaquettes
  int cells = 0;
};

struct IntegrationResult {
  DiscretePatch patch;
  HolonomyReport holonomy;
  double max_drift = 0;        // worst pre-projection unitarity defect
  double admissibility = 0;    // residual of the input triple
};

// Integrate the linear system d(e,n) = (e,n)·[[α,-β],[β,α]] over the grid:
// a 4th-order (two-point Magnus) step per edge with the exponential taken
// in SU(3), row-major spanning tree (first row, then columns), polar
// re-projection each step. Position = e₃.
IntegrationResult integrate_frame(const AdmissibleTriple& triple, const Mat3c& seed,
                                  double admissibility_tol_factor = 10.0);

}  // namespace slag
