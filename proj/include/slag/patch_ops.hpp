#pragma once

#include "slag/patch.hpp"

#include <vector>

namespace slag {

struct CubicRecovery {
  GridC h;             // recovered cubic coefficient H with Φ = H dz³
  double dbar_sup = 0; // holomorphy residual of the recovered field
};

// Recover the cubic coefficient from frame differences: the n-components
// of de₁ per Eq. (12) give (a - ib), and H = e^{3u}(a - ib).
CubicRecovery cubic_from_patch(const DiscretePatch& p);

enum class CurveClass { AntiSlag, Complex, Neither };

struct CurveReport {
  CurveClass cls = CurveClass::Neither;
  double geodesic_residual = 0;
  double real_defect = 0;  // |Re Φ(t³)| / |Φ(t³)|
  double imag_defect = 0;  // |Im Φ(t³)| / |Φ(t³)|
};

// Classify a parameter polyline (grid steps, possibly wrapping) through a
// chart patch: geodesic + Φ(t³) purely imaginary -> anti-special-Lagrangian,
// geodesic + Φ(t³) real -> complex.
CurveReport classify_curve(const DiscretePatch& p, const std::vector<std::pair<int, int>>& nodes,
                           double tol = 1e-8);

struct UmbilicEntry {
  cd location;  // chart position of the cell center
  int degree;
};

struct UmbilicDivisor {
  std::vector<UmbilicEntry> entries;
  int degree_sum = 0;
};

struct AmbiguousZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Zeros of a complex grid field by winding numbers around grid cells.
// Periodic fields scan all cells; open fields scan interior cells only.
UmbilicDivisor umbilic_divisor(const GridC& h, const Chart& chart, bool periodic1,
                               bool periodic2, double edge_tol = 1e-9);

}  // namespace slag
