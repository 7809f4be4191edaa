#include "slag/integrate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace slag {

namespace {

// exp of an anti-Hermitian 3x3 via the Hermitian eigendecomposition of iΩ.
Mat3c exp_su3(const Mat3c& omega) {
  Mat3c H = cd(0, 1) * omega;
  H = cd(0.5) * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat3c> eig(H);
  Vec3c phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, -eig.eigenvalues()(k));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

// One edge step: U(1) = U(0)·exp(Ω), Ω from the two-point Gauss-Magnus rule
// for right-multiplication systems dU = U·A(t).
Mat3c edge_transport(const AdmissibleTriple& t, int i0, int j0, int dir) {
  const double g1 = 0.5 - std::sqrt(3.0) / 6.0, g2 = 0.5 + std::sqrt(3.0) / 6.0;
  Mat3c A1 = connection_from_triple(t, {i0, j0, dir, g1}).psi();
  Mat3c A2 = connection_from_triple(t, {i0, j0, dir, g2}).psi();
  Mat3c omega = 0.5 * (A1 + A2) + (std::sqrt(3.0) / 12.0) * (A1 * A2 - A2 * A1);
  return exp_su3(omega);
}

}  // namespace

IntegrationResult integrate_frame(const AdmissibleTriple& triple, const Mat3c& seed,
                                  double admissibility_tol_factor) {
  FrameSU3 f{seed};
  f.require_valid(1e-9);
  double dx = triple.max_step();
  double adm_tol = admissibility_tol_factor * dx * dx;
  ResidualField adm = admissibility_residual(triple);
  if (adm.sup > adm_tol) throw InadmissibleTriple(adm.sup, adm_tol);

  int n1 = triple.n1, n2 = triple.n2;
  IntegrationResult out;
  out.admissibility = adm.sup;

  // per-edge transports, cached for the sweep and the holonomy report
  Grid2<Mat3c> E1(n1, n2, Mat3c::Identity());  // edge (i,j) -> (i+1,j), i < n1-1
  Grid2<Mat3c> E2(n1, n2, Mat3c::Identity());  // edge (i,j) -> (i,j+1), j < n2-1
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i + 1 < n1; ++i) E1(i, j) = edge_transport(triple, i, j, 1);
  for (int j = 0; j + 1 < n2; ++j)
    for (int i = 0; i < n1; ++i) E2(i, j) = edge_transport(triple, i, j, 2);

  DiscretePatch& p = out.patch;
  p.n1 = n1;
  p.n2 = n2;
  p.periodic1 = false;  // the immersion of the fundamental domain need not close up
  p.periodic2 = false;
  p.pos = Grid2<Vec3c>(n1, n2);
  p.frame = Grid2<Mat3c>(n1, n2);
  p.chart = triple.chart;
  p.has_chart = true;
  p.u = triple.u;
  p.cubic = triple.h;
  p.gaussK = curvature_field(triple.u, triple.chart, triple.periodic1, triple.periodic2);

  auto place = [&](int i, int j, const Mat3c& U) {
    double drift = (U.adjoint() * U - Mat3c::Identity()).cwiseAbs().maxCoeff();
    out.max_drift = std::max(out.max_drift, drift);
    if (drift > 1e-6)
      throw IntegrationFailure("frame drift " + std::to_string(drift) +
                               " beyond 1e-6 before re-projection");
    p.frame(i, j) = FrameSU3::project_su3(U);
    p.pos(i, j) = p.frame(i, j).col(2);
  };

  place(0, 0, seed);
  for (int i = 0; i + 1 < n1; ++i) place(i + 1, 0, p.frame(i, 0) * E1(i, 0));
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j + 1 < n2; ++j) place(i, j + 1, p.frame(i, j) * E2(i, j));

  for (int j = 0; j + 1 < n2; ++j)
    for (int i = 0; i + 1 < n1; ++i) {
      Mat3c loop = E1(i, j) * E2(i + 1, j) * E1(i, j + 1).inverse() * E2(i, j).inverse();
      double m = (loop - Mat3c::Identity()).norm();
      out.holonomy.max_cell = std::max(out.holonomy.max_cell, m);
      out.holonomy.total += m;
      ++out.holonomy.cells;
    }
  return out;
}

}  // namespace slag
