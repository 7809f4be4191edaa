#include "slag/triple.hpp"

#include <cmath>

namespace slag {

ParallelogramStencil laplace_stencil(const Chart& chart) {
  Eigen::Matrix2d M;
  M << chart.step1.real(), chart.step2.real(), chart.step1.imag(), chart.step2.imag();
  Eigen::Matrix2d Gi = (M.transpose() * M).inverse();
  double A = Gi(0, 0), C = Gi(1, 1), B = 2.0 * Gi(0, 1);
  ParallelogramStencil s;
  if (B <= 0) {
    s.d1 = 1;
    s.d2 = -1;  // δ_d = ∂aa - 2∂ab + ∂bb
    s.wd = -B / 2;
  } else {
    s.d1 = 1;
    s.d2 = 1;  // δ_d = ∂aa + 2∂ab + ∂bb
    s.wd = B / 2;
  }
  s.w1 = A - s.wd;
  s.w2 = C - s.wd;
  if (s.w1 <= 0 || s.w2 <= 0)
    throw DomainError("laplace stencil: lattice too oblique for the 7-point scheme");
  s.center = -2.0 * (s.w1 + s.w2 + s.wd);
  return s;
}

GridD flat_laplacian(const GridD& f, const Chart& chart, bool periodic1, bool periodic2) {
  ParallelogramStencil s = laplace_stencil(chart);
  int n1 = f.n1, n2 = f.n2;
  GridD out(n1, n2, 0.0);
  auto wrap = [](int i, int n) { return (i % n + n) % n; };
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      bool in1 = periodic1 || (i > 0 && i < n1 - 1);
      bool in2 = periodic2 || (j > 0 && j < n2 - 1);
      if (!in1 || !in2) continue;
      auto at = [&](int a, int b) {
        return f(periodic1 ? wrap(a, n1) : a, periodic2 ? wrap(b, n2) : b);
      };
      double v = s.center * at(i, j);
      v += s.w1 * (at(i + 1, j) + at(i - 1, j));
      v += s.w2 * (at(i, j + 1) + at(i, j - 1));
      v += s.wd * (at(i + s.d1, j + s.d2) + at(i - s.d1, j - s.d2));
      out(i, j) = v;
    }
  return out;
}

GridD curvature_field(const GridD& u, const Chart& chart, bool periodic1, bool periodic2) {
  GridD lap = flat_laplacian(u, chart, periodic1, periodic2);
  GridD K(u.n1, u.n2, 0.0);
  for (size_t k = 0; k < u.v.size(); ++k) K.v[k] = -std::exp(-2.0 * u.v[k]) * lap.v[k];
  return K;
}

namespace {

bool node_interior(const AdmissibleTriple& t, int i, int j, int margin = 1) {
  bool ok1 = t.periodic1 || (i >= margin && i < t.n1 - margin);
  bool ok2 = t.periodic2 || (j >= margin && j < t.n2 - margin);
  return ok1 && ok2;
}

}  // namespace

ResidualField admissibility_residual(const AdmissibleTriple& t) {
  GridD K = curvature_field(t.u, t.chart, t.periodic1, t.periodic2);
  ResidualField r{GridD(t.n1, t.n2, 0.0), 0.0};
  for (int j = 0; j < t.n2; ++j)
    for (int i = 0; i < t.n1; ++i) {
      if (!node_interior(t, i, j)) continue;
      double target = t.c - 2.0 * std::norm(t.h(i, j)) * std::exp(-6.0 * t.u(i, j));
      double v = std::abs(K(i, j) - target);
      r.field(i, j) = v;
      r.sup = std::max(r.sup, v);
    }
  return r;
}

ResidualField dbar_residual(const AdmissibleTriple& t) {
  ResidualField r{GridD(t.n1, t.n2, 0.0), 0.0};
  for (int j = 0; j < t.n2; ++j)
    for (int i = 0; i < t.n1; ++i) {
      if (!node_interior(t, i, j)) continue;
      cd d1 = central_diff1(t.h, i, j, t.periodic1);
      cd d2 = central_diff2(t.h, i, j, t.periodic2);
      cd hz, hzb;
      chart_dz(t.chart, d1, d2, hz, hzb);
      double v = std::abs(hzb);
      r.field(i, j) = v;
      r.sup = std::max(r.sup, v);
    }
  return r;
}

namespace {

// ∂_z of a real grid field.
void grad_z(const AdmissibleTriple& t, const GridD& f, GridC& fz) {
  fz = GridC(t.n1, t.n2, cd(0, 0));
  for (int j = 0; j < t.n2; ++j)
    for (int i = 0; i < t.n1; ++i) {
      cd d1 = central_diff1(f, i, j, t.periodic1);
      cd d2 = central_diff2(f, i, j, t.periodic2);
      cd z, zb;
      chart_dz(t.chart, d1, d2, z, zb);
      fz(i, j) = z;
    }
}

void grad_z(const AdmissibleTriple& t, const GridC& f, GridC& fz, GridC& fzb) {
  fz = GridC(t.n1, t.n2, cd(0, 0));
  fzb = fz;
  for (int j = 0; j < t.n2; ++j)
    for (int i = 0; i < t.n1; ++i) {
      cd d1 = central_diff1(f, i, j, t.periodic1);
      cd d2 = central_diff2(f, i, j, t.periodic2);
      chart_dz(t.chart, d1, d2, fz(i, j), fzb(i, j));
    }
}

}  // namespace

ResidualField simons_residual(const AdmissibleTriple& t) {
  if (t.c != 1.0) throw DomainError("simons residual requires c = 1");
  // K through the compatibility relation (14); for admissible data this is
  // the Gaussian curvature and keeps closed-form inputs exactly residual-free
  GridD K(t.n1, t.n2, 0.0);
  for (size_t k = 0; k < K.v.size(); ++k)
    K.v[k] = t.c - 2.0 * std::norm(t.h.v[k]) * std::exp(-6.0 * t.u.v[k]);
  GridD lapK = flat_laplacian(K, t.chart, t.periodic1, t.periodic2);
  GridC uz, Hz, Hzb;
  grad_z(t, t.u, uz);
  grad_z(t, t.h, Hz, Hzb);
  ResidualField r{GridD(t.n1, t.n2, 0.0), 0.0};
  // second-order boundary effects contaminate one extra ring of the
  // K-Laplacian, keep two nodes away from open edges
  for (int j = 0; j < t.n2; ++j)
    for (int i = 0; i < t.n1; ++i) {
      if (!node_interior(t, i, j, 2)) continue;
      double e2u = std::exp(2.0 * t.u(i, j));
      double lapK_g = lapK(i, j) / e2u;
      double h_norm2 = std::norm(t.h(i, j)) * std::exp(-6.0 * t.u(i, j));
      cd h1 = std::exp(-4.0 * t.u(i, j)) * (Hz(i, j) - 6.0 * t.h(i, j) * uz(i, j));
      double v = std::abs(-lapK_g - 12.0 * K(i, j) * h_norm2 - 8.0 * std::norm(h1));
      r.field(i, j) = v;
      r.sup = std::max(r.sup, v);
    }
  return r;
}

FlatCheckResult flat_check_scaled_metric(const GridD& u, double c, const Chart& chart,
                                         bool periodic1, bool periodic2) {
  GridD K = curvature_field(u, chart, periodic1, periodic2);
  int n1 = u.n1, n2 = u.n2;
  FlatCheckResult out;
  out.margin = 1e300;
  GridD w(n1, n2, 0.0);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      bool in1 = periodic1 || (i > 0 && i < n1 - 1);
      bool in2 = periodic2 || (j > 0 && j < n2 - 1);
      if (in1 && in2) out.margin = std::min(out.margin, c - K(i, j));
    }
  if (out.margin <= 0)
    throw DomainError("scaled metric: K >= c on the grid (margin " + std::to_string(out.margin) +
                      ")");
  // conformal factor of g̃: w̃ = u + ln((c-K)/2)/6; boundary rows reuse the
  // nearest interior curvature so the second Laplacian has data
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      int ii = periodic1 ? i : std::clamp(i, 1, n1 - 2);
      int jj = periodic2 ? j : std::clamp(j, 1, n2 - 2);
      w(i, j) = u(i, j) + std::log((c - K(ii, jj)) / 2.0) / 6.0;
    }
  GridD lapw = flat_laplacian(w, chart, periodic1, periodic2);
  out.curvature = GridD(n1, n2, 0.0);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      bool in1 = periodic1 || (i >= 2 && i < n1 - 2);
      bool in2 = periodic2 || (j >= 2 && j < n2 - 2);
      if (!in1 || !in2) continue;
      double v = -std::exp(-2.0 * w(i, j)) * lapw(i, j);
      out.curvature(i, j) = v;
      out.sup = std::max(out.sup, std::abs(v));
    }
  return out;
}

AdmissibleTriple associated_family(const AdmissibleTriple& t, double tau) {
  AdmissibleTriple out = t;
  if (out.h_base.size() == 0) out.set_base();
  out.family_phase = out.family_phase + tau;
  cd rot = std::polar(1.0, out.family_phase);
  for (size_t k = 0; k < out.h.v.size(); ++k) out.h.v[k] = rot * out.h_base.v[k];
  return out;
}

Eigen::Matrix3d ConnectionSample::alpha() const {
  Eigen::Matrix3d a;
  a << 0, rho, w1, -rho, 0, w2, -w1, -w2, 0;
  return a;
}

Eigen::Matrix3d ConnectionSample::beta() const {
  Eigen::Matrix3d b;
  b << b11, b12, 0, b12, -b11, 0, 0, 0, 0;
  return b;
}

Mat3c ConnectionSample::psi() const {
  return alpha().cast<cd>() + cd(0, 1) * beta().cast<cd>();
}

ConnectionSample connection_from_triple(const AdmissibleTriple& t, const EdgeRef& e) {
  int i1 = e.i0 + (e.dir == 1 ? 1 : 0);
  int j1 = e.j0 + (e.dir == 2 ? 1 : 0);
  auto inside = [&](int i, int j) {
    bool ok1 = t.periodic1 || (i >= 0 && i < t.n1);
    bool ok2 = t.periodic2 || (j >= 0 && j < t.n2);
    return ok1 && ok2;
  };
  if (!inside(e.i0, e.j0) || !inside(i1, j1)) throw DomainError("connection: edge outside domain");
  auto wrap = [](int i, int n) { return (i % n + n) % n; };
  int a0 = t.periodic1 ? wrap(e.i0, t.n1) : e.i0, b0 = t.periodic2 ? wrap(e.j0, t.n2) : e.j0;
  int a1 = t.periodic1 ? wrap(i1, t.n1) : i1, b1 = t.periodic2 ? wrap(j1, t.n2) : j1;

  auto node_grad = [&](int i, int j, double& ux, double& uy) {
    cd d1 = central_diff1(t.u, i, j, t.periodic1);
    cd d2 = central_diff2(t.u, i, j, t.periodic2);
    cd fz, fzb;
    chart_dz(t.chart, d1, d2, fz, fzb);
    ux = 2.0 * fz.real();
    uy = -2.0 * fz.imag();
  };
  double ux0, uy0, ux1, uy1;
  node_grad(a0, b0, ux0, uy0);
  node_grad(a1, b1, ux1, uy1);
  double s = e.t;
  double u = (1 - s) * t.u(a0, b0) + s * t.u(a1, b1);
  cd h = (1 - s) * t.h(a0, b0) + s * t.h(a1, b1);
  double ux = (1 - s) * ux0 + s * ux1, uy = (1 - s) * uy0 + s * uy1;

  cd dz = (e.dir == 1) ? t.chart.step1 : t.chart.step2;
  cd omega = std::exp(u) * dz;  // ω¹ + iω² on the edge
  ConnectionSample c;
  c.w1 = omega.real();
  c.w2 = omega.imag();
  c.rho = uy * dz.real() - ux * dz.imag();  // ρ = u_y dx - u_x dy
  cd ab = h * std::exp(-3.0 * u);           // a - ib
  cd w = ab * omega;                         // β¹₁ - iβ¹₂
  c.b11 = w.real();
  c.b12 = -w.imag();
  return c;
}

}  // namespace slag
