#include "slag/patch_ops.hpp"

#include <cmath>

namespace slag {

CubicRecovery cubic_from_patch(const DiscretePatch& p) {
  if (!p.has_chart) throw DomainError("cubic recovery needs a conformal chart");
  // ∂_z e1 with the real inner product extended bilinearly: store e1, Je1,
  // Je2 as real 6-vectors
  Grid2<Vec6d> e1(p.n1, p.n2);
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) e1(i, j) = to_real6(p.frame(i, j).col(0));

  CubicRecovery out;
  out.h = GridC(p.n1, p.n2, cd(0, 0));
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      if (!p.interior(i, j)) continue;
      Vec6d d1 = diff4_1(e1, i, j, p.periodic1);
      Vec6d d2 = diff4_2(e1, i, j, p.periodic2);
      // complexified ∂_z per real component
      Eigen::Matrix<cd, 6, 1> dz;
      for (int k = 0; k < 6; ++k) {
        cd fz, fzb;
        chart_dz(p.chart, cd(d1(k), 0), cd(d2(k), 0), fz, fzb);
        dz(k) = fz;
      }
      Vec6d je1 = to_real6(apply_J(p.frame(i, j).col(0)));
      Vec6d je2 = to_real6(apply_J(p.frame(i, j).col(1)));
      cd q1 = 0, q2 = 0;
      for (int k = 0; k < 6; ++k) {
        q1 += dz(k) * je1(k);
        q2 += dz(k) * je2(k);
      }
      // Q = e^u (a - ib); H = e^{2u} Q
      out.h(i, j) = std::exp(2.0 * p.u(i, j)) * (q1 - cd(0, 1) * q2);
    }
  // holomorphy residual of the recovered field (away from the margin)
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      if (!p.interior(i, j, 2)) continue;
      cd d1 = central_diff1(out.h, i, j, p.periodic1);
      cd d2 = central_diff2(out.h, i, j, p.periodic2);
      cd fz, fzb;
      chart_dz(p.chart, d1, d2, fz, fzb);
      out.dbar_sup = std::max(out.dbar_sup, std::abs(fzb));
    }
  return out;
}

CurveReport classify_curve(const DiscretePatch& p, const std::vector<std::pair<int, int>>& nodes,
                           double tol) {
  if (!p.has_chart) throw DomainError("classify_curve needs a conformal chart");
  if (nodes.size() < 3) throw DomainError("classify_curve: polyline too short");

  const GridC* H = nullptr;
  CubicRecovery rec;
  if (p.cubic.size() > 0) {
    H = &p.cubic;
  } else {
    rec = cubic_from_patch(p);
    H = &rec.h;
  }

  auto wrap1 = [&](int i) { return p.periodic1 ? ((i % p.n1) + p.n1) % p.n1 : i; };
  auto wrap2 = [&](int j) { return p.periodic2 ? ((j % p.n2) + p.n2) % p.n2 : j; };

  CurveReport rep;
  double max_turn = 0;
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    cd seg = p.chart.z(nodes[k + 1].first, nodes[k + 1].second) -
             p.chart.z(nodes[k].first, nodes[k].second);
    if (std::abs(seg) == 0.0) throw DomainError("classify_curve: repeated node");
    int i = wrap1(nodes[k].first), j = wrap2(nodes[k].second);
    double u = p.u(i, j);
    // geodesic curvature: tangent turning plus the connection form ρ
    if (k + 2 < nodes.size()) {
      cd seg2 = p.chart.z(nodes[k + 2].first, nodes[k + 2].second) -
                p.chart.z(nodes[k + 1].first, nodes[k + 1].second);
      double turn = std::arg(seg2 / seg);
      // ρ = u_y dx - u_x dy over the two half-segments
      int i1 = wrap1(nodes[k + 1].first), j1 = wrap2(nodes[k + 1].second);
      cd du1 = central_diff1(p.u, i1, j1, p.periodic1);
      cd du2 = central_diff2(p.u, i1, j1, p.periodic2);
      cd uz, uzb;
      chart_dz(p.chart, du1, du2, uz, uzb);
      double ux = 2.0 * uz.real(), uy = -2.0 * uz.imag();
      cd mid = 0.5 * (seg + seg2);
      double rho = uy * mid.real() - ux * mid.imag();
      double ds = std::exp(p.u(i1, j1)) * 0.5 * (std::abs(seg) + std::abs(seg2));
      max_turn = std::max(max_turn, std::abs(turn + rho) / ds);
    }
    // Φ on the unit tangent
    cd tz = seg / (std::exp(u) * std::abs(seg));
    cd phi = (*H)(i, j) * tz * tz * tz;
    double a = std::abs(phi);
    if (a > 1e-14) {
      rep.real_defect = std::max(rep.real_defect, std::abs(phi.real()) / a);
      rep.imag_defect = std::max(rep.imag_defect, std::abs(phi.imag()) / a);
    }
  }
  rep.geodesic_residual = max_turn;
  if (max_turn <= tol && rep.real_defect <= tol)
    rep.cls = CurveClass::AntiSlag;
  else if (max_turn <= tol && rep.imag_defect <= tol)
    rep.cls = CurveClass::Complex;
  else
    rep.cls = CurveClass::Neither;
  return rep;
}

UmbilicDivisor umbilic_divisor(const GridC& h, const Chart& chart, bool periodic1,
                               bool periodic2, double edge_tol) {
  double hmax = 0;
  for (const auto& v : h.v) hmax = std::max(hmax, std::abs(v));
  if (hmax == 0) throw AmbiguousZero("field vanishes identically");
  for (const auto& v : h.v)
    if (std::abs(v) < edge_tol * hmax)
      throw AmbiguousZero("zero too close to a grid node; shift the grid");

  int m1 = periodic1 ? h.n1 : h.n1 - 1;
  int m2 = periodic2 ? h.n2 : h.n2 - 1;
  auto at = [&](int i, int j) { return h((i % h.n1 + h.n1) % h.n1, (j % h.n2 + h.n2) % h.n2); };

  // per-cell winding of the piecewise-linear value loop; cells with a near-π
  // corner jump alias and are refined by a larger loop below
  Grid2<int> wind(m1, m2, 0);
  Grid2<char> fuzzy(m1, m2, 0);
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      const cd corner[5] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1), at(i, j)};
      double total = 0;
      for (int k = 0; k < 4; ++k) {
        double d = std::arg(corner[k + 1] / corner[k]);
        if (std::abs(d) > 0.75 * kPi) fuzzy(i, j) = 1;
        total += d;
      }
      wind(i, j) = (int)std::lround(total / (2 * kPi));
    }

  UmbilicDivisor out;
  Grid2<char> used(m1, m2, 0);
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      if (used(i, j) || (wind(i, j) == 0 && !fuzzy(i, j))) continue;
      // flood-fill the suspicious component
      std::vector<std::pair<int, int>> comp, stack{{i, j}};
      used(i, j) = 1;
      int ilo = i, ihi = i, jlo = j, jhi = j;
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        comp.push_back({a, b});
        ilo = std::min(ilo, a);
        ihi = std::max(ihi, a);
        jlo = std::min(jlo, b);
        jhi = std::max(jhi, b);
        const int da[4] = {1, -1, 0, 0}, db[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          int a2 = a + da[k], b2 = b + db[k];
          if (a2 < 0 || a2 >= m1 || b2 < 0 || b2 >= m2) continue;
          if (used(a2, b2) || (wind(a2, b2) == 0 && !fuzzy(a2, b2))) continue;
          used(a2, b2) = 1;
          stack.push_back({a2, b2});
        }
      }
      // winding around the bounding box grown by one cell
      int Ilo = ilo - 1, Ihi = ihi + 2, Jlo = jlo - 1, Jhi = jhi + 2;  // node range
      if (!periodic1) {
        Ilo = std::max(Ilo, 0);
        Ihi = std::min(Ihi, h.n1 - 1);
      }
      if (!periodic2) {
        Jlo = std::max(Jlo, 0);
        Jhi = std::min(Jhi, h.n2 - 1);
      }
      std::vector<cd> loop;
      for (int a = Ilo; a < Ihi; ++a) loop.push_back(at(a, Jlo));
      for (int b = Jlo; b < Jhi; ++b) loop.push_back(at(Ihi, b));
      for (int a = Ihi; a > Ilo; --a) loop.push_back(at(a, Jhi));
      for (int b = Jhi; b > Jlo; --b) loop.push_back(at(Ilo, b));
      loop.push_back(loop.front());
      double total = 0;
      for (size_t k = 0; k + 1 < loop.size(); ++k) {
        double d = std::arg(loop[k + 1] / loop[k]);
        if (std::abs(d) > 0.9 * kPi)
          throw AmbiguousZero("zero too close to a cell edge; shift the grid");
        total += d;
      }
      int degree = (int)std::lround(total / (2 * kPi));
      if (degree != 0) {
        cd center = chart.z(0.5 * (Ilo + Ihi), 0.5 * (Jlo + Jhi));
        out.entries.push_back({center, degree});
        out.degree_sum += degree;
      }
    }
  return out;
}

}  // namespace slag
