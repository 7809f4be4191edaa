#include "slag/laplace.hpp"

#include <cmath>

namespace slag {

namespace {

// unwrapped indices give the chart displacement, wrapped ones the field values
double metric_edge_length(const DiscretePatch& p, int a0u, int a1u, int b0u, int b1u, int a0,
                          int a1, int b0, int b1) {
  if (p.has_chart) {
    cd dz = p.chart.z(b0u, b1u) - p.chart.z(a0u, a1u);
    double um = 0.5 * (p.u(a0, a1) + p.u(b0, b1));
    return std::exp(um) * std::abs(dz);
  }
  return (p.pos(b0, b1) - p.pos(a0, a1)).norm();
}

}  // namespace

LaplaceWeights build_cotan_weights(const DiscretePatch& p) {
  LaplaceWeights L;
  L.n1 = p.n1;
  L.n2 = p.n2;
  L.periodic1 = p.periodic1;
  L.periodic2 = p.periodic2;

  // triangulate along the shorter diagonal of the chart cell
  int diag = 1;
  if (p.has_chart) {
    double dplus = std::abs(p.chart.step1 + p.chart.step2);
    double dminus = std::abs(p.chart.step1 - p.chart.step2);
    diag = (dplus <= dminus) ? 1 : -1;
  }
  L.offsets = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, diag}, {-1, -diag}}};
  L.w = Grid2<std::array<double, 6>>(p.n1, p.n2);
  for (auto& a : L.w.v) a.fill(0.0);
  L.area = GridD(p.n1, p.n2, 0.0);
  L.valid = Grid2<char>(p.n1, p.n2, 1);

  auto wrap = [](int i, int n) { return (i % n + n) % n; };
  auto in_range = [&](int i, int j) {
    bool ok1 = p.periodic1 || (i >= 0 && i < p.n1);
    bool ok2 = p.periodic2 || (j >= 0 && j < p.n2);
    return ok1 && ok2;
  };
  auto offset_slot = [&](int di, int dj) {
    for (int k = 0; k < 6; ++k)
      if (L.offsets[k].first == di && L.offsets[k].second == dj) return k;
    return -1;
  };

  int m1 = p.periodic1 ? p.n1 : p.n1 - 1;
  int m2 = p.periodic2 ? p.n2 : p.n2 - 1;
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      // triangle vertex sets, as unwrapped indices
      std::array<std::array<int, 2>, 3> T1, T2;
      if (diag == 1) {
        T1 = {{{i, j}, {i + 1, j}, {i + 1, j + 1}}};
        T2 = {{{i, j}, {i + 1, j + 1}, {i, j + 1}}};
      } else {
        T1 = {{{i, j}, {i + 1, j}, {i, j + 1}}};
        T2 = {{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
      }
      for (const auto& T : {T1, T2}) {
        // metric side lengths
        double len[3];
        bool ok = true;
        for (int k = 0; k < 3; ++k) {
          auto a = T[k], b = T[(k + 1) % 3];
          if (!in_range(a[0], a[1]) || !in_range(b[0], b[1])) ok = false;
        }
        if (!ok) continue;
        for (int k = 0; k < 3; ++k) {
          auto a = T[k], b = T[(k + 1) % 3];
          len[k] = metric_edge_length(p, a[0], a[1], b[0], b[1], wrap(a[0], p.n1),
                                      wrap(a[1], p.n2), wrap(b[0], p.n1), wrap(b[1], p.n2));
        }
        double s = 0.5 * (len[0] + len[1] + len[2]);
        double ar2 = std::max(0.0, s * (s - len[0]) * (s - len[1]) * (s - len[2]));
        double area = std::sqrt(ar2);
        if (area <= 0) continue;
        for (int k = 0; k < 3; ++k) {
          auto a = T[k], b = T[(k + 1) % 3], c = T[(k + 2) % 3];
          // cot of the angle at c, opposite the edge (a, b)
          double la = len[k];                 // |ab|
          double lb = len[(k + 1) % 3];       // |bc|
          double lc = len[(k + 2) % 3];       // |ca|
          double cot = (lb * lb + lc * lc - la * la) / (4.0 * area);
          int wa0 = wrap(a[0], p.n1), wa1 = wrap(a[1], p.n2);
          int wb0 = wrap(b[0], p.n1), wb1 = wrap(b[1], p.n2);
          int sa = offset_slot(b[0] - a[0], b[1] - a[1]);
          int sb = offset_slot(a[0] - b[0], a[1] - b[1]);
          if (sa >= 0) L.w(wa0, wa1)[sa] += 0.5 * cot;
          if (sb >= 0) L.w(wb0, wb1)[sb] += 0.5 * cot;
          int wc0 = wrap(c[0], p.n1), wc1 = wrap(c[1], p.n2);
          L.area(wc0, wc1) += area / 3.0;
          (void)wc0;
        }
      }
    }

  // nodes with an incomplete one-ring are invalid
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      bool full = p.interior(i, j);
      if (L.area(i, j) <= 0) full = false;
      for (int k = 0; k < 6 && full; ++k) {
        int a = i + L.offsets[k].first, b = j + L.offsets[k].second;
        if (!in_range(a, b)) full = false;
      }
      L.valid(i, j) = full ? 1 : 0;
    }
  return L;
}

}  // namespace slag
