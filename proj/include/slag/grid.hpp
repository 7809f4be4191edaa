#pragma once

#include "slag/types.hpp"

#include <vector>

namespace slag {

// Row-major 2D field, node (i, j) at index i + n1*j.
template <class T>
struct Grid2 {
  int n1 = 0, n2 = 0;
  std::vector<T> v;

  Grid2() = default;
  Grid2(int a, int b, T fill = T{}) : n1(a), n2(b), v(size_t(a) * b, fill) {}

  T& operator()(int i, int j) { return v[size_t(i) + size_t(n1) * j]; }
  const T& operator()(int i, int j) const { return v[size_t(i) + size_t(n1) * j]; }
  size_t size() const { return v.size(); }
};

using GridD = Grid2<double>;
using GridC = Grid2<cd>;

// Affine chart grid index -> conformal coordinate z.
struct Chart {
  cd origin{0.0, 0.0};
  cd step1{1.0, 0.0};  // dz per unit step of the first index
  cd step2{0.0, 1.0};

  cd z(double i, double j) const { return origin + i * step1 + j * step2; }
};

// Derivatives (∂_z f, ∂_zbar f) from the two grid-direction derivatives
// (per index step), valid for any ℝ-independent pair of complex steps.
inline void chart_dz(const Chart& c, cd d1, cd d2, cd& fz, cd& fzbar) {
  // d1 = step1 fz + conj(step1) fzbar ; d2 = step2 fz + conj(step2) fzbar
  cd a = c.step1, b = std::conj(c.step1), p = c.step2, q = std::conj(c.step2);
  cd det = a * q - b * p;
  fz = (d1 * q - b * d2) / det;
  fzbar = (a * d2 - d1 * p) / det;
}

// Centered difference per index step in direction 1/2 with optional wrap.
template <class T>
T central_diff1(const Grid2<T>& g, int i, int j, bool periodic) {
  int n = g.n1;
  if (periodic) return (g((i + 1) % n, j) - g((i - 1 + n) % n, j)) * 0.5;
  if (i == 0) return -1.5 * g(0, j) + 2.0 * g(1, j) - 0.5 * g(2, j);
  if (i == n - 1) return 1.5 * g(n - 1, j) - 2.0 * g(n - 2, j) + 0.5 * g(n - 3, j);
  return (g(i + 1, j) - g(i - 1, j)) * 0.5;
}

template <class T>
T central_diff2(const Grid2<T>& g, int i, int j, bool periodic) {
  int n = g.n2;
  if (periodic) return (g(i, (j + 1) % n) - g(i, (j - 1 + n) % n)) * 0.5;
  if (j == 0) return -1.5 * g(i, 0) + 2.0 * g(i, 1) - 0.5 * g(i, 2);
  if (j == n - 1) return 1.5 * g(i, n - 1) - 2.0 * g(i, n - 2) + 0.5 * g(i, n - 3);
  return (g(i, j + 1) - g(i, j - 1)) * 0.5;
}

// Catmull-Rom bicubic sample of a doubly periodic grid field at fractional
// index coordinates (x along direction 1, y along direction 2).
inline double bicubic_periodic(const Grid2<double>& g, double x, double y) {
  auto cube = [](double f, double pm1, double p0, double p1, double p2) {
    return p0 + 0.5 * f * (p1 - pm1 + f * (2 * pm1 - 5 * p0 + 4 * p1 - p2 +
                                           f * (3 * (p0 - p1) + p2 - pm1)));
  };
  int i0 = (int)std::floor(x), j0 = (int)std::floor(y);
  double fx = x - i0, fy = y - j0;
  auto at = [&](int a, int b) {
    return g(((a % g.n1) + g.n1) % g.n1, ((b % g.n2) + g.n2) % g.n2);
  };
  double rows[4];
  for (int r = -1; r <= 2; ++r)
    rows[r + 1] = cube(fx, at(i0 - 1, j0 + r), at(i0, j0 + r), at(i0 + 1, j0 + r),
                       at(i0 + 2, j0 + r));
  return cube(fy, rows[0], rows[1], rows[2], rows[3]);
}

// fourth-order centered differences; callers keep two nodes from open edges
template <class T>
T diff4_1(const Grid2<T>& g, int i, int j, bool periodic) {
  int n = g.n1;
  auto at = [&](int a) { return g(periodic ? ((a % n) + n) % n : a, j); };
  if (!periodic && (i < 2 || i > n - 3)) return central_diff1(g, i, j, periodic);
  return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) * (1.0 / 12.0);
}

template <class T>
T diff4_2(const Grid2<T>& g, int i, int j, bool periodic) {
  int n = g.n2;
  auto at = [&](int b) { return g(i, periodic ? ((b % n) + n) % n : b); };
  if (!periodic && (j < 2 || j > n - 3)) return central_diff2(g, i, j, periodic);
  return (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) * (1.0 / 12.0);
}

}  // namespace slag
