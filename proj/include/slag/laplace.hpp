#pragma once

#include "slag/patch.hpp"

#include <array>

namespace slag {

// Cotangent-weight Laplace-Beltrami operator on the triangulated parameter
// grid with metric edge lengths (chart metric when available, ambient
// chords otherwise). Valid at nodes whose full one-ring is present.
struct LaplaceWeights {
  int n1 = 0, n2 = 0;
  bool periodic1 = false, periodic2 = false;
  std::array<std::pair<int, int>, 6> offsets{};
  Grid2<std::array<double, 6>> w;
  GridD area;
  Grid2<char> valid;
};

LaplaceWeights build_cotan_weights(const DiscretePatch& p);

namespace detail {
inline void set_zero(double& x) { x = 0.0; }
template <class D>
void set_zero(Eigen::MatrixBase<D>& x) {
  x.setZero();
}
}  // namespace detail

template <class T>
Grid2<T> apply_laplacian(const LaplaceWeights& L, const Grid2<T>& f) {
  Grid2<T> out(L.n1, L.n2);
  auto wrap = [](int i, int n) { return (i % n + n) % n; };
  for (int j = 0; j < L.n2; ++j)
    for (int i = 0; i < L.n1; ++i) {
      T acc = f(i, j);
      detail::set_zero(acc);
      if (L.valid(i, j)) {
        for (int k = 0; k < 6; ++k) {
          int a = i + L.offsets[k].first, b = j + L.offsets[k].second;
          a = L.periodic1 ? wrap(a, L.n1) : a;
          b = L.periodic2 ? wrap(b, L.n2) : b;
          acc += L.w(i, j)[k] * (f(a, b) - f(i, j));
        }
        acc = acc / L.area(i, j);
      }
      out(i, j) = acc;
    }
  return out;
}

}  // namespace slag
