#include "slag/cover.hpp"

#include <cmath>

namespace slag {

BranchedCover::BranchedCover() : wp_(std::polar(1.0, kPi / 3.0)) {
  cd z0 = (1.0 + wp_.tau()) / 3.0;
  v_ = wp_.eval(z0).dp;
  branch_points_ = {cd(0, 0), z0, 2.0 * z0};
  branch_values_ = {cd(0, 0), cd(1, 0), cd(-1, 0)};
}

cd BranchedCover::map(cd z, double pole_tol) const {
  if (wp_.lattice_distance(z) < pole_tol) return cd(0, 0);
  return v_ / wp_.eval(z).dp;
}

cd BranchedCover::map_derivative(cd z) const {
  auto val = wp_.eval(z);
  cd ppp = 6.0 * val.p * val.p;  // ℘″ with g₂ = 0
  return -v_ * ppp / (val.dp * val.dp);
}

cd BranchedCover::pullback_coefficient(cd z) const {
  cd w = map(z);
  cd dw = map_derivative(z);
  return dw * dw * dw / (w * w * (w * w - 1.0) * (w * w - 1.0));
}

cd BranchedCover::expected_constant() const {
  // (dw)³/(w²(w²-1)²) with w = v/℘′ collapses to 216 v³ ℘⁶/(16 g₃ ℘⁶ ℘′⁻⁶...)
  // = 27 v³ / (2 g₃)
  return 13.5 * v_ * v_ * v_ / wp_.g3();
}

BranchedCover::PullbackField BranchedCover::pullback_field(int n, double exclusion_radius) const {
  PullbackField out;
  out.field = GridC(n, n, cd(0, 0));
  out.excluded = Grid2<char>(n, n, 0);
  cd expect = expected_constant();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cd z = (double(i) / n) + wp_.tau() * (double(j) / n);
      bool excl = wp_.lattice_distance(z) < exclusion_radius;
      for (const auto& b : branch_points_)
        if (std::abs(wp_.reduce(z - b)) < exclusion_radius) excl = true;
      out.excluded(i, j) = excl;
      if (excl) continue;
      cd lam = pullback_coefficient(z);
      out.field(i, j) = lam;
      out.constancy = std::max(out.constancy, std::abs(lam - expect));
      ++out.included;
    }
  return out;
}

BranchedCover::PreimageCount BranchedCover::count_preimages(cd w_target, int cells) const {
  if (std::abs(w_target) < 1e-12)
    return {1, 3};  // the only preimage of 0 is the lattice point (pole of ℘′)
  cd c = v_ / w_target;
  const int sub = 5;  // boundary samples per coarse-cell edge: a branched
                      // (order 3) root turns 6π over the 4·sub segments

  for (int attempt = 0; attempt < 4; ++attempt) {
    cd shift = (0.137 + 0.211 * attempt) * (1.0 + wp_.tau()) / double(cells);
    int n = cells * sub;
    Grid2<cd> f(n + 1, n + 1);
    Grid2<char> nearpole(n + 1, n + 1, 0);
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        cd z = shift + (double(i) / n) + wp_.tau() * (double(j) / n);
        if (wp_.lattice_distance(z) < 0.25 / cells) {
          nearpole(i, j) = 1;
          f(i, j) = cd(1e18, 0);
        } else {
          f(i, j) = wp_.eval(z).dp - c;
        }
      }
    PreimageCount out;
    int pole_winding = 0;
    bool ambiguous = false;
    for (int cj = 0; cj < cells && !ambiguous; ++cj)
      for (int ci = 0; ci < cells && !ambiguous; ++ci) {
        int i0 = ci * sub, j0 = cj * sub;
        bool touches_pole = false;
        std::vector<cd> loop;
        for (int s = 0; s < sub; ++s) loop.push_back(f(i0 + s, j0));
        for (int s = 0; s < sub; ++s) loop.push_back(f(i0 + sub, j0 + s));
        for (int s = 0; s < sub; ++s) loop.push_back(f(i0 + sub - s, j0 + sub));
        for (int s = 0; s < sub; ++s) loop.push_back(f(i0, j0 + sub - s));
        loop.push_back(loop.front());
        for (int s = 0; s <= sub; ++s)
          for (int t = 0; t <= sub; ++t)
            if (nearpole(i0 + s, j0 + t)) touches_pole = true;
        double total = 0;
        for (size_t k = 0; k + 1 < loop.size(); ++k) {
          if (std::abs(loop[k]) < 1e-12) ambiguous = true;
          double d = std::arg(loop[k + 1] / loop[k]);
          if (std::abs(d) > 0.9 * kPi) ambiguous = true;
          total += d;
        }
        int wind = (int)std::lround(total / (2 * kPi));
        if (touches_pole) {
          pole_winding += wind;
        } else if (wind > 0) {
          ++out.roots;
          out.multiplicity += wind;
        } else if (wind < 0) {
          ambiguous = true;  // stray negative winding: sampling artifact
        }
      }
    // consistency: total winding over the torus vanishes (zeros minus the
    // triple pole), so the pole cells must carry exactly -3
    if (!ambiguous && pole_winding != -3) ambiguous = true;
    if (!ambiguous) return out;
  }
  throw DomainError("preimage count: root pinned to the sampling grid after 4 shifts");
}

std::array<double, 3> BranchedCover::candidate_betas(int k) {
  if (k < 3) throw DomainError("candidate betas need k >= 3");
  return {0.0, 0.0, 3.0 / k - 1.0};
}

}  // namespace slag
