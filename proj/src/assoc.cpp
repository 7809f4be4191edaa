#include "slag/assoc.hpp"

#include "slag/hermitian.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

namespace slag {

namespace {

Grid2<Wedge2> wedge_field(const DiscretePatch& p, int which) {
  Grid2<Wedge2> f(p.n1, p.n2);
  double s2 = 1.0 / std::sqrt(2.0);
  double s32 = std::sqrt(1.5);
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      const Mat3c& U = p.frame(i, j);
      Vec3c e1 = U.col(0), e2 = U.col(1), e3 = U.col(2);
      switch (which) {
        case 0:  // gauss
          f(i, j) = wedge(e1, e2);
          break;
        case 1:  // polar plus
          f(i, j) = s2 * (wedge(e1, e2) + wedge(apply_J(e1), apply_J(e2)));
          break;
        case 2:  // polar minus
          f(i, j) = s2 * (wedge(e1, e2) - wedge(apply_J(e1), apply_J(e2)));
          break;
        default:  // bipolar
          f(i, j) = s32 * (wedge(e3, apply_J(e3)) - kahler_sharp() / 3.0);
      }
    }
  return f;
}

// measured conformal factor of a wedge-valued map against the position map
double factor_residual(const DiscretePatch& p, const Grid2<Wedge2>& f,
                       const std::function<double(int, int)>& expected) {
  double worst = 0;
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      if (!p.interior(i, j)) continue;
      Wedge2 w1 = central_diff1(f, i, j, p.periodic1);
      Wedge2 w2 = central_diff2(f, i, j, p.periodic2);
      Vec3c d1 = central_diff1(p.pos, i, j, p.periodic1);
      Vec3c d2 = central_diff2(p.pos, i, j, p.periodic2);
      double tw = w1.squaredNorm() + w2.squaredNorm();
      double tp = d1.squaredNorm() + d2.squaredNorm();
      if (tp < 1e-300) continue;
      worst = std::max(worst, std::abs(tw / tp - expected(i, j)));
    }
  return worst;
}

EigenMapResult eigen_map(const DiscretePatch& p, int which,
                         const std::function<double(int, int)>& factor,
                         const std::function<double(int, int)>& eigenvalue, bool in_w8) {
  EigenMapResult out;
  out.field = wedge_field(p, which);
  for (const auto& w : out.field.v) {
    out.unit_defect = std::max(out.unit_defect, std::abs(w.norm() - 1.0));
    if (in_w8) out.w8_defect = std::max(out.w8_defect, std::abs(w.dot(kahler_sharp())));
  }
  out.factor_residual = factor_residual(p, out.field, factor);
  LaplaceWeights L = build_cotan_weights(p);
  Grid2<Wedge2> lap = apply_laplacian(L, out.field);
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      if (!L.valid(i, j)) continue;
      double r = (lap(i, j) - eigenvalue(i, j) * out.field(i, j)).norm();
      out.laplace_residual = std::max(out.laplace_residual, r);
    }
  return out;
}

}  // namespace

GaussMapResult gauss_map(const DiscretePatch& p) {
  GaussMapResult out;
  out.field = wedge_field(p, 0);
  out.factor_residual =
      factor_residual(p, out.field, [&](int i, int j) { return 2.0 - p.gaussK(i, j); });
  return out;
}

EigenMapResult polar_map(const DiscretePatch& p) {
  return eigen_map(
      p, 1, [&](int i, int j) { return 3.0 - 2.0 * p.gaussK(i, j); },
      [&](int i, int j) { return -2.0 * (3.0 - 2.0 * p.gaussK(i, j)); }, true);
}

EigenMapResult polar_minus_map(const DiscretePatch& p) {
  return eigen_map(
      p, 2, [&](int, int) { return 1.0; }, [&](int, int) { return -2.0; }, false);
}

EigenMapResult bipolar_map(const DiscretePatch& p) {
  return eigen_map(
      p, 3, [&](int, int) { return 3.0; }, [&](int, int) { return -6.0; }, true);
}

int killing_jacobi_dim(const DiscretePatch& p, double rel_threshold) {
  size_t samples = p.pos.v.size();
  if (samples < 200) throw DomainError("killing_jacobi_dim needs at least 200 sample nodes");
  auto basis = su3_basis();
  Eigen::MatrixXd M(8, (Eigen::Index)samples);
  for (size_t s = 0; s < samples; ++s)
    for (int b = 0; b < 8; ++b) M(b, (Eigen::Index)s) = generating_function(basis[b], p.pos.v[s]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  double smax = svd.singularValues()(0);
  int rank = 0;
  for (int k = 0; k < 8; ++k)
    if (svd.singularValues()(k) > rel_threshold * smax) ++rank;
  return rank;
}

ProjectionIdentity projection_length_identity(const DiscretePatch& p, const Vec3c& v) {
  ProjectionIdentity out;
  GridD uv(p.n1, p.n2, 0.0);
  Wedge2 vjv = wedge(v, apply_J(v));
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      Vec3c e3 = p.pos(i, j);
      double a = dot6(e3, v), b = dot6(apply_J(e3), v);
      double direct = a * a + b * b;
      double paired = wedge(e3, apply_J(e3)).dot(vjv);
      out.cross_check = std::max(out.cross_check, std::abs(direct - paired));
      uv(i, j) = direct;
    }
  LaplaceWeights L = build_cotan_weights(p);
  GridD lap = apply_laplacian(L, uv);
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i)
      if (L.valid(i, j))
        out.laplace_residual =
            std::max(out.laplace_residual, std::abs(lap(i, j) + 6.0 * uv(i, j) - 2.0));
  if (p.closed && p.quadw.size() > 0) {
    double s = 0;
    for (size_t k = 0; k < uv.v.size(); ++k) s += (uv.v[k] - 1.0 / 3.0) * p.quadw.v[k];
    out.mean_value = s;
  }
  return out;
}

DistanceSweep distance_bound_check(const DiscretePatch& p, int probes, unsigned seed) {
  DistanceSweep out;
  out.probes = probes;
  out.mesh_diameter = p.mesh_diameter_fs();
  out.bound = std::acos(1.0 / std::sqrt(3.0)) + 2.0 * out.mesh_diameter;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int q = 0; q < probes; ++q) {
    Vec3c probe(cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)));
    probe /= probe.norm();
    double best = 1e300;
    for (const auto& pos : p.pos.v) {
      double c = std::abs(probe.dot(pos));
      double d = std::acos(std::min(1.0, c));
      best = std::min(best, d);
    }
    out.max_distance = std::max(out.max_distance, best);
  }
  return out;
}

}  // namespace slag
