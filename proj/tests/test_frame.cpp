#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slag/factory.hpp"
#include "slag/integrate.hpp"
#include "slag/patch_ops.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

using namespace slag;

namespace {

// best unitary aligning p -> q in least squares
Mat3c procrustes(const std::vector<Vec3c>& p, const std::vector<Vec3c>& q) {
  Mat3c M = Mat3c::Zero();
  for (size_t k = 0; k < p.size(); ++k) M += q[k] * p[k].adjoint();
  Eigen::JacobiSVD<Mat3c> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

TEST_CASE("connection samples") {
  // flat totally geodesic data: u = 0, h = 0
  AdmissibleTriple flat;
  flat.n1 = flat.n2 = 16;
  flat.c = 1.0;
  flat.chart.origin = cd(0, 0);
  flat.chart.step1 = cd(0.1, 0);
  flat.chart.step2 = cd(0, 0.1);
  flat.u = GridD(16, 16, 0.0);
  flat.h = GridC(16, 16, cd(0, 0));
  ConnectionSample c = connection_from_triple(flat, {3, 3, 1, 0.5});
  CHECK(c.rho == doctest::Approx(0.0));
  CHECK(c.b11 == doctest::Approx(0.0));
  CHECK(c.b12 == doctest::Approx(0.0));
  CHECK(c.w1 == doctest::Approx(0.1));
  CHECK(c.w2 == doctest::Approx(0.0));
  CHECK_THROWS_AS(connection_from_triple(flat, {20, 3, 1, 0.5}), DomainError);

  // hexagonal torus: a - ib = h e^{-3u} = 2^{-1/2}, rho = 0
  AdmissibleTriple hex = hexagonal_torus_triple(24);
  ConnectionSample ch = connection_from_triple(hex, {5, 7, 2, 0.5});
  CHECK(ch.rho == doctest::Approx(0.0));
  cd omega(ch.w1, ch.w2);
  cd w(ch.b11, -ch.b12);
  cd ab = w / omega;
  CHECK(std::abs(ab - cd(std::pow(2.0, -0.5), 0)) < 1e-12);
}

TEST_CASE("discrete d(rho) equals K times the area form") {
  // round-sphere data has varying rho; check dρ ≈ K ω¹∧ω² over plaquettes
  for (int n : {33, 65}) {
    AdmissibleTriple t = round_sphere_triple(n, 1.0);
    double worst = 0;
    for (int j = 1; j + 2 < n; ++j)
      for (int i = 1; i + 2 < n; ++i) {
        double drho = connection_from_triple(t, {i, j, 1, 0.5}).rho +
                      connection_from_triple(t, {i + 1, j, 2, 0.5}).rho -
                      connection_from_triple(t, {i, j + 1, 1, 0.5}).rho -
                      connection_from_triple(t, {i, j, 2, 0.5}).rho;
        // K ∫ω¹∧ω² over the cell, midpoint value
        double um = 0.25 * (t.u(i, j) + t.u(i + 1, j) + t.u(i, j + 1) + t.u(i + 1, j + 1));
        double cell = std::abs(t.chart.step1) * std::abs(t.chart.step2);
        double area = std::exp(2 * um) * cell;
        worst = std::max(worst, std::abs(drho - 1.0 * area));
      }
    double dx = t.max_step();
    CHECK(worst < 5.0 * dx * dx * dx);  // per-plaquette: O(Δ²) density × Δ² area is O(Δ⁴); the
                                        // leading midpoint error is O(Δ³) in the worst corner
  }
}

TEST_CASE("integrated hexagonal torus matches the closed form") {
  int n = 64;
  double phi = kPi / 3;
  AdmissibleTriple t = hexagonal_torus_triple(n, phi);
  CHECK((t.h(0, 0) - cd(1.0, 0.0)).real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(t.h(0, 0).imag()) < 1e-14);

  IntegrationResult r = integrate_frame(t, hexagonal_torus_seed(phi));
  r.patch.require_frames_valid(1e-10);
  CHECK(r.max_drift < 1e-8);

  // node-exact comparison through the chart
  std::vector<Vec3c> got, want;
  double worst_direct = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cd z = std::polar(1.0, phi) * t.chart.z(i, j);
      double a, b;
      HexTorus::theta_from_z(z, a, b);
      Vec3c w = HexTorus::point(a, b);
      got.push_back(r.patch.pos(i, j));
      want.push_back(w);
      worst_direct = std::max(worst_direct, (r.patch.pos(i, j) - w).norm());
    }
  CHECK(worst_direct < 1e-6);

  Mat3c A = procrustes(got, want);
  double worst_aligned = 0;
  for (size_t k = 0; k < got.size(); ++k)
    worst_aligned = std::max(worst_aligned, (A * got[k] - want[k]).norm());
  CHECK(worst_aligned < 1e-6);
  CHECK(worst_aligned <= worst_direct + 1e-12);

  // constant connection: plaquette holonomy at machine zero
  CHECK(r.holonomy.max_cell < 1e-12);

  // Legendrian residuals of the integrated patch
  LegendrianResiduals lr = legendrian_residuals(r.patch);
  CHECK(lr.contact < 1e-8);
  CHECK(lr.symplectic < 1e-8);
  CHECK(lr.phase < 1e-10);
}

TEST_CASE("totally geodesic data stays in one special Lagrangian plane") {
  AdmissibleTriple t = round_sphere_triple(65, 1.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Mat3c seedbase;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) seedbase(i, j) = cd(g(rng), g(rng));
  Mat3c seed = FrameSU3::project_su3(seedbase);

  IntegrationResult r = integrate_frame(t, seed);
  // positions span a real 3-plane: smallest singular values vanish
  Eigen::MatrixXd P(6, r.patch.pos.v.size());
  for (size_t k = 0; k < r.patch.pos.v.size(); ++k) P.col(k) = to_real6(r.patch.pos.v[k]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeThinU);
  for (int k = 3; k < 6; ++k) CHECK(svd.singularValues()(k) < 1e-6 * svd.singularValues()(0));

  // and the plane is special Lagrangian (phase 0 after orientation)
  Vec3c b1 = from_real6(svd.matrixU().col(0));
  Vec3c b2 = from_real6(svd.matrixU().col(1));
  Vec3c b3 = from_real6(svd.matrixU().col(2));
  Lagrangian3Plane L(b1, b2, b3);
  double phase = classify_lagrangian_plane(L);
  double m = std::min({phase, std::abs(phase - kPi), 2 * kPi - phase});
  CHECK(m < 1e-6);  // Υ real on the plane; orientation may flip the sign
}

TEST_CASE("holonomy decreases at second order on varying data") {
  // the round-sphere triple has a position-dependent connection
  auto total_holonomy = [](int n) {
    AdmissibleTriple t = round_sphere_triple(n, 1.0);
    IntegrationResult r = integrate_frame(t, Mat3c::Identity());
    return r.holonomy.total;
  };
  double h1 = total_holonomy(33);
  double h2 = total_holonomy(65);
  double ratio = h1 / h2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("associated family") {
  AdmissibleTriple t = hexagonal_torus_triple(24);
  AdmissibleTriple t0 = associated_family(t, 0.0);
  for (size_t k = 0; k < t.h.v.size(); ++k) CHECK(std::abs(t0.h.v[k] - t.h.v[k]) == 0.0);

  AdmissibleTriple a = associated_family(associated_family(t, 0.7), 0.9);
  AdmissibleTriple b = associated_family(t, 1.6);
  for (size_t k = 0; k < t.h.v.size(); ++k) CHECK(std::abs(a.h.v[k] - b.h.v[k]) < 1e-15);

  // |h| and the admissibility residual are untouched
  CHECK(admissibility_residual(a).sup == doctest::Approx(admissibility_residual(t).sup));
}

TEST_CASE("conjugate torus is isometric to the torus") {
  int n = 64;
  AdmissibleTriple t0 = hexagonal_torus_triple(n);
  AdmissibleTriple t1 = associated_family(t0, kPi / 2);
  IntegrationResult r0 = integrate_frame(t0, hexagonal_torus_seed());
  IntegrationResult r1 = integrate_frame(t1, hexagonal_torus_seed());
  // measured first fundamental forms agree
  double worst = 0;
  for (int j = 1; j + 1 < n; ++j)
    for (int i = 1; i + 1 < n; ++i) {
      Vec3c a1 = central_diff1(r0.patch.pos, i, j, false);
      Vec3c a2 = central_diff2(r0.patch.pos, i, j, false);
      Vec3c b1 = central_diff1(r1.patch.pos, i, j, false);
      Vec3c b2 = central_diff2(r1.patch.pos, i, j, false);
      worst = std::max({worst, std::abs(a1.squaredNorm() - b1.squaredNorm()),
                        std::abs(a2.squaredNorm() - b2.squaredNorm()),
                        std::abs(dot6(a1, a2) - dot6(b1, b2))});
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("cubic recovery") {
  // closed-form hexagonal torus: |H| = 1
  DiscretePatch hex = hexagonal_torus(128);
  CubicRecovery rec = cubic_from_patch(hex);
  double worst = 0;
  for (int j = 0; j < hex.n2; ++j)
    for (int i = 0; i < hex.n1; ++i)
      if (hex.interior(i, j)) worst = std::max(worst, std::abs(std::abs(rec.h(i, j)) - 1.0));
  CHECK(worst < 1e-6);
  CHECK(rec.dbar_sup < 1e-6);

  // geodesic sphere: H = 0
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  DiscretePatch sph = geodesic_sphere_chart(L, 65, 1.0);
  CubicRecovery rs = cubic_from_patch(sph);
  double worst_s = 0;
  for (int j = 0; j < sph.n2; ++j)
    for (int i = 0; i < sph.n1; ++i)
      if (sph.interior(i, j)) worst_s = std::max(worst_s, std::abs(rs.h(i, j)));
  CHECK(worst_s < 1e-8);

  // round trip through the integrator: exact data leaves only the
  // fourth-order differentiation error
  auto roundtrip = [](int n) {
    AdmissibleTriple t = hexagonal_torus_triple(n);
    IntegrationResult r = integrate_frame(t, hexagonal_torus_seed());
    CubicRecovery rr = cubic_from_patch(r.patch);
    double w = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (r.patch.interior(i, j, 2)) w = std::max(w, std::abs(rr.h(i, j) - t.h(i, j)));
    return w;
  };
  double e1 = roundtrip(24), e2 = roundtrip(48);
  CHECK(e2 < e1 / 8.0);
}

TEST_CASE("simons residual") {
  AdmissibleTriple hex = hexagonal_torus_triple(32);
  CHECK(simons_residual(hex).sup < 1e-8);
  AdmissibleTriple sph = round_sphere_triple(33, 1.0);
  CHECK(simons_residual(sph).sup < 1e-8);
}

TEST_CASE("flatness of the scaled metric") {
  // hexagonal torus: g̃ = 2^{-1/3} g, flat exactly
  AdmissibleTriple hex = hexagonal_torus_triple(32);
  FlatCheckResult f = flat_check_scaled_metric(hex.u, 1.0, hex.chart, true, true);
  CHECK(f.sup < 1e-10);
  CHECK(f.margin == doctest::Approx(1.0));

  // geodesic sphere: K = c, hypothesis of the theorem fails
  AdmissibleTriple sph = round_sphere_triple(65, 1.0);
  CHECK_THROWS_AS(flat_check_scaled_metric(sph.u, 1.0, sph.chart, false, false), DomainError);
}

TEST_CASE("inadmissible triples are rejected with a residual report") {
  AdmissibleTriple bad = hexagonal_torus_triple(24);
  for (auto& v : bad.u.v) v *= 3.0;  // break the compatibility relation
  try {
    integrate_frame(bad, hexagonal_torus_seed());
    CHECK(false);
  } catch (const InadmissibleTriple& e) {
    CHECK(e.residual > 0.1);
  }
}

TEST_CASE("umbilic divisor") {
  // h = 1 on the torus: no zeros, checksum 0 = 6g-6 for g = 1
  AdmissibleTriple hex = hexagonal_torus_triple(24);
  UmbilicDivisor d = umbilic_divisor(hex.h, hex.chart, true, true);
  CHECK(d.entries.empty());
  CHECK(d.degree_sum == 0);

  // manufactured double zero on an open grid
  int n = 41;
  Chart ch;
  ch.origin = cd(-1, -1);
  ch.step1 = cd(2.0 / (n - 1), 0);
  ch.step2 = cd(0, 2.0 / (n - 1));
  GridC h2(n, n);
  cd z0(0.111, 0.074);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cd z = ch.z(i, j);
      h2(i, j) = (z - z0) * (z - z0);
    }
  UmbilicDivisor d2 = umbilic_divisor(h2, ch, false, false);
  REQUIRE(d2.entries.size() == 1);
  CHECK(d2.entries[0].degree == 2);
  CHECK(std::abs(d2.entries[0].location - z0) < 0.1);
  CHECK(d2.degree_sum == 2);

  // zero placed on a grid line -> ambiguous
  GridC h3(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) h3(i, j) = ch.z(i, j);  // zero at a node
  CHECK_THROWS_AS(umbilic_divisor(h3, ch, false, false), AmbiguousZero);
}

TEST_CASE("curve classification on the hexagonal torus") {
  int n = 60;
  DiscretePatch p = hexagonal_torus(n);
  auto line = [&](int di, int dj, int len) {
    std::vector<std::pair<int, int>> nodes;
    for (int k = 0; k <= len; ++k) nodes.push_back({3 + k * di, 5 + k * dj});
    return nodes;
  };
  // anti-special-Lagrangian families: θ1+θ2, θ1+θ3, θ2+θ3 constant
  CHECK(classify_curve(p, line(1, -1, 12)).cls == CurveClass::AntiSlag);
  CHECK(classify_curve(p, line(1, 0, 12)).cls == CurveClass::AntiSlag);
  CHECK(classify_curve(p, line(0, 1, 12)).cls == CurveClass::AntiSlag);
  // complex families: θ1-θ2, θ1-θ3, θ2-θ3 constant
  CHECK(classify_curve(p, line(1, 1, 12)).cls == CurveClass::Complex);
  CHECK(classify_curve(p, line(1, -2, 8)).cls == CurveClass::Complex);
  CHECK(classify_curve(p, line(2, -1, 8)).cls == CurveClass::Complex);

  // reparameterized polyline gets the same label
  std::vector<std::pair<int, int>> coarse;
  for (int k = 0; k <= 6; ++k) coarse.push_back({3 + 2 * k, 5 - 2 * k});
  CHECK(classify_curve(p, coarse).cls == CurveClass::AntiSlag);

  // a bent polyline is neither
  std::vector<std::pair<int, int>> bent = {{3, 5}, {4, 5}, {5, 6}, {6, 8}, {7, 11}};
  CHECK(classify_curve(p, bent).cls == CurveClass::Neither);
}
