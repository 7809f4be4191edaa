#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slag/factory.hpp"

#include <cmath>

using namespace slag;

TEST_CASE("hexagonal torus closed form") {
  int n = 48;
  DiscretePatch p = hexagonal_torus(n);
  p.require_frames_valid(1e-12);

  // Im(z1 z2 z3) = 0 and |z_j| = 1/sqrt(3) at all nodes
  for (const auto& q : p.pos.v) {
    CHECK(std::abs((q(0) * q(1) * q(2)).imag()) < 1e-15);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(q(k)) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  }

  LegendrianResiduals r = legendrian_residuals(p);
  CHECK(r.contact < 1e-12);
  CHECK(r.symplectic < 1e-12);
  CHECK(r.phase < 1e-12);

  CHECK(p.area() == doctest::Approx(4 * kPi * kPi / std::sqrt(3.0)).epsilon(1e-9));
  AreaReport ar = area_and_bound(p);
  CHECK(*ar.cone_mass == doctest::Approx(p.area() / 3.0));
}

TEST_CASE("hexagonal torus chart consistency") {
  // the attached frames are the chart frames: e1 = e^{-u} dpos/dx
  int n = 64;
  for (double phi : {0.0, kPi / 3}) {
    DiscretePatch p = hexagonal_torus(n, phi);
    double h = 1e-6;
    double th1 = 0.9, th2 = -0.4;
    cd z0 = cd(HexTorus::c1() * (th1 + th2), HexTorus::c2() * (th1 - th2));
    cd zeta0 = std::polar(1.0, -phi) * z0;
    auto pos_at = [&](cd zeta) {
      double a, b;
      HexTorus::theta_from_z(std::polar(1.0, phi) * zeta, a, b);
      return HexTorus::point(a, b);
    };
    Vec3c dx = (pos_at(zeta0 + h) - pos_at(zeta0 - h)) / (2 * h);
    Vec3c dy = (pos_at(zeta0 + cd(0, h)) - pos_at(zeta0 - cd(0, h))) / (2 * h);
    Mat3c F = HexTorus::frame(th1, th2, phi);
    double eu = std::exp(HexTorus::log_factor());
    CHECK((dx / eu - F.col(0)).norm() < 1e-8);
    CHECK((dy / eu - F.col(1)).norm() < 1e-8);
  }
}

TEST_CASE("product torus matches the hexagonal torus") {
  int n = 32;
  DiscretePatch prod = product_torus({0, 0, 0}, n);
  DiscretePatch hex = hexagonal_torus(n);
  double worst = 0;
  for (size_t k = 0; k < prod.pos.v.size(); ++k)
    worst = std::max(worst, (prod.pos.v[k] - hex.pos.v[k]).norm());
  CHECK(worst < 1e-9);
  CHECK_THROWS_AS(product_torus({0, 0}, n), DomainError);
  CHECK_THROWS_AS(product_torus({1, 0, 0}, n), DomainError);
}

TEST_CASE("geodesic sphere chart") {
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  DiscretePatch p = geodesic_sphere_chart(L, 41, 1.0);
  p.require_frames_valid(1e-12);
  LegendrianResiduals r = legendrian_residuals(p);
  CHECK(r.contact < 1e-12);
  CHECK(r.phase < 1e-13);
  // points lie on the plane
  for (const auto& q : p.pos.v) CHECK(q.imag().norm() < 1e-15);

  // wrong-phase plane rejected
  Lagrangian3Plane Lp(apply_J(Vec3c(1, 0, 0)), apply_J(Vec3c(0, 1, 0)), apply_J(Vec3c(0, 0, 1)));
  CHECK_THROWS_AS(geodesic_sphere_chart(Lp, 17, 1.0), ConstraintViolation);
}

TEST_CASE("geodesic sphere gauss quadrature") {
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  DiscretePatch p = geodesic_sphere_gauss(L, 24, 48);
  p.require_frames_valid(1e-12);
  CHECK(p.area() == doctest::Approx(4 * kPi).epsilon(1e-13));
  AreaReport ar = area_and_bound(p);
  CHECK(ar.area == doctest::Approx(4 * kPi).epsilon(1e-13));
}

TEST_CASE("hopf projection") {
  DiscretePatch p = hexagonal_torus(32);
  HopfProjection h = hopf_project(p);
  CHECK(h.metric_residual < 1e-2);

  // deck rotation by e^{2πi/3} maps to the same projective points
  DiscretePatch q = p;
  cd deck = std::polar(1.0, 2 * kPi / 3);
  for (auto& v : q.pos.v) v *= deck;
  HopfProjection h2 = hopf_project(q);
  double worst = 0;
  for (size_t k = 0; k < h.points.v.size(); ++k)
    worst = std::max(worst, (h.points.v[k] - h2.points.v[k]).norm());
  CHECK(worst < 1e-13);

  // geodesic sphere projects onto the standard RP²: all images real
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  DiscretePatch s = geodesic_sphere_gauss(L, 16, 32);
  HopfProjection hs = hopf_project(s);
  for (const auto& v : hs.points.v) CHECK(v.imag().norm() < 1e-13);
}

TEST_CASE("metric residual of hopf projection decreases at second order") {
  double r1 = hopf_project(hexagonal_torus(24)).metric_residual;
  double r2 = hopf_project(hexagonal_torus(48)).metric_residual;
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.0);
}

TEST_CASE("reflect continue: half hexagonal torus") {
  int n1 = 64, n2 = 33;
  DiscretePatch half = hexagonal_half_torus(n1, n2);
  ReflectionFace face = ReflectionFace::anti_slag(hexagonal_seam_plane());

  ReflectContinueResult rc = reflect_continue(half, face);
  CHECK(rc.seam_face_distance < 1e-12);
  CHECK(!rc.orthogonality_warning);
  CHECK(rc.orthogonality_deviation_deg < 0.2);
  CHECK(rc.seam_c1_jump < 3.0 * (2 * kPi / n2));

  // reflected nodes equal the closed form at the mirrored parameters
  double dq = 4 * kPi / n1, dp = 2 * kPi / (n2 - 1);
  double worst = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      double q = dq * i, pp = -dp * j;  // mirrored: p -> -p
      double th1 = 0.5 * (pp + q), th2 = 0.5 * (pp - q);
      worst = std::max(worst, (rc.reflected.pos(i, j) - HexTorus::point(th1, th2)).norm());
    }
  CHECK(worst < 1e-8);

  // the union is a valid frame field
  rc.unioned.require_frames_valid(1e-9);

  // double reflection is the identity
  ReflectContinueResult rc2 = reflect_continue(half, face);
  double inv = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      Vec3c back = face.apply(rc2.reflected.pos(i, j));
      inv = std::max(inv, (back - half.pos(i, j)).norm());
    }
  CHECK(inv < 1e-12);

  // boundary off the face -> error
  DiscretePatch shifted = half;
  for (auto& v : shifted.pos.v) v = (v + Vec3c(0.01, 0, 0)).normalized();
  CHECK_THROWS_AS(reflect_continue(shifted, face), DomainError);
}

TEST_CASE("reflect continue: hemisphere and tilted control") {
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  Lagrangian3Plane seam = equatorial_seam_plane(L);
  ReflectionFace face = ReflectionFace::anti_slag(seam);

  DiscretePatch hemi = geodesic_hemisphere(L, 48, 25);
  ReflectContinueResult rc = reflect_continue(hemi, face);
  CHECK(rc.seam_face_distance < 1e-12);
  CHECK(!rc.orthogonality_warning);
  // reflected equals the southern hemisphere: x3 -> -x3
  double worst = 0;
  for (int j = 0; j < hemi.n2; ++j)
    for (int i = 0; i < hemi.n1; ++i) {
      Vec3c expect = hemi.pos(i, j);
      expect(2) = -expect(2);
      worst = std::max(worst, (rc.reflected.pos(i, j) - expect).norm());
    }
  CHECK(worst < 1e-12);

  DiscretePatch tilted = geodesic_hemisphere(L, 48, 25, 5.0 * kPi / 180.0);
  ReflectContinueResult rt = reflect_continue(tilted, face);
  CHECK(rt.orthogonality_warning);
  CHECK(rt.orthogonality_deviation_deg == doctest::Approx(5.0).epsilon(0.02));
}
