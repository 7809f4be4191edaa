#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slag/pde.hpp"

#include <cmath>
#include <random>

using namespace slag;

namespace {
const cd omega_hex = std::polar(1.0, kPi / 3.0);

GridD const_field(int n1, int n2, double v) { return GridD(n1, n2, v); }

GridD random_field(int n1, int n2, double amp, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  GridD f(n1, n2);
  for (auto& x : f.v) x = amp * un(rng);
  return f;
}
}  // namespace

TEST_CASE("residual of the constant solution vanishes") {
  for (double lam : {0.5, 1.0, 2.0}) {
    PdeProblem prob(FlatDomain::torus(omega_hex, 32), lam);
    GridD u = const_field(32, 32, prob.constant_solution());
    PdeResidual r = pde_residual(prob, u);
    CHECK(r.sup < 1e-13);
  }
  // u = 0, λ = 1: residual = 0 + 1 - 2 = -1 everywhere
  PdeProblem prob(FlatDomain::torus(omega_hex, 32), 1.0);
  GridD zero = const_field(32, 32, 0.0);
  PdeResidual r = pde_residual(prob, zero);
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 32; ++i) CHECK(r.field(i, j) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("residual matches the linearization for small sinusoidal bumps") {
  int n = 32;
  PdeProblem prob(FlatDomain::torus(cd(0, 1), n), 1.0);
  double u0 = prob.constant_solution();
  double V = 2 * std::exp(2 * u0) + 8 * std::exp(-4 * u0);
  // u = u0 + δ sin(2π a/n): residual ≈ (V - |k|²) δ sin with |k|² = (2π)²
  double delta = 1e-6;
  GridD u = const_field(n, n, u0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u(i, j) += delta * std::sin(2 * kPi * i / n);
  PdeResidual r = pde_residual(prob, u);
  double kk = 2.0 * (1.0 - std::cos(2 * kPi / n)) * n * n;  // discrete symbol of the mode
  for (int i = 0; i < n; ++i) {
    double expect = (V - kk) * delta * std::sin(2 * kPi * i / n);
    CHECK(std::abs(r.field(i, 0) - expect) < 1e-10 + 50 * delta * delta);
  }
}

TEST_CASE("newton recovers the constant solution on the torus") {
  int n = 48;
  for (double lam : {0.5, 1.0, 2.0}) {
    PdeProblem prob(FlatDomain::torus(omega_hex, n), lam);
    double target = prob.constant_solution();
    PdeSolution sol = newton_solve(prob, random_field(n, n, 0.3, 99));
    CHECK(sol.history.converged);
    double worst = 0;
    for (double x : sol.u.v) worst = std::max(worst, std::abs(x - target));
    CHECK(worst < 1e-9);
    // residual norms strictly decreasing
    for (size_t k = 1; k < sol.history.residual_sup.size(); ++k)
      CHECK(sol.history.residual_sup[k] < sol.history.residual_sup[k - 1]);
  }
}

TEST_CASE("newton tail is quadratic") {
  int n = 48;
  PdeProblem prob(FlatDomain::torus(omega_hex, n), 1.0);
  PdeSolution sol = newton_solve(prob, random_field(n, n, 0.3, 7), 1e-12);
  const auto& r = sol.history.residual_sup;
  // q_k = r_{k+1}/r_k² should be bounded above and below on the tail; stay
  // above the finite-difference evaluation floor of the residual
  std::vector<double> q;
  for (size_t k = 0; k + 1 < r.size(); ++k)
    if (r[k] < 1.0 && r[k] > 1e-6 && r[k + 1] > 1e-11) q.push_back(r[k + 1] / (r[k] * r[k]));
  REQUIRE(q.size() >= 2);
  for (size_t k = 1; k < q.size(); ++k) {
    CHECK(q[k] < 5.0 * q[0]);
    CHECK(q[k] > q[0] / 5.0);
  }
}

TEST_CASE("rectangle with constant boundary extends the constant") {
  int n = 32;
  for (double lam : {0.7, 1.3}) {
    PdeProblem prob(FlatDomain::rectangle(1.0, 1.0, n, n), lam);
    PdeSolution sol = newton_solve(prob, const_field(n, n, 0.0));
    double target = prob.constant_solution();
    for (double x : sol.u.v) CHECK(std::abs(x - target) < 1e-9);
  }
}

TEST_CASE("interior range for constant boundary data") {
  // the nonlinearity has the Gelfand sign, so the interior dips below a
  // constant boundary level by O(|N(c0)|); the range stays within the
  // [boundary, constant-solution] bracket widened by that dip
  int n = 32;
  PdeProblem prob(FlatDomain::rectangle(1.0, 1.0, n, n), 1.0);
  double ustar = prob.constant_solution();
  double c0 = ustar - 0.05;
  prob.boundary = [c0](cd) { return c0; };
  PdeSolution sol = newton_solve(prob, const_field(n, n, c0));
  double nf = std::abs(std::exp(2 * c0) - 2 * std::exp(-4 * c0));
  double dip = 0.2 * nf;  // Dirichlet Green bound of the unit square with margin
  double lomin = 1e9, himax = -1e9;
  for (double x : sol.u.v) {
    lomin = std::min(lomin, x);
    himax = std::max(himax, x);
  }
  CHECK(lomin >= std::min(c0, ustar) - dip);
  CHECK(himax <= std::max(c0, ustar) + dip);
  CHECK(lomin < c0);  // the dip is real
}

TEST_CASE("interpolated coarse solution has second-order residual on the fine grid") {
  double ustar = std::log(2.0) / 6.0;
  auto bdry = [ustar](cd z) { return ustar + 0.04 * std::sin(2 * kPi * z.real()); };
  auto solve_rect = [&](int n) {
    PdeProblem prob(FlatDomain::rectangle(1.0, 1.0, n, n), 1.0);
    prob.boundary = bdry;
    return newton_solve(prob, GridD(n, n, 0.0));
  };
  // bicubic (clamped) sample of an open grid
  auto cube = [](double f, double pm1, double p0, double p1, double p2) {
    return p0 + 0.5 * f * (p1 - pm1 + f * (2 * pm1 - 5 * p0 + 4 * p1 - p2 +
                                           f * (3 * (p0 - p1) + p2 - pm1)));
  };
  auto sample = [&](const GridD& g, double x, double y) {
    int i0 = std::clamp((int)std::floor(x), 1, g.n1 - 3);
    int j0 = std::clamp((int)std::floor(y), 1, g.n2 - 3);
    double fx = x - i0, fy = y - j0;
    double rows[4];
    for (int r = -1; r <= 2; ++r)
      rows[r + 1] = cube(fx, g(i0 - 1, j0 + r), g(i0, j0 + r), g(i0 + 1, j0 + r),
                         g(i0 + 2, j0 + r));
    return cube(fy, rows[0], rows[1], rows[2], rows[3]);
  };
  // residual of the interpolant over the interior box [0.2, 0.8]²
  auto interp_residual = [&](const PdeSolution& coarse, int nc, int nf) {
    PdeProblem fine(FlatDomain::rectangle(1.0, 1.0, nf, nf), 1.0);
    fine.boundary = bdry;
    GridD uf(nf, nf, 0.0);
    for (int j = 0; j < nf; ++j)
      for (int i = 0; i < nf; ++i)
        uf(i, j) = sample(coarse.u, double(i) * (nc - 1) / (nf - 1),
                          double(j) * (nc - 1) / (nf - 1));
    PdeResidual r = pde_residual(fine, uf);
    double sup = 0;
    for (int j = nf / 5; j <= 4 * nf / 5; ++j)
      for (int i = nf / 5; i <= 4 * nf / 5; ++i) sup = std::max(sup, std::abs(r.field(i, j)));
    return sup;
  };
  // the fine grid doubles the coarse one, so the interpolant residual
  // h_c⁴/h_f² scales as Δ²
  PdeSolution a = solve_rect(33);
  PdeSolution b = solve_rect(65);
  double ra = interp_residual(a, 33, 65);
  double rb = interp_residual(b, 65, 129);
  CHECK(ra / rb > 3.2);
  CHECK(ra / rb < 5.0);
}

TEST_CASE("curvature identity K = 1 - 2λ²e^{-6u}") {
  int n = 48;
  PdeProblem prob(FlatDomain::rectangle(1.0, 1.0, n, n), 1.0);
  double ustar = prob.constant_solution();
  prob.boundary = [ustar](cd z) { return ustar + 0.04 * std::sin(2 * kPi * z.real()); };
  PdeSolution sol = newton_solve(prob, GridD(n, n, ustar));
  GridD K = curvature_of(prob, sol.u);
  double worst = 0;
  for (int j = 1; j + 1 < n; ++j)
    for (int i = 1; i + 1 < n; ++i) {
      double target = 1.0 - 2.0 * std::exp(-6.0 * sol.u(i, j));
      worst = std::max(worst, std::abs(K(i, j) - target) * std::exp(2.0 * sol.u(i, j)));
    }
  CHECK(worst < 1e-7);
  // K < 1 with a strict margin wherever λ²e^{-6u} > 0
  for (int j = 1; j + 1 < n; ++j)
    for (int i = 1; i + 1 < n; ++i) CHECK(K(i, j) < 1.0);
}

TEST_CASE("constant curvature of the round metric") {
  // u = ln(2/(1+|z|²)) on a rectangle: K = 1 up to O(Δ²)
  auto curv_err = [](int n) {
    PdeProblem prob(FlatDomain::rectangle(1.0, 1.0, n, n), 1.0);
    GridD u(n, n, 0.0);
    Chart c = prob.domain.chart();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) u(i, j) = std::log(2.0 / (1.0 + std::norm(c.z(i, j))));
    GridD K = curvature_of(prob, u);
    double worst = 0;
    for (int j = 1; j + 1 < n; ++j)
      for (int i = 1; i + 1 < n; ++i) worst = std::max(worst, std::abs(K(i, j) - 1.0));
    return worst;
  };
  double e1 = curv_err(33), e2 = curv_err(65);
  CHECK(e1 / e2 > 3.3);
  CHECK(e1 / e2 < 4.8);
}

TEST_CASE("jacobian check") {
  int n = 24;
  PdeProblem prob(FlatDomain::torus(omega_hex, n), 1.0);
  GridD u = random_field(n, n, 0.2, 11);
  GridD dir = random_field(n, n, 1.0, 12);
  CHECK(jacobian_check(prob, u, dir) < 1e-6);
  CHECK_THROWS_AS(jacobian_check(prob, u, GridD(n, n, 0.0)), DomainError);
  // larger amplitude with an adjusted step
  GridD ubig = random_field(n, n, 1.5, 13);
  CHECK(jacobian_check(prob, ubig, dir, 1e-6) < 1e-5);
}

TEST_CASE("singular solve") {
  int n = 48;
  // empty source list reduces to newton_solve
  PdeProblem plain(FlatDomain::torus(omega_hex, n), 1.0);
  PdeSolution a = singular_solve(plain, GridD(n, n, 0.0));
  CHECK(a.history.converged);

  // one weak source: residual away from the 4Δ disk, bounded regular part
  PdeProblem prob(FlatDomain::torus(omega_hex, n), 1.0);
  prob.add_source(cd(0.31, 0.42), 0.05);
  PdeSolution sol = singular_solve(prob, GridD(n, n, 0.0));
  CHECK(sol.history.converged);
  PdeResidual r = pde_residual(prob, sol.u);
  CHECK(r.sup < 1e-7);
  for (double x : sol.v.v) CHECK(std::abs(x) < 10.0);

  // the k = 3 branched-cover configuration has β = 0 at every branch point:
  // the solve reproduces the flat constant solution
  PdeProblem k3(FlatDomain::torus(omega_hex, n), 1.0);
  for (cd p : {cd(0, 0), (1.0 + omega_hex) / 3.0, 2.0 * (1.0 + omega_hex) / 3.0})
    if (std::abs(p) > 0) k3.add_source(p, 0.0);
  PdeSolution s3 = singular_solve(k3, GridD(n, n, 0.0));
  double target = k3.constant_solution();
  for (double x : s3.u.v) CHECK(std::abs(x - target) < 1e-9);
  GridD K = curvature_of(k3, s3.u);
  for (double x : K.v) CHECK(std::abs(x) < 1e-7);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(FlatDomain::torus(cd(0.5, -1.0), 32), DomainError);
  CHECK_THROWS_AS(FlatDomain::torus(omega_hex, 8), DomainError);
  CHECK_THROWS_AS(PdeProblem(FlatDomain::torus(omega_hex, 32), -1.0), DomainError);
}
