#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slag/weierstrass.hpp"

#include <cmath>
#include <random>

using namespace slag;

namespace {
const cd tau_hex = std::polar(1.0, kPi / 3.0);
}

TEST_CASE("equianharmonic invariants") {
  WeierstrassP wp(tau_hex);
  CHECK(std::abs(wp.g2()) < 1e-10);
  CHECK(wp.g3().real() > 0);
  CHECK(std::abs(wp.g3().imag()) < 1e-10 * std::abs(wp.g3()));
}

TEST_CASE("differential equation and periodicity") {
  WeierstrassP wp(tau_hex);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> un(0.05, 0.95);
  for (int t = 0; t < 200; ++t) {
    cd z = un(rng) + tau_hex * un(rng);
    if (wp.lattice_distance(z) < 5e-2) continue;
    auto v = wp.eval(z);
    // ℘′² = 4℘³ - g2 ℘ - g3
    cd lhs = v.dp * v.dp;
    cd rhs = 4.0 * v.p * v.p * v.p - wp.g2() * v.p - wp.g3();
    CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(lhs)));
    // periodicity
    auto v1 = wp.eval(z + 1.0);
    auto v2 = wp.eval(z + tau_hex);
    CHECK(std::abs(v1.p - v.p) < 1e-9 * (1.0 + std::abs(v.p)));
    CHECK(std::abs(v2.dp - v.dp) < 1e-9 * (1.0 + std::abs(v.dp)));
  }
  CHECK_THROWS_AS(wp.eval(cd(0, 0)), DomainError);
}

TEST_CASE("laurent accuracy against the duplication path") {
  // evaluate the same point with and without duplication: z and z shifted
  WeierstrassP wp(tau_hex);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> un(-0.2, 0.2);
  for (int t = 0; t < 100; ++t) {
    cd z(0.25 + un(rng) * 0.2, 0.1 + un(rng) * 0.1);
    auto a = wp.eval(z);
    auto b = wp.eval(z + 1.0 + tau_hex);  // reduces back to z
    CHECK(std::abs(a.p - b.p) < 1e-10 * (1 + std::abs(a.p)));
  }
}

TEST_CASE("theta function green identity") {
  // G is periodic and behaves like ln|z| at the origin
  for (cd tau : {tau_hex, cd(0.1, 1.3)}) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> un(0.1, 0.9);
    for (int t = 0; t < 50; ++t) {
      cd z = un(rng) + tau * un(rng);
      double g = torus_green(z, tau);
      CHECK(torus_green(z + 1.0, tau) == doctest::Approx(g).epsilon(1e-10));
      CHECK(torus_green(z + tau, tau) == doctest::Approx(g).epsilon(1e-10));
    }
    for (double r : {1e-3, 1e-4, 1e-5}) {
      double g = torus_green(cd(r, 0), tau);
      CHECK(std::abs(g - std::log(r)) < 10 * r);
    }
    // discrete Laplacian away from the source equals -2π/Im τ
    double h = 1e-3;
    cd z0 = 0.4 + tau * 0.37;
    double lap = (torus_green(z0 + h, tau) + torus_green(z0 - h, tau) +
                  torus_green(z0 + cd(0, h), tau) + torus_green(z0 - cd(0, h), tau) -
                  4.0 * torus_green(z0, tau)) /
                 (h * h);
    CHECK(lap == doctest::Approx(-2 * kPi / tau.imag()).epsilon(1e-4));
  }
}

#include "slag/cover.hpp"

TEST_CASE("branched cover basics") {
  BranchedCover pi3;
  // branch points map to the normalized branch values
  CHECK(std::abs(pi3.map(pi3.branch_points()[0])) < 1e-12);
  CHECK(std::abs(pi3.map(pi3.branch_points()[1]) - cd(1, 0)) < 1e-10);
  CHECK(std::abs(pi3.map(pi3.branch_points()[2]) - cd(-1, 0)) < 1e-10);
  // periodic
  cd z(0.23, 0.31);
  CHECK(std::abs(pi3.map(z + 1.0) - pi3.map(z)) < 1e-9);
  CHECK(std::abs(pi3.map(z + pi3.tau()) - pi3.map(z)) < 1e-9);
  // analytic derivative against finite differences
  double h = 1e-6;
  cd fd = (pi3.map(z + h) - pi3.map(z - h)) / (2 * h);
  CHECK(std::abs(fd - pi3.map_derivative(z)) < 1e-6 * (1.0 + std::abs(fd)));
}

TEST_CASE("local model at a branch point") {
  // w = z³ gives (dw)³/w² = 27 (dz)³: the model coefficient near 0
  auto model = [](cd z) {
    cd w = z * z * z;
    cd dw = 3.0 * z * z;
    return dw * dw * dw / (w * w * (w * w - 1.0) * (w * w - 1.0));
  };
  for (double r : {1e-2, 1e-3}) {
    cd val = model(cd(r, r / 2));
    CHECK(std::abs(val - cd(27, 0)) < 1e-3);
  }
  // the true pullback stays bounded and equal to the global constant next
  // to all three branch points
  BranchedCover pi3;
  cd expect = pi3.expected_constant();
  for (const auto& b : pi3.branch_points()) {
    cd val = pi3.pullback_coefficient(b + cd(0.013, 0.007));
    CHECK(std::abs(val - expect) < 1e-5 * std::abs(expect));
  }
}

TEST_CASE("pullback coefficient is constant") {
  BranchedCover pi3;
  auto f = pi3.pullback_field(48);
  CHECK(f.included > 1000);
  CHECK(f.constancy < 1e-4 * std::abs(pi3.expected_constant()));
}

TEST_CASE("preimage counting") {
  BranchedCover pi3;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    cd w(g(rng), g(rng));
    if (std::abs(w) < 0.08 || std::abs(w - 1.0) < 0.08 || std::abs(w + 1.0) < 0.08) continue;
    auto c = pi3.count_preimages(w);
    CHECK(c.roots == 3);
    CHECK(c.multiplicity == 3);
    ++checked;
  }
  CHECK(checked > 20);
  // branch values have a single (triple) preimage
  auto cb = pi3.count_preimages(cd(1, 0));
  CHECK(cb.roots == 1);
  CHECK(cb.multiplicity == 3);
  auto c0 = pi3.count_preimages(cd(0, 0));
  CHECK(c0.roots == 1);
}

TEST_CASE("candidate betas for the branched configurations") {
  auto b3 = BranchedCover::candidate_betas(3);
  CHECK(b3[0] == 0.0);
  CHECK(b3[2] == doctest::Approx(0.0));
  auto b4 = BranchedCover::candidate_betas(4);
  CHECK(b4[2] == doctest::Approx(-0.25));
}
