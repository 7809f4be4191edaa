#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slag/hermitian.hpp"
#include "slag/wedge.hpp"

#include <Eigen/Eigenvalues>
#include <random>

using namespace slag;

namespace {
std::mt19937_64 rng(777);
Vec3c rand_vec() {
  std::normal_distribution<double> g;
  return Vec3c(cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)));
}
}  // namespace

TEST_CASE("wedge involution eigenspaces are 9 and 6") {
  const Mat15& J = wedge_J();
  CHECK((J * J - Mat15::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Mat15> eig(J);
  int plus = 0, minus = 0;
  for (int k = 0; k < 15; ++k) {
    if (eig.eigenvalues()(k) > 0.5) ++plus;
    if (eig.eigenvalues()(k) < -0.5) ++minus;
  }
  CHECK(plus == 9);
  CHECK(minus == 6);
}

TEST_CASE("split recombines and is orthogonal") {
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    Wedge2 xi;
    for (int k = 0; k < 15; ++k) xi(k) = g(rng);
    WedgeSplit s = j_eigenspace_split(xi);
    CHECK((s.trace + s.w8 + s.minus - xi).norm() < 1e-12 * xi.norm());
    CHECK(std::abs(s.trace.dot(s.w8)) < 1e-12 * xi.squaredNorm());
    CHECK(std::abs(s.trace.dot(s.minus)) < 1e-12 * xi.squaredNorm());
    CHECK(std::abs(s.w8.dot(s.minus)) < 1e-12 * xi.squaredNorm());
    double pyth = s.trace.squaredNorm() + s.w8.squaredNorm() + s.minus.squaredNorm();
    CHECK(pyth == doctest::Approx(xi.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("kahler sharp is pure trace") {
  WedgeSplit s = j_eigenspace_split(kahler_sharp());
  CHECK(s.w8.norm() < 1e-14);
  CHECK(s.minus.norm() < 1e-14);
  CHECK(kahler_sharp().squaredNorm() == doctest::Approx(3.0));
}

TEST_CASE("e1^e2 splits into the stated halves") {
  Vec3c e1(1, 0, 0), e2(0, 1, 0);
  Wedge2 xi = wedge(e1, e2);
  WedgeSplit s = j_eigenspace_split(xi);
  Wedge2 plus_expect = 0.5 * (wedge(e1, e2) + wedge(apply_J(e1), apply_J(e2)));
  Wedge2 minus_expect = 0.5 * (wedge(e1, e2) - wedge(apply_J(e1), apply_J(e2)));
  CHECK((s.w8 + s.trace - plus_expect).norm() < 1e-14);
  CHECK((s.minus - minus_expect).norm() < 1e-14);
}

TEST_CASE("su3 embedding and generating functions") {
  // fixed pairing: ξ = diag(i, -i, 0), p = (1,0,0) -> 1
  Mat3c xi = Mat3c::Zero();
  xi(0, 0) = cd(0, 1);
  xi(1, 1) = cd(0, -1);
  CHECK(generating_function(xi, Vec3c(1, 0, 0)) == doctest::Approx(1.0));

  // pairing consistency: G_ξ(p) = ⟨p∧Jp, ξ_Λ⟩
  for (int t = 0; t < 100; ++t) {
    Vec3c p = rand_vec();
    p /= p.norm();
    auto basis = su3_basis();
    for (const auto& b : basis) {
      double direct = generating_function(b, p);
      double paired = wedge(p, apply_J(p)).dot(su3_to_wedge(b));
      CHECK(direct == doctest::Approx(paired).epsilon(1e-11));
    }
    // phase invariance
    double phi = 2.0;
    Vec3c q = std::polar(1.0, phi) * p;
    CHECK(generating_function(basis[3], q) ==
          doctest::Approx(generating_function(basis[3], p)).epsilon(1e-11));
  }

  // su(3) images live in W⁸
  for (const auto& b : su3_basis()) {
    WedgeSplit s = j_eigenspace_split(su3_to_wedge(b));
    CHECK(s.trace.norm() < 1e-13);
    CHECK(s.minus.norm() < 1e-13);
  }

  // non-su(3) input rejected
  Mat3c bad = Mat3c::Identity();
  CHECK_THROWS_AS(generating_function(bad, Vec3c(1, 0, 0)), ConstraintViolation);
}

TEST_CASE("gram rank of generating functions is 8") {
  auto basis = su3_basis();
  int samples = 200;
  Eigen::MatrixXd M(8, samples);
  for (int s = 0; s < samples; ++s) {
    Vec3c p = rand_vec();
    p /= p.norm();
    for (int b = 0; b < 8; ++b) M(b, s) = generating_function(basis[b], p);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  double smax = svd.singularValues()(0);
  int rank = 0;
  for (int k = 0; k < 8; ++k)
    if (svd.singularValues()(k) > 1e-8 * smax) ++rank;
  CHECK(rank == 8);
}
