#include "slag/wedge.hpp"

#include "slag/hermitian.hpp"

#include <cmath>

namespace slag {

namespace {

struct Pair {
  int a, b;
};

const std::array<Pair, 15>& index_pairs() {
  static const std::array<Pair, 15> p = [] {
    std::array<Pair, 15> q{};
    int k = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) q[k++] = {a, b};
    return q;
  }();
  return p;
}

Eigen::Matrix<double, 6, 6> J6() {
  Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Zero();
  for (int k = 0; k < 3; ++k) {
    J(k, 3 + k) = -1.0;  // J(x, y) = (-y, x)
    J(3 + k, k) = 1.0;
  }
  return J;
}

}  // namespace

int wedge_index(int a, int b) {
  // offset of row a in the strictly upper triangle
  return a * 6 - a * (a + 1) / 2 + (b - a - 1);
}

Wedge2 wedge(const Vec3c& v, const Vec3c& w) {
  Vec6d vr = to_real6(v), wr = to_real6(w);
  Wedge2 out;
  const auto& pairs = index_pairs();
  for (int k = 0; k < 15; ++k)
    out(k) = vr(pairs[k].a) * wr(pairs[k].b) - vr(pairs[k].b) * wr(pairs[k].a);
  return out;
}

const Mat15& wedge_J() {
  static const Mat15 JL = [] {
    Mat15 m = Mat15::Zero();
    auto J = J6();
    const auto& pairs = index_pairs();
    // column k = image of ε_a ∧ ε_b under J∧J
    for (int k = 0; k < 15; ++k) {
      Vec6d a = Vec6d::Zero(), b = Vec6d::Zero();
      a(pairs[k].a) = 1.0;
      b(pairs[k].b) = 1.0;
      Vec6d Ja = J * a, Jb = J * b;
      for (int l = 0; l < 15; ++l)
        m(l, k) = Ja(pairs[l].a) * Jb(pairs[l].b) - Ja(pairs[l].b) * Jb(pairs[l].a);
    }
    return m;
  }();
  return JL;
}

const Wedge2& kahler_sharp() {
  static const Wedge2 w = [] {
    Wedge2 s = Wedge2::Zero();
    for (int k = 0; k < 3; ++k) s(wedge_index(k, 3 + k)) = 1.0;
    return s;
  }();
  return w;
}

WedgeSplit j_eigenspace_split(const Wedge2& xi) {
  const Mat15& J = wedge_J();
  Wedge2 plus = 0.5 * (xi + J * xi);
  WedgeSplit s;
  s.minus = 0.5 * (xi - J * xi);
  s.trace = (xi.dot(kahler_sharp()) / 3.0) * kahler_sharp();
  s.w8 = plus - s.trace;
  return s;
}

Eigen::Matrix<double, 6, 6> wedge_to_so6(const Wedge2& xi) {
  Eigen::Matrix<double, 6, 6> A = Eigen::Matrix<double, 6, 6>::Zero();
  const auto& pairs = index_pairs();
  for (int k = 0; k < 15; ++k) {
    A(pairs[k].b, pairs[k].a) += xi(k);
    A(pairs[k].a, pairs[k].b) -= xi(k);
  }
  return A;
}

Wedge2 so6_to_wedge(const Eigen::Matrix<double, 6, 6>& A) {
  Wedge2 xi;
  const auto& pairs = index_pairs();
  for (int k = 0; k < 15; ++k) xi(k) = A(pairs[k].b, pairs[k].a);
  return xi;
}

Eigen::Matrix<double, 6, 6> complex_to_real6(const Mat3c& m) {
  Eigen::Matrix<double, 6, 6> A;
  Eigen::Matrix3d X = m.real(), Y = m.imag();
  A.topLeftCorner<3, 3>() = X;
  A.topRightCorner<3, 3>() = -Y;
  A.bottomLeftCorner<3, 3>() = Y;
  A.bottomRightCorner<3, 3>() = X;
  return A;
}

std::array<Mat3c, 8> su3_basis() {
  std::array<Mat3c, 8> b;
  const cd I(0.0, 1.0);
  auto E = [](int i, int j) {
    Mat3c m = Mat3c::Zero();
    m(i, j) = 1.0;
    return m;
  };
  // Gell-Mann style: i·(Hermitian basis)
  b[0] = I * (E(0, 1) + E(1, 0));
  b[1] = E(0, 1) - E(1, 0);
  b[2] = I * (E(0, 2) + E(2, 0));
  b[3] = E(0, 2) - E(2, 0);
  b[4] = I * (E(1, 2) + E(2, 1));
  b[5] = E(1, 2) - E(2, 1);
  b[6] = I * (E(0, 0) - E(1, 1));
  Mat3c d = Mat3c::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  d(2, 2) = -2.0;
  b[7] = I * d / std::sqrt(3.0);
  return b;
}

static void require_su3(const Mat3c& xi) {
  if ((xi + xi.adjoint()).norm() > 1e-9 * (1.0 + xi.norm()) || std::abs(xi.trace()) > 1e-9)
    throw ConstraintViolation("generating function: matrix not in su(3)");
}

double generating_function(const Mat3c& xi, const Vec3c& p) {
  require_su3(xi);
  return dot6(xi * p, apply_J(p));
}

Wedge2 su3_to_wedge(const Mat3c& xi) {
  require_su3(xi);
  return so6_to_wedge(complex_to_real6(xi));
}

}  // namespace slag
