#include "slag/factory.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace slag {

namespace {

cd I{0.0, 1.0};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

cd HexTorus::lattice1(double phi) {
  return std::polar(1.0, -phi) * (2.0 * kPi) * cd(c1(), c2());
}

cd HexTorus::lattice2(double phi) {
  return std::polar(1.0, -phi) * (2.0 * kPi) * cd(c1(), -c2());
}

Vec3c HexTorus::point(double th1, double th2) {
  double th3 = -th1 - th2;
  return (1.0 / std::sqrt(3.0)) *
         Vec3c(std::polar(1.0, th1), std::polar(1.0, th2), std::polar(1.0, th3));
}

Mat3c HexTorus::frame(double th1, double th2, double phi) {
  double th3 = -th1 - th2;
  cd a1 = std::polar(1.0, th1), a2 = std::polar(1.0, th2), a3 = std::polar(1.0, th3);
  Vec3c e1 = (I / std::sqrt(6.0)) * Vec3c(a1, a2, -2.0 * a3);
  Vec3c e2 = (I / std::sqrt(2.0)) * Vec3c(a1, -a2, cd(0.0));
  Mat3c U;
  U.col(0) = std::cos(phi) * e1 + std::sin(phi) * e2;
  U.col(1) = -std::sin(phi) * e1 + std::cos(phi) * e2;
  U.col(2) = point(th1, th2);
  return U;
}

void HexTorus::theta_from_z(cd z, double& th1, double& th2) {
  double p = z.real() / c1(), q = z.imag() / c2();
  th1 = 0.5 * (p + q);
  th2 = 0.5 * (p - q);
}

DiscretePatch hexagonal_torus(int n, double phi) {
  DiscretePatch p;
  p.n1 = p.n2 = n;
  p.periodic1 = p.periodic2 = true;
  p.closed = true;
  p.pos = Grid2<Vec3c>(n, n);
  p.frame = Grid2<Mat3c>(n, n);
  p.u = GridD(n, n, HexTorus::log_factor());
  p.gaussK = GridD(n, n, 0.0);
  p.cubic = GridC(n, n, HexTorus::cubic(phi));
  double step = 2.0 * kPi / n;
  p.chart.origin = cd(0, 0);
  p.chart.step1 = HexTorus::lattice1(phi) / double(n);
  p.chart.step2 = HexTorus::lattice2(phi) / double(n);
  p.has_chart = true;
  p.quadw = GridD(n, n, (1.0 / std::sqrt(3.0)) * step * step);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double th1 = step * i, th2 = step * j;
      p.pos(i, j) = HexTorus::point(th1, th2);
      p.frame(i, j) = HexTorus::frame(th1, th2, phi);
    }
  return p;
}

AdmissibleTriple hexagonal_torus_triple(int n, double phi) {
  AdmissibleTriple t;
  t.n1 = t.n2 = n;
  t.periodic1 = t.periodic2 = true;
  t.c = 1.0;
  t.chart.origin = cd(0, 0);
  t.chart.step1 = HexTorus::lattice1(phi) / double(n);
  t.chart.step2 = HexTorus::lattice2(phi) / double(n);
  t.u = GridD(n, n, HexTorus::log_factor());
  t.h = GridC(n, n, HexTorus::cubic(phi));
  return t;
}

Mat3c hexagonal_torus_seed(double phi) { return HexTorus::frame(0.0, 0.0, phi); }

DiscretePatch hexagonal_half_torus(int n1, int n2) {
  DiscretePatch p;
  p.n1 = n1;
  p.n2 = n2;
  p.periodic1 = true;   // q direction, period 4π
  p.periodic2 = false;  // p ∈ [0, 2π]
  p.closed = false;
  p.pos = Grid2<Vec3c>(n1, n2);
  p.frame = Grid2<Mat3c>(n1, n2);
  p.u = GridD(n1, n2, HexTorus::log_factor());
  p.gaussK = GridD(n1, n2, 0.0);
  p.cubic = GridC(n1, n2, HexTorus::cubic(0.0));
  double dq = 4.0 * kPi / n1, dp = 2.0 * kPi / (n2 - 1);
  p.chart.origin = cd(0, 0);
  p.chart.step1 = cd(0.0, HexTorus::c2() * dq);  // pure imaginary, along seam
  p.chart.step2 = cd(HexTorus::c1() * dp, 0.0);  // real, transverse
  p.has_chart = true;
  p.boundary[0] = {CurveFaceType::AntiSlag, 0};
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      double q = dq * i, pp = dp * j;
      double th1 = 0.5 * (pp + q), th2 = 0.5 * (pp - q);
      p.pos(i, j) = HexTorus::point(th1, th2);
      p.frame(i, j) = HexTorus::frame(th1, th2, 0.0);
    }
  return p;
}

Lagrangian3Plane hexagonal_seam_plane() {
  double r = 1.0 / std::sqrt(2.0);
  Vec3c b1(r, r, 0.0), b2(I * r, -I * r, 0.0), b3(0.0, 0.0, 1.0);
  return Lagrangian3Plane(b1, b2, b3);
}

DiscretePatch geodesic_sphere_chart(const Lagrangian3Plane& L, int n, double a) {
  double theta = classify_lagrangian_plane(L);
  if (std::min(theta, 2 * kPi - theta) > 1e-9)
    throw ConstraintViolation("geodesic sphere: plane is not special Lagrangian (phase 0)");
  DiscretePatch p;
  p.n1 = p.n2 = n;
  p.closed = false;
  p.pos = Grid2<Vec3c>(n, n);
  p.frame = Grid2<Mat3c>(n, n);
  p.u = GridD(n, n, 0.0);
  p.gaussK = GridD(n, n, 1.0);
  p.cubic = GridC(n, n, cd(0, 0));
  double h = 2.0 * a / (n - 1);
  p.chart.origin = cd(-a, -a);
  p.chart.step1 = cd(h, 0);
  p.chart.step2 = cd(0, h);
  p.has_chart = true;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double x = -a + h * i, y = -a + h * j, r2 = x * x + y * y;
      double d = 1.0 + r2;
      Vec3d X(2 * x / d, 2 * y / d, (1 - r2) / d);
      Vec3d E1(1 + r2 - 2 * x * x, -2 * x * y, -2 * x);
      Vec3d E2(-2 * x * y, 1 + r2 - 2 * y * y, -2 * y);
      E1 /= d;
      E2 /= d;
      Mat3c U;
      U.col(0) = L.basis * E1.cast<cd>();
      U.col(1) = L.basis * E2.cast<cd>();
      U.col(2) = L.basis * X.cast<cd>();
      p.frame(i, j) = U;
      p.pos(i, j) = U.col(2);
      p.u(i, j) = std::log(2.0 / d);
    }
  return p;
}

DiscretePatch geodesic_sphere_gauss(const Lagrangian3Plane& L, int n_theta, int n_phi) {
  double theta0 = classify_lagrangian_plane(L);
  if (std::min(theta0, 2 * kPi - theta0) > 1e-9)
    throw ConstraintViolation("geodesic sphere: plane is not special Lagrangian (phase 0)");
  DiscretePatch p;
  p.n1 = n_theta;
  p.n2 = n_phi;
  p.periodic2 = true;
  p.closed = true;
  p.pos = Grid2<Vec3c>(n_theta, n_phi);
  p.frame = Grid2<Mat3c>(n_theta, n_phi);
  p.u = GridD(n_theta, n_phi, 0.0);
  p.gaussK = GridD(n_theta, n_phi, 1.0);
  p.quadw = GridD(n_theta, n_phi, 0.0);
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  double dphi = 2.0 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j)
    for (int i = 0; i < n_theta; ++i) {
      double ct = x[i], st = std::sqrt(1.0 - ct * ct);
      double phi = dphi * j, cp = std::cos(phi), sp = std::sin(phi);
      Vec3d X(st * cp, st * sp, ct);
      Vec3d E1(ct * cp, ct * sp, -st);  // ∂θ direction (θ = arccos x decreasing in x)
      Vec3d E2(-sp, cp, 0.0);
      Mat3c U;
      // ordering chosen so det = +1
      U.col(0) = L.basis * E1.cast<cd>();
      U.col(1) = L.basis * E2.cast<cd>();
      U.col(2) = L.basis * X.cast<cd>();
      p.frame(i, j) = U;
      p.pos(i, j) = U.col(2);
      p.quadw(i, j) = w[i] * dphi;
    }
  return p;
}

DiscretePatch geodesic_hemisphere(const Lagrangian3Plane& L, int n1, int n2, double tilt_rad) {
  DiscretePatch p;
  p.n1 = n1;
  p.n2 = n2;
  p.periodic1 = true;  // φ along the equator
  p.closed = false;
  p.pos = Grid2<Vec3c>(n1, n2);
  p.frame = Grid2<Mat3c>(n1, n2);
  p.u = GridD(n1, n2, 0.0);
  p.gaussK = GridD(n1, n2, 1.0);
  p.boundary[0] = {CurveFaceType::AntiSlag, 0};
  double dphi = 2.0 * kPi / n1;
  double ds = 0.45 * kPi / (n2 - 1);  // stop short of the pole
  Vec3c b3t = std::cos(tilt_rad) * L.b(2) + std::sin(tilt_rad) * apply_J(L.b(2));
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      double phi = dphi * i, s = ds * j;
      Vec3c radial = std::cos(phi) * L.b(0) + std::sin(phi) * L.b(1);
      Vec3c dradial = -std::sin(phi) * L.b(0) + std::cos(phi) * L.b(1);
      p.pos(i, j) = std::cos(s) * radial + std::sin(s) * b3t;
      Mat3c U;
      U.col(0) = dradial;
      U.col(1) = -std::sin(s) * radial + std::cos(s) * b3t;
      U.col(2) = p.pos(i, j);
      p.frame(i, j) = U;  // valid SU(3) frame only for tilt = 0
    }
  return p;
}

Lagrangian3Plane equatorial_seam_plane(const Lagrangian3Plane& L) {
  IsotropicPlane2 sigma(L.b(0), L.b(1));
  return anti_slag_extension(sigma);
}

AdmissibleTriple round_sphere_triple(int n, double a) {
  AdmissibleTriple t;
  t.n1 = t.n2 = n;
  t.c = 1.0;
  double h = 2.0 * a / (n - 1);
  t.chart.origin = cd(-a, -a);
  t.chart.step1 = cd(h, 0);
  t.chart.step2 = cd(0, h);
  t.u = GridD(n, n, 0.0);
  t.h = GridC(n, n, cd(0, 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cd z = t.chart.z(i, j);
      t.u(i, j) = std::log(2.0 / (1.0 + std::norm(z)));
    }
  return t;
}

DiscretePatch product_torus(const std::vector<int>& levels, int n) {
  if (levels.size() != 3) throw DomainError("product torus: q != 3 is unsupported");
  int total = 0;
  for (int lv : levels) {
    if (lv != 0) throw DomainError("product torus: only RP^0 factors (n_i = 0) are supported");
    total += lv + 1;
  }
  // scale each circle by r_i = sqrt((n_i+1)/(n+1)), n+1 = total
  std::array<double, 3> r{};
  for (int k = 0; k < 3; ++k) r[k] = std::sqrt(double(levels[k] + 1) / total);
  DiscretePatch p = hexagonal_torus(n);  // chart, frames and weights of the flat torus
  double step = 2.0 * kPi / n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double th1 = step * i, th2 = step * j, th3 = -th1 - th2;
      // Legendrian lift of the product: Σθ_k = 0 slice of the q-torus
      p.pos(i, j) =
          Vec3c(r[0] * std::polar(1.0, th1), r[1] * std::polar(1.0, th2), r[2] * std::polar(1.0, th3));
      p.frame(i, j).col(2) = p.pos(i, j);
    }
  return p;
}

HopfProjection hopf_project(const DiscretePatch& p) {
  HopfProjection out;
  out.points = Grid2<Vec3c>(p.n1, p.n2);
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      Vec3c v = p.pos(i, j);
      for (int k = 0; k < 3; ++k)
        if (std::abs(v(k)) > 1e-8) {
          v *= std::conj(v(k)) / std::abs(v(k));
          break;
        }
      out.points(i, j) = v;
    }
  double worst = 0;
  auto fs = [](const Vec3c& a, const Vec3c& b) {
    double c = std::min(1.0, std::abs(a.dot(b)) / (a.norm() * b.norm()));
    return std::acos(c);
  };
  // compare the projected edge against the patch metric edge length
  auto patch_len = [&](int i0, int j0, int i1, int j1, int i1w, int j1w) {
    if (p.has_chart) {
      cd dz = p.chart.z(i1, j1) - p.chart.z(i0, j0);
      double um = 0.5 * (p.u(i0, j0) + p.u(i1w, j1w));
      return std::exp(um) * std::abs(dz);
    }
    return (p.pos(i1w, j1w) - p.pos(i0, j0)).norm();
  };
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      if (i + 1 < p.n1 || p.periodic1) {
        int i2 = (i + 1) % p.n1;
        double dfs = fs(p.pos(i, j), p.pos(i2, j));
        double dm = patch_len(i, j, i + 1, j, i2, j);
        if (dm > 1e-12) worst = std::max(worst, std::abs(dfs - dm) / dm);
      }
      if (j + 1 < p.n2 || p.periodic2) {
        int j2 = (j + 1) % p.n2;
        double dfs = fs(p.pos(i, j), p.pos(i, j2));
        double dm = patch_len(i, j, i, j + 1, i, j2);
        if (dm > 1e-12) worst = std::max(worst, std::abs(dfs - dm) / dm);
      }
    }
  out.metric_residual = worst;
  return out;
}

AreaReport area_and_bound(const DiscretePatch& p) {
  AreaReport r;
  if (p.closed && p.quadw.size() > 0) {
    r.area = p.area();
    r.cone_mass = r.area / 3.0;
    return r;
  }
  // open patch: midpoint quadrature of the chart metric
  if (!p.has_chart) throw DomainError("area: open patch without chart");
  double cell = std::abs(p.chart.step1.real() * p.chart.step2.imag() -
                         p.chart.step1.imag() * p.chart.step2.real());
  int m1 = p.periodic1 ? p.n1 : p.n1 - 1;
  int m2 = p.periodic2 ? p.n2 : p.n2 - 1;
  double a = 0;
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      double um = 0.25 * (p.u(i, j) + p.u((i + 1) % p.n1, j) + p.u(i, (j + 1) % p.n2) +
                          p.u((i + 1) % p.n1, (j + 1) % p.n2));
      a += std::exp(2.0 * um) * cell;
    }
  r.area = a;
  return r;
}

// ---- reflection continuation ----

ReflectionFace ReflectionFace::anti_slag(const Lagrangian3Plane& Lperp) {
  ReflectionFace f;
  f.type = CurveFaceType::AntiSlag;
  f.coef = AntiSlagReflection(Lperp).S;
  for (int k = 0; k < 3; ++k) f.fixed_basis.push_back(to_real6(Lperp.b(k)));
  return f;
}

ReflectionFace ReflectionFace::complex_plane(const ComplexLineCP2& Pi) {
  ReflectionFace f;
  f.type = CurveFaceType::Complex;
  f.coef = ComplexReflection(Pi).R;
  f.fixed_basis = {to_real6(Pi.s1), to_real6(apply_J(Pi.s1)), to_real6(Pi.s2),
                   to_real6(apply_J(Pi.s2))};
  return f;
}

Vec3c ReflectionFace::apply(const Vec3c& p) const {
  if (type == CurveFaceType::AntiSlag) return -(coef * p.conjugate());
  return coef * p;
}

double ReflectionFace::fixed_set_distance(const Vec3c& p) const {
  Vec6d v = to_real6(p);
  Vec6d proj = Vec6d::Zero();
  for (const auto& b : fixed_basis) proj += b.dot(v) * b;
  return (v - proj).norm();
}

namespace {

// principal angle between two 2-planes spanned by (a1,a2), (b1,b2) in ℝ⁶
double plane_angle(const Vec3c& a1, const Vec3c& a2, const Vec3c& b1, const Vec3c& b2) {
  Eigen::Matrix<double, 6, 2> A, B;
  A.col(0) = to_real6(a1);
  A.col(1) = to_real6(a2);
  B.col(0) = to_real6(b1);
  B.col(1) = to_real6(b2);
  Eigen::HouseholderQR<Eigen::Matrix<double, 6, 2>> qa(A), qb(B);
  Eigen::Matrix<double, 6, 2> Qa = qa.householderQ() * Eigen::Matrix<double, 6, 2>::Identity();
  Eigen::Matrix<double, 6, 2> Qb = qb.householderQ() * Eigen::Matrix<double, 6, 2>::Identity();
  Eigen::Matrix2d M = Qa.transpose() * Qb;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(M);
  double smin = std::min(1.0, svd.singularValues()(1));
  return std::acos(smin);
}

}  // namespace

ReflectContinueResult reflect_continue(const DiscretePatch& p, const ReflectionFace& face,
                                       double boundary_tol, double warn_deg) {
  if (p.n2 < 3) throw DomainError("reflect: patch too thin");
  ReflectContinueResult out;

  for (int i = 0; i < p.n1; ++i)
    out.seam_face_distance = std::max(out.seam_face_distance, face.fixed_set_distance(p.pos(i, 0)));
  if (out.seam_face_distance > boundary_tol)
    throw DomainError("reflect: seam is not on the face fixed-point set (distance " +
                      std::to_string(out.seam_face_distance) + ")");

  // orthogonality: conormal (transverse one-sided difference, made tangent
  // to S⁵ and orthogonal to the seam tangent) against the face tangent space
  double worst_dev = 0;
  for (int i = 0; i < p.n1; ++i) {
    Vec3c t = central_diff1(p.pos, i, 0, p.periodic1);
    Vec3c nu = (-1.5 * p.pos(i, 0) + 2.0 * p.pos(i, 1) - 0.5 * p.pos(i, 2));
    const Vec3c& e3 = p.pos(i, 0);
    nu -= dot6(nu, e3) * e3;
    t -= dot6(t, e3) * e3;
    t /= t.norm();
    nu -= dot6(nu, t) * t;
    nu /= nu.norm();
    // project nu onto the face tangent space at e3 (fixed subspace ∩ e3⊥)
    Vec6d v = to_real6(nu);
    Vec6d proj = Vec6d::Zero();
    for (const auto& b : face.fixed_basis) proj += b.dot(v) * b;
    Vec6d e3r = to_real6(e3);
    proj -= proj.dot(e3r) * e3r;
    double in_face = proj.norm();  // |cos| of the angle to the face
    double dev = std::abs(std::asin(std::min(1.0, in_face))) * 180.0 / kPi;
    worst_dev = std::max(worst_dev, dev);
  }
  out.orthogonality_deviation_deg = worst_dev;
  out.orthogonality_warning = worst_dev > warn_deg;

  auto reflect_frame = [&](const Mat3c& U) {
    Mat3c V;
    if (face.type == CurveFaceType::AntiSlag) {
      V.col(0) = -(face.coef * U.col(0).conjugate());
      V.col(1) = face.coef * U.col(1).conjugate();
      V.col(2) = -(face.coef * U.col(2).conjugate());
    } else {
      V.col(0) = face.coef * U.col(0);
      V.col(1) = -(face.coef * U.col(1));
      V.col(2) = face.coef * U.col(2);
    }
    return V;
  };

  // standalone mirror image (same grid layout, no chart)
  out.reflected = p;
  out.reflected.has_chart = false;
  out.reflected.cubic = GridC();
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      out.reflected.pos(i, j) = face.apply(p.pos(i, j));
      out.reflected.frame(i, j) = reflect_frame(p.frame(i, j));
    }

  // glued union: rows -(n2-1) .. n2-1
  DiscretePatch& u = out.unioned;
  u.n1 = p.n1;
  u.n2 = 2 * p.n2 - 1;
  u.periodic1 = p.periodic1;
  u.periodic2 = false;
  u.pos = Grid2<Vec3c>(u.n1, u.n2);
  u.frame = Grid2<Mat3c>(u.n1, u.n2);
  u.u = GridD(u.n1, u.n2, 0.0);
  u.gaussK = GridD(u.n1, u.n2, 0.0);
  bool chart_ok = p.has_chart && std::abs(p.chart.step1.real()) < 1e-14 &&
                  std::abs(p.chart.step2.imag()) < 1e-14;
  if (chart_ok) {
    u.has_chart = true;
    u.chart.step1 = p.chart.step1;
    u.chart.step2 = p.chart.step2;
    u.chart.origin = p.chart.origin - double(p.n2 - 1) * p.chart.step2;
  }
  for (int j = 0; j < u.n2; ++j) {
    int src = std::abs(j - (p.n2 - 1));
    bool mirrored = j < p.n2 - 1;
    for (int i = 0; i < p.n1; ++i) {
      u.pos(i, j) = mirrored ? face.apply(p.pos(i, src)) : p.pos(i, src);
      u.frame(i, j) = mirrored ? reflect_frame(p.frame(i, src)) : p.frame(i, src);
      u.u(i, j) = p.u(i, src);
      u.gaussK(i, j) = p.gaussK.size() ? p.gaussK(i, src) : 0.0;
    }
  }

  // C¹ match: one-sided tangent planes across the seam
  int seam = p.n2 - 1;
  double jump = 0;
  for (int i = 0; i < u.n1; ++i) {
    if (!u.periodic1 && (i == 0 || i == u.n1 - 1)) continue;
    Vec3c t = central_diff1(u.pos, i, seam, u.periodic1);
    Vec3c up = -1.5 * u.pos(i, seam) + 2.0 * u.pos(i, seam + 1) - 0.5 * u.pos(i, seam + 2);
    Vec3c dn = -(-1.5 * u.pos(i, seam) + 2.0 * u.pos(i, seam - 1) - 0.5 * u.pos(i, seam - 2));
    jump = std::max(jump, plane_angle(t, up, t, dn));
  }
  out.seam_c1_jump = jump;
  return out;
}

}  // namespace slag
