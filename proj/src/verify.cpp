#include "slag/verify.hpp"

#include "slag/assoc.hpp"
#include "slag/cover.hpp"
#include "slag/factory.hpp"
#include "slag/groups.hpp"
#include "slag/integrate.hpp"
#include "slag/patch_ops.hpp"
#include "slag/pde.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace slag {

namespace {

using nlohmann::json;

const cd kOmegaHex = std::polar(1.0, kPi / 3.0);

struct Ctx {
  const VerifyOptions& opt;
  std::vector<CriterionResult> results;
  json report;

  void add(int id, const std::string& name, bool pass, const std::string& details,
           json measured = json::object()) {
    results.push_back({id, name, pass, details});
    json entry;
    entry["id"] = id;
    entry["name"] = name;
    entry["pass"] = pass;
    entry["details"] = details;
    entry["measured"] = std::move(measured);
    report["criteria"].push_back(std::move(entry));
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool in_window(double ratio, double lo = 3.5, double hi = 4.5) {
  return ratio >= lo && ratio <= hi;
}

// ---- criterion 1: group and tessellation exactness ----

void criterion_groups(Ctx& c) {
  bool pass = true;
  std::string details;
  json measured = json::array();
  for (int k = 3; k <= 8; ++k) {
    TessellationReport r = tessellation_report(k);
    double rel = r.relations_residual;
    if (c.opt.sabotage) {
      auto gens = gamma_k3(k);
      Mat3c r1 = reflection_matrix(gens, 1).matrix;
      Mat3c r2 = reflection_matrix(gens, 2).matrix;
      Mat3c r3 = reflection_matrix(gens, 3).matrix;
      r1(0, 1) += 1e-3;
      rel = relations_residual(r1, r2, r3, k);
    }
    bool ok = r.order == 6 * k * k && rel <= 1e-10 && r.center == std::gcd(3, k) &&
              r.vertex_orbits[0] == k * k && r.vertex_orbits[1] == k * k &&
              r.vertex_orbits[2] == 3 * k && r.faces == 6 * k * k &&
              r.vertices == 3 * k + 2 * k * k && r.chi_formula == k * (3 - k) &&
              r.chi_euler == r.chi_formula && r.chi_gauss_bonnet == r.chi_formula &&
              r.genus == 1 + k * (k - 3) / 2 && r.lift_degree == (k % 3 == 0 ? 3 : 1) &&
              r.lifted_genus == (k % 3 == 0 ? 3LL * (1 + (long long)k * (k - 3) / 2)
                                            : (long long)r.genus);
    pass = pass && ok;
    if (!ok) details += " k=" + std::to_string(k) + " mismatch;";
    json jk;
    jk["k"] = k;
    jk["order"] = r.order;
    jk["relations_residual"] = rel;
    jk["center"] = r.center;
    jk["faces"] = r.faces;
    jk["vertices"] = r.vertices;
    jk["edges"] = r.edges;
    jk["orbits"] = {r.vertex_orbits[0], r.vertex_orbits[1], r.vertex_orbits[2]};
    jk["chi"] = {r.chi_formula, r.chi_euler, r.chi_gauss_bonnet};
    jk["genus"] = r.genus;
    jk["lift_degree"] = r.lift_degree;
    jk["lifted_genus"] = r.lifted_genus;
    jk["enlarged_order"] = r.enlarged_order;
    jk["min_separation"] = r.min_separation;
    measured.push_back(jk);
  }
  if (pass) details = "k in 3..8: orders, relations, centers, orbits, chi x3, genus, lifts";
  c.add(1, "group and tessellation exactness", pass, details, measured);
}

// ---- criterion 2: PDE constant-solution recovery ----

void criterion_pde(Ctx& c) {
  bool pass = true;
  std::string details;
  json measured = json::array();
  int n = c.opt.pde_res;
  for (double lam : {0.5, 1.0, 2.0}) {
    PdeProblem prob(FlatDomain::torus(kOmegaHex, n), lam);
    std::mt19937_64 rng(c.opt.seed + (unsigned)(10 * lam));
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    GridD init(n, n);
    for (auto& x : init.v) x = 0.3 * un(rng);
    PdeSolution sol = newton_solve(prob, init, 1e-10);
    double target = prob.constant_solution();
    double err = 0;
    for (double x : sol.u.v) err = std::max(err, std::abs(x - target));
    // quadratic tail on the residual history
    std::vector<double> q;
    const auto& r = sol.history.residual_sup;
    for (size_t k = 0; k + 1 < r.size(); ++k)
      if (r[k] < 1.0 && r[k] > 1e-6 && r[k + 1] > 1e-11) q.push_back(r[k + 1] / (r[k] * r[k]));
    bool quad = q.size() >= 2;
    for (size_t k = 1; k < q.size(); ++k)
      quad = quad && q[k] < 5.0 * q[0] && q[k] > q[0] / 5.0;
    bool ok = err <= 1e-9 && quad;
    pass = pass && ok;
    details += " λ=" + fmt(lam) + ": err=" + fmt(err) + (quad ? " quad" : " tail-fail") + ";";
    json jl;
    jl["lambda"] = lam;
    jl["sup_error"] = err;
    jl["iterations"] = sol.history.iterations;
    jl["residual_history"] = r;
    measured.push_back(jl);
  }
  c.add(2, "pde constant-solution recovery", pass, details, measured);
}

// ---- criterion 3: frame-integration oracle ----

Mat3c procrustes_align(const std::vector<Vec3c>& p, const std::vector<Vec3c>& q) {
  Mat3c M = Mat3c::Zero();
  for (size_t k = 0; k < p.size(); ++k) M += q[k] * p[k].adjoint();
  Eigen::JacobiSVD<Mat3c> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

void criterion_frame(Ctx& c) {
  int n = c.opt.res;
  double phi = kPi / 3.0;
  AdmissibleTriple t = hexagonal_torus_triple(n, phi);
  IntegrationResult r = integrate_frame(t, hexagonal_torus_seed(phi));
  std::vector<Vec3c> got, want;
  double direct = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double a, b;
      HexTorus::theta_from_z(std::polar(1.0, phi) * t.chart.z(i, j), a, b);
      got.push_back(r.patch.pos(i, j));
      want.push_back(HexTorus::point(a, b));
      direct = std::max(direct, (got.back() - want.back()).norm());
    }
  Mat3c A = procrustes_align(got, want);
  double aligned = 0;
  for (size_t k = 0; k < got.size(); ++k)
    aligned = std::max(aligned, (A * got[k] - want[k]).norm());

  auto sphere_holonomy = [](int m) {
    AdmissibleTriple s = round_sphere_triple(m, 1.0);
    return integrate_frame(s, Mat3c::Identity()).holonomy.total;
  };
  double h1 = sphere_holonomy(c.opt.res / 2 + 1);
  double h2 = sphere_holonomy(c.opt.res + 1);
  double ratio = h1 / h2;

  // totally geodesic data lands in one special Lagrangian plane
  AdmissibleTriple s = round_sphere_triple(c.opt.res / 2 + 1, 1.0);
  std::mt19937_64 rng(c.opt.seed + 33);
  std::normal_distribution<double> g;
  Mat3c seed;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) seed(i, j) = cd(g(rng), g(rng));
  seed = FrameSU3::project_su3(seed);
  IntegrationResult rs = integrate_frame(s, seed);
  Eigen::MatrixXd P(6, (Eigen::Index)rs.patch.pos.v.size());
  for (size_t k = 0; k < rs.patch.pos.v.size(); ++k) P.col((Eigen::Index)k) = to_real6(rs.patch.pos.v[k]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeThinU);
  double planarity = svd.singularValues()(3) / svd.singularValues()(0);
  Vec3c b1 = from_real6(svd.matrixU().col(0));
  Vec3c b2 = from_real6(svd.matrixU().col(1));
  Vec3c b3 = from_real6(svd.matrixU().col(2));
  double phase = classify_lagrangian_plane(Lagrangian3Plane(b1, b2, b3));
  double phase_mod = std::min({phase, std::abs(phase - kPi), 2 * kPi - phase});

  bool pass = aligned <= 1e-6 && in_window(ratio) && planarity <= 1e-6 && phase_mod <= 1e-6 &&
              r.holonomy.max_cell <= 1e-10;
  std::string details = "aligned=" + fmt(aligned) + " holonomy-ratio=" + fmt(ratio) +
                        " planarity=" + fmt(planarity) + " plane-phase=" + fmt(phase_mod);
  json m;
  m["aligned_deviation"] = aligned;
  m["direct_deviation"] = direct;
  m["holonomy_ratio"] = ratio;
  m["hex_holonomy_max_cell"] = r.holonomy.max_cell;
  m["planarity"] = planarity;
  m["plane_phase"] = phase_mod;
  c.add(3, "frame-integration oracle", pass, details, m);
}

// ---- criterion 4: identity suite at O(Δ²) ----

struct Solved {
  PdeProblem prob;
  PdeSolution sol;
  AdmissibleTriple triple;
};

Solved solve_rect_triple(int n) {
  PdeProblem prob(FlatDomain::rectangle(1.0, 1.0, n, n), 1.0);
  double ustar = prob.constant_solution();
  prob.boundary = [ustar](cd z) { return ustar + 0.04 * std::sin(2 * kPi * z.real()); };
  PdeSolution sol = newton_solve(prob, GridD(n, n, ustar));
  AdmissibleTriple t = triple_from_solution(prob, sol.u);
  return {std::move(prob), std::move(sol), std::move(t)};
}

double interior_sup(const GridD& f, int margin) {
  double s = 0;
  for (int j = margin; j < f.n2 - margin; ++j)
    for (int i = margin; i < f.n1 - margin; ++i) s = std::max(s, std::abs(f(i, j)));
  return s;
}

void criterion_identities(Ctx& c) {
  int n = c.opt.res, nh = c.opt.res / 2;
  json m;
  bool pass = true;
  std::string details;
  auto check_ratio = [&](const std::string& name, double r1, double r2) {
    double ratio = r1 / r2;
    bool ok = in_window(ratio);
    pass = pass && ok;
    details += " " + name + "=" + fmt(ratio) + (ok ? "" : "(FAIL)") + ";";
    m[name] = {{"coarse", r1}, {"fine", r2}, {"ratio", ratio}};
  };

  // admissibility residual on the round-sphere triple
  {
    auto adm = [](int k) {
      AdmissibleTriple t = round_sphere_triple(k, 1.0);
      GridD f = admissibility_residual(t).field;
      return interior_sup(f, k / 4);
    };
    check_ratio("admissibility_ratio", adm(nh + 1), adm(n + 1));
  }
  // Simons residual on the Newton-solved rectangle triple
  {
    auto sim = [](int k) {
      Solved s = solve_rect_triple(k);
      return interior_sup(simons_residual(s.triple).field, k / 4);
    };
    check_ratio("simons_ratio", sim(nh + 1), sim(n + 1));
    AdmissibleTriple hex = hexagonal_torus_triple(64);
    double hex_sim = simons_residual(hex).sup;
    pass = pass && hex_sim <= 1e-8;
    m["simons_hexagonal"] = hex_sim;
  }
  // metric factors 2-K, 3-2K, 3 on the hexagonal torus
  {
    auto factors = [](int k) {
      DiscretePatch p = hexagonal_torus(k);
      return std::array<double, 3>{gauss_map(p).factor_residual, polar_map(p).factor_residual,
                                   bipolar_map(p).factor_residual};
    };
    auto f1 = factors(nh), f2 = factors(n);
    check_ratio("factor_gauss_ratio", f1[0], f2[0]);
    check_ratio("factor_polar_ratio", f1[1], f2[1]);
    check_ratio("factor_bipolar_ratio", f1[2], f2[2]);
  }
  // Laplace eigen-relations (18), (19), (21)
  {
    auto eigres = [](int k) {
      DiscretePatch p = hexagonal_torus(k);
      return std::array<double, 3>{polar_map(p).laplace_residual,
                                   polar_minus_map(p).laplace_residual,
                                   bipolar_map(p).laplace_residual};
    };
    auto e1 = eigres(nh), e2 = eigres(n);
    check_ratio("eigen18_ratio", e1[0], e2[0]);
    check_ratio("eigen19_ratio", e1[1], e2[1]);
    check_ratio("eigen21_ratio", e1[2], e2[2]);
  }
  // Δu_v + 6u_v - 2 and the mean value
  {
    std::mt19937_64 rng(c.opt.seed + 7);
    std::normal_distribution<double> g;
    Vec3c v(cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)));
    v /= v.norm();
    auto uv = [&](int k) { return projection_length_identity(hexagonal_torus(k), v); };
    ProjectionIdentity p1 = uv(nh), p2 = uv(n);
    check_ratio("projection_laplace_ratio", p1.laplace_residual, p2.laplace_residual);
    double mean_hex = std::abs(*p2.mean_value);
    ProjectionIdentity ps =
        projection_length_identity(geodesic_sphere_gauss(
                                       Lagrangian3Plane(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1)),
                                       nh / 2, nh),
                                   v);
    double mean_sph = std::abs(*ps.mean_value);
    pass = pass && mean_hex <= 1e-6 && mean_sph <= 1e-6 && p2.cross_check <= 1e-12;
    m["mean_value_hex"] = mean_hex;
    m["mean_value_sphere"] = mean_sph;
    m["lemma72_cross_check"] = p2.cross_check;
    details += " mean_hex=" + fmt(mean_hex) + " mean_sph=" + fmt(mean_sph) + ";";
  }
  // flatness of ((c-K)/2)^{1/3} g
  {
    auto flat = [](int k) {
      Solved s = solve_rect_triple(k);
      FlatCheckResult f = flat_check_scaled_metric(s.sol.u, 1.0, s.triple.chart, false, false);
      return interior_sup(f.curvature, k / 4);
    };
    check_ratio("flatness_ratio", flat(nh + 1), flat(n + 1));
    AdmissibleTriple hex = hexagonal_torus_triple(64);
    FlatCheckResult fh = flat_check_scaled_metric(hex.u, 1.0, hex.chart, true, true);
    pass = pass && fh.sup <= 1e-10;
    m["flatness_hexagonal"] = fh.sup;
  }
  c.add(4, "identity suite at second order", pass, details, m);
}

// ---- criterion 5: exact algebraic identities ----

void criterion_exact(Ctx& c) {
  bool pass = true;
  json m;
  std::mt19937_64 rng(c.opt.seed + 11);
  std::normal_distribution<double> g;
  auto rv = [&] { return Vec3c(cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng))); };
  double lemma = 0;
  for (int t = 0; t < 1000; ++t) {
    Vec3c v = rv(), w = rv();
    double lhs = wedge(w, apply_J(w)).dot(wedge(v, apply_J(v)));
    double a = dot6(v, w), b = dot6(apply_J(v), w);
    lemma = std::max(lemma, std::abs(lhs - (a * a + b * b)) / std::max(1.0, std::abs(lhs)));
  }
  pass = pass && lemma <= 1e-12;
  m["lemma72_max_gap"] = lemma;

  double unit = 0;
  for (const DiscretePatch& p :
       {hexagonal_torus(c.opt.res / 2),
        geodesic_sphere_chart(Lagrangian3Plane(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1)),
                              c.opt.res / 2 + 1, 1.0)}) {
    unit = std::max({unit, polar_map(p).unit_defect, bipolar_map(p).unit_defect});
  }
  pass = pass && unit <= 1e-12;
  m["unit_norm_defect"] = unit;

  Eigen::SelfAdjointEigenSolver<Mat15> eig(wedge_J());
  int plus = 0, minus = 0;
  for (int k = 0; k < 15; ++k) {
    if (eig.eigenvalues()(k) > 0.5) ++plus;
    if (eig.eigenvalues()(k) < -0.5) ++minus;
  }
  pass = pass && plus == 9 && minus == 6;
  m["eigenspace_dims"] = {plus, minus};

  AdmissibleTriple t0 = hexagonal_torus_triple(32);
  AdmissibleTriple a1 = associated_family(associated_family(t0, 0.7), 0.9);
  AdmissibleTriple a2 = associated_family(t0, 0.9 + 0.7);
  double comp = 0;
  for (size_t k = 0; k < a1.h.v.size(); ++k) comp = std::max(comp, std::abs(a1.h.v[k] - a2.h.v[k]));
  pass = pass && comp == 0.0;
  m["family_composition_gap"] = comp;

  c.add(5, "exact algebraic identities", pass,
        "lemma72=" + fmt(lemma) + " unit=" + fmt(unit) + " dims=(" + std::to_string(plus) + "," +
            std::to_string(minus) + ") comp=" + fmt(comp),
        m);
}

// ---- criterion 6: rank and dimension oracles ----

void criterion_ranks(Ctx& c) {
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  int d_sphere = killing_jacobi_dim(geodesic_sphere_gauss(L, 24, 48));
  int d_torus = killing_jacobi_dim(hexagonal_torus(24));
  std::mt19937_64 rng(c.opt.seed + 13);
  std::normal_distribution<double> g;
  auto basis = su3_basis();
  Eigen::MatrixXd M(8, 200);
  for (int s = 0; s < 200; ++s) {
    Vec3c p(cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)));
    p /= p.norm();
    for (int b = 0; b < 8; ++b) M(b, s) = generating_function(basis[b], p);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  int gram = 0;
  for (int k = 0; k < 8; ++k)
    if (svd.singularValues()(k) > 1e-8 * svd.singularValues()(0)) ++gram;
  bool pass = d_sphere == 5 && d_torus == 6 && gram == 8;
  json m;
  m["dim_sphere"] = d_sphere;
  m["dim_torus"] = d_torus;
  m["gram_rank"] = gram;
  c.add(6, "rank and dimension oracles", pass,
        "sphere=" + std::to_string(d_sphere) + " torus=" + std::to_string(d_torus) +
            " gram=" + std::to_string(gram),
        m);
}

// ---- criterion 7: geometry oracles ----

void criterion_geometry(Ctx& c) {
  DiscretePatch hex = hexagonal_torus(c.opt.res);
  double area = hex.area();
  double area_err = std::abs(area - 4 * kPi * kPi / std::sqrt(3.0));

  DistanceSweep dt = distance_bound_check(hex, c.opt.probes, c.opt.seed + 17);
  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  DiscretePatch rp2 = geodesic_sphere_gauss(L, c.opt.res / 2, c.opt.res);
  DistanceSweep ds = distance_bound_check(rp2, c.opt.probes, c.opt.seed + 19);

  DiscretePatch hex60 = hexagonal_torus(60);
  auto line = [&](int di, int dj, int len) {
    std::vector<std::pair<int, int>> nodes;
    for (int k = 0; k <= len; ++k) nodes.push_back({3 + k * di, 5 + k * dj});
    return nodes;
  };
  bool curves = classify_curve(hex60, line(1, -1, 12)).cls == CurveClass::AntiSlag &&
                classify_curve(hex60, line(1, 0, 12)).cls == CurveClass::AntiSlag &&
                classify_curve(hex60, line(0, 1, 12)).cls == CurveClass::AntiSlag &&
                classify_curve(hex60, line(1, 1, 12)).cls == CurveClass::Complex &&
                classify_curve(hex60, line(1, -2, 8)).cls == CurveClass::Complex &&
                classify_curve(hex60, line(2, -1, 8)).cls == CurveClass::Complex;

  bool pass = area_err <= 1e-6 && dt.max_distance <= dt.bound && ds.max_distance <= ds.bound &&
              curves;
  json m;
  m["area"] = area;
  m["area_error"] = area_err;
  m["torus_sweep"] = {{"max", dt.max_distance}, {"bound", dt.bound}, {"mesh", dt.mesh_diameter}};
  m["rp2_sweep"] = {{"max", ds.max_distance}, {"bound", ds.bound}, {"mesh", ds.mesh_diameter}};
  m["curves_ok"] = curves;
  c.add(7, "geometry oracles", pass,
        "area_err=" + fmt(area_err) + " torus_max=" + fmt(dt.max_distance) + "<=" + fmt(dt.bound) +
            " rp2_max=" + fmt(ds.max_distance) + (curves ? " curves ok" : " curves FAIL"),
        m);
}

// ---- criterion 8: reflection continuation ----

void criterion_reflection(Ctx& c) {
  int n1 = 64, n2 = 33;
  DiscretePatch half = hexagonal_half_torus(n1, n2);
  ReflectionFace face = ReflectionFace::anti_slag(hexagonal_seam_plane());
  ReflectContinueResult rc = reflect_continue(half, face);
  double dq = 4 * kPi / n1, dp = 2 * kPi / (n2 - 1);
  double closed_form_gap = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      double q = dq * i, pp = -dp * j;
      double th1 = 0.5 * (pp + q), th2 = 0.5 * (pp - q);
      closed_form_gap =
          std::max(closed_form_gap, (rc.reflected.pos(i, j) - HexTorus::point(th1, th2)).norm());
    }
  double involution = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i)
      involution =
          std::max(involution, (face.apply(rc.reflected.pos(i, j)) - half.pos(i, j)).norm());

  Lagrangian3Plane L(Vec3c(1, 0, 0), Vec3c(0, 1, 0), Vec3c(0, 0, 1));
  DiscretePatch tilted = geodesic_hemisphere(L, 48, 25, 5.0 * kPi / 180.0);
  ReflectContinueResult rt = reflect_continue(tilted, ReflectionFace::anti_slag(equatorial_seam_plane(L)));

  bool pass = closed_form_gap <= 1e-8 && involution <= 1e-12 && rt.orthogonality_warning &&
              std::abs(rt.orthogonality_deviation_deg - 5.0) <= 0.1;
  json m;
  m["closed_form_gap"] = closed_form_gap;
  m["involution_gap"] = involution;
  m["tilt_warning"] = rt.orthogonality_warning;
  m["tilt_measured_deg"] = rt.orthogonality_deviation_deg;
  m["seam_c1_jump"] = rc.seam_c1_jump;
  c.add(8, "reflection continuation", pass,
        "gap=" + fmt(closed_form_gap) + " involution=" + fmt(involution) +
            " tilt=" + fmt(rt.orthogonality_deviation_deg) + "deg",
        m);
}

// ---- criterion 9: branched cover ----

void criterion_cover(Ctx& c) {
  BranchedCover pi3;
  std::mt19937_64 rng(c.opt.seed + 23);
  std::normal_distribution<double> g;
  int good = 0, total = 0;
  while (total < 100) {
    cd w(g(rng), g(rng));
    if (std::abs(w) < 0.08 || std::abs(w - 1.0) < 0.08 || std::abs(w + 1.0) < 0.08) continue;
    ++total;
    auto pc = pi3.count_preimages(w);
    if (pc.roots == 3 && pc.multiplicity == 3) ++good;
  }
  auto field = pi3.pullback_field(64);
  double rel_const = field.constancy / std::abs(pi3.expected_constant());
  double branch_gap = 0;
  for (const auto& b : pi3.branch_points())
    branch_gap = std::max(branch_gap, std::abs(pi3.pullback_coefficient(b + cd(0.013, 0.007)) -
                                               pi3.expected_constant()));
  branch_gap /= std::abs(pi3.expected_constant());

  bool pass = good == 100 && rel_const <= 1e-4 && branch_gap <= 1e-4;
  json m;
  m["preimage_hits"] = good;
  m["pullback_rel_constancy"] = rel_const;
  m["branch_boundedness_gap"] = branch_gap;
  c.add(9, "branched cover", pass,
        "preimages=" + std::to_string(good) + "/100 const=" + fmt(rel_const) +
            " branch=" + fmt(branch_gap),
        m);
}

json run_criteria(const VerifyOptions& opt, const RunConfig& config,
                  std::vector<CriterionResult>& out) {
  Ctx c{opt, {}, json::object()};
  c.report["config_hash"] = config.hash();
  c.report["versions"] = {{"slag", kVersion}};
  c.report["resolution"] = opt.res;
  c.report["pde_resolution"] = opt.pde_res;
  c.report["seed"] = opt.seed;
  c.report["criteria"] = json::array();
  criterion_groups(c);
  criterion_pde(c);
  criterion_frame(c);
  criterion_identities(c);
  criterion_exact(c);
  criterion_ranks(c);
  criterion_geometry(c);
  criterion_reflection(c);
  criterion_cover(c);
  out = std::move(c.results);
  return c.report;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& opt, const RunConfig& config) {
  VerifyReport rep;
  json first = run_criteria(opt, config, rep.criteria);
  // criterion 10: identical configs produce byte-identical reports
  std::vector<CriterionResult> again;
  json second = run_criteria(opt, config, again);
  bool identical = first.dump() == second.dump();
  rep.criteria.push_back(
      {10, "determinism", identical, identical ? "two runs byte-identical" : "reports differ"});
  first["criteria"].push_back({{"id", 10},
                               {"name", "determinism"},
                               {"pass", identical},
                               {"details", identical ? "two runs byte-identical" : "reports differ"},
                               {"measured", json::object()}});
  rep.all_pass = true;
  for (const auto& r : rep.criteria) rep.all_pass = rep.all_pass && r.pass;
  first["all_pass"] = rep.all_pass;
  rep.json = std::move(first);
  return rep;
}

}  // namespace slag
