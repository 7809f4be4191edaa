#include "slag/pde.hpp"

#include "slag/weierstrass.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <memory>

namespace slag {

FlatDomain FlatDomain::torus(cd omega, int n) {
  if (omega.imag() <= 0) throw DomainError("torus modulus must have positive imaginary part");
  if (n < 16) throw DomainError("resolution must be at least 16");
  FlatDomain d;
  d.kind = Kind::Torus;
  d.omega = omega;
  d.n1 = d.n2 = n;
  return d;
}

FlatDomain FlatDomain::rectangle(double w, double h, int n1, int n2) {
  if (n1 < 16 || n2 < 16) throw DomainError("resolution must be at least 16");
  FlatDomain d;
  d.kind = Kind::Rectangle;
  d.width = w;
  d.height = h;
  d.n1 = n1;
  d.n2 = n2;
  return d;
}

Chart FlatDomain::chart() const {
  Chart c;
  if (kind == Kind::Torus) {
    c.origin = cd(0, 0);
    c.step1 = cd(1.0 / n1, 0);
    c.step2 = omega / double(n2);
  } else {
    c.origin = cd(0, 0);
    c.step1 = cd(width / (n1 - 1), 0);
    c.step2 = cd(0, height / (n2 - 1));
  }
  return c;
}

PdeProblem::PdeProblem(FlatDomain d, double lam) : domain(d), lambda(lam) {
  if (!(lam > 0)) throw DomainError("lambda must be positive");
  boundary = [this](cd) { return constant_solution(); };
}

void PdeProblem::add_source(cd where, double beta) {
  // snap to the nearest cell center so no grid node hits the singularity
  Chart c = domain.chart();
  double a = ((where - c.origin) / c.step1).real();  // valid for rectangle
  if (domain.kind == FlatDomain::Kind::Torus) {
    // solve where = a step1 + b step2 in real coordinates
    Eigen::Matrix2d M;
    M << c.step1.real(), c.step2.real(), c.step1.imag(), c.step2.imag();
    Eigen::Vector2d rhs(where.real(), where.imag());
    Eigen::Vector2d ab = M.inverse() * rhs;
    double ai = std::round(ab(0) - 0.5) + 0.5, bi = std::round(ab(1) - 0.5) + 0.5;
    sources.push_back({c.z(ai, bi), beta});
  } else {
    double b = ((where - c.origin) / c.step2).real();
    (void)a;
    double ai = std::round(((where - c.origin).real() / c.step1.real()) - 0.5) + 0.5;
    double bi = std::round(b - 0.5) + 0.5;
    sources.push_back({c.z(ai, bi), beta});
  }
  for (size_t i = 0; i + 1 < sources.size(); ++i)
    if (std::abs(sources[i].location - sources.back().location) < 1e-12)
      throw DomainError("singular sources must be distinct");
}

double PdeProblem::singular_part(cd z) const {
  double s = 0;
  for (const auto& src : sources) {
    if (domain.kind == FlatDomain::Kind::Torus)
      s += src.beta * torus_green(z - src.location, domain.omega);
    else
      s += src.beta * std::log(std::abs(z - src.location));
  }
  return s;
}

double PdeProblem::singular_laplacian() const {
  if (domain.kind != FlatDomain::Kind::Torus) return 0.0;
  double sum_beta = 0;
  for (const auto& src : sources) sum_beta += src.beta;
  return -2.0 * kPi * sum_beta / domain.omega.imag();
}

namespace {

struct Workspace {
  Chart chart;
  int n1, n2;
  bool periodic;
  GridD svals;          // singular part at nodes
  double slap;          // Δ of the singular part away from sources
  Grid2<char> excluded;  // residual exclusion mask (4Δ disks, boundary)
  Grid2<char> active;    // unknowns (all torus nodes / rectangle interior)
};

Workspace make_workspace(const PdeProblem& prob) {
  Workspace w;
  w.chart = prob.domain.chart();
  w.n1 = prob.domain.n1;
  w.n2 = prob.domain.n2;
  w.periodic = prob.domain.periodic();
  w.svals = GridD(w.n1, w.n2, 0.0);
  w.slap = prob.singular_laplacian();
  w.excluded = Grid2<char>(w.n1, w.n2, 0);
  w.active = Grid2<char>(w.n1, w.n2, 1);
  double dx = std::max(std::abs(w.chart.step1), std::abs(w.chart.step2));
  std::unique_ptr<WeierstrassP> lattice;
  if (w.periodic && !prob.sources.empty())
    lattice = std::make_unique<WeierstrassP>(prob.domain.omega, 4);
  for (int j = 0; j < w.n2; ++j)
    for (int i = 0; i < w.n1; ++i) {
      cd z = w.chart.z(i, j);
      w.svals(i, j) = prob.sources.empty() ? 0.0 : prob.singular_part(z);
      bool interior = w.periodic || (i > 0 && i < w.n1 - 1 && j > 0 && j < w.n2 - 1);
      if (!interior) {
        w.active(i, j) = 0;
        w.excluded(i, j) = 1;
      }
      for (const auto& src : prob.sources) {
        cd d = z - src.location;
        if (lattice) d = lattice->reduce(d);
        if (std::abs(d) < 4.0 * dx) w.excluded(i, j) = 1;
      }
    }
  return w;
}

double nonlinearity(double u, double lambda) {
  return std::exp(2.0 * u) - 2.0 * lambda * lambda * std::exp(-4.0 * u);
}

double nonlinearity_prime(double u, double lambda) {
  return 2.0 * std::exp(2.0 * u) + 8.0 * lambda * lambda * std::exp(-4.0 * u);
}

// residual field of the regular part v (full u = v + s)
GridD residual_of_v(const PdeProblem& prob, const Workspace& w, const GridD& v) {
  GridD lap = flat_laplacian(v, w.chart, w.periodic, w.periodic);
  GridD r(w.n1, w.n2, 0.0);
  for (int j = 0; j < w.n2; ++j)
    for (int i = 0; i < w.n1; ++i) {
      if (!w.active(i, j)) continue;
      double u = v(i, j) + w.svals(i, j);
      r(i, j) = lap(i, j) + w.slap + nonlinearity(u, prob.lambda);
    }
  return r;
}

double sup_active(const Workspace& w, const GridD& f) {
  double s = 0;
  for (int j = 0; j < w.n2; ++j)
    for (int i = 0; i < w.n1; ++i)
      if (w.active(i, j)) s = std::max(s, std::abs(f(i, j)));
  return s;
}

}  // namespace

PdeResidual pde_residual(const PdeProblem& prob, const GridD& u) {
  Workspace w = make_workspace(prob);
  GridD v = u;
  for (size_t k = 0; k < v.v.size(); ++k) v.v[k] -= w.svals.v[k];
  GridD r = residual_of_v(prob, w, v);
  PdeResidual out;
  out.field = GridD(w.n1, w.n2, 0.0);
  out.excluded = w.excluded;
  for (int j = 0; j < w.n2; ++j)
    for (int i = 0; i < w.n1; ++i) {
      if (w.excluded(i, j)) continue;
      out.field(i, j) = r(i, j);
      out.sup = std::max(out.sup, std::abs(r(i, j)));
    }
  return out;
}

namespace {

double l2_active(const Workspace& w, const GridD& f) {
  double s = 0;
  for (int j = 0; j < w.n2; ++j)
    for (int i = 0; i < w.n1; ++i)
      if (w.active(i, j)) s += f(i, j) * f(i, j);
  return std::sqrt(s);
}

// one damped-Newton descent on the regular part with fixed boundary values
// already written into v; returns false on a stall
bool newton_leg(const PdeProblem& prob, const Workspace& w, GridD& v, double tol, int max_iter,
                NewtonHistory& hist, const GridD* reference = nullptr) {
  auto record_error = [&](const GridD& vv) {
    if (!reference) return;
    double e = 0;
    for (size_t k = 0; k < vv.v.size(); ++k)
      e = std::max(e, std::abs(vv.v[k] + w.svals.v[k] - reference->v[k]));
    hist.sup_error.push_back(e);
  };
  int n1 = w.n1, n2 = w.n2;
  Grid2<int> idx(n1, n2, -1);
  int nunk = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i)
      if (w.active(i, j)) idx(i, j) = nunk++;

  ParallelogramStencil st = laplace_stencil(w.chart);
  const std::array<std::pair<int, int>, 6> offs = {
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {st.d1, st.d2}, {-st.d1, -st.d2}}};
  const std::array<double, 6> offw = {st.w1, st.w1, st.w2, st.w2, st.wd, st.wd};
  auto wrap = [](int a, int n) { return (a % n + n) % n; };

  Eigen::SparseMatrix<double> J(nunk, nunk);
  // direct factorization for Dirichlet problems; preconditioned BiCGSTAB on
  // the torus, where the grid is large and the stencil periodic (the ILUT
  // preconditioner is refreshed only when the Krylov solve degrades)
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> krylov;
  krylov.preconditioner().setDroptol(1e-4);
  krylov.preconditioner().setFillfactor(20);
  krylov.setTolerance(1e-13);
  krylov.setMaxIterations(400);
  bool use_krylov = w.periodic && nunk >= 96 * 96;
  bool analyzed = false;

  hist = NewtonHistory{};
  GridD r = residual_of_v(prob, w, v);
  double rn = sup_active(w, r);
  double r2 = l2_active(w, r);
  hist.residual_sup.push_back(rn);
  record_error(v);

  // pseudo-transient continuation: solve (Δ + V - μ)δ = -F and relax μ to
  // zero as the residual drops (switched evolution relaxation); μ = 0 is a
  // plain Newton step, so the tail converges quadratically
  double mu = 0.0;
  int rejections = 0;
  for (int it = 0; it < max_iter && rn > tol;) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(size_t(nunk) * 7);
    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < n1; ++i) {
        int row = idx(i, j);
        if (row < 0) continue;
        double diag = st.center + nonlinearity_prime(v(i, j) + w.svals(i, j), prob.lambda) - mu;
        trip.emplace_back(row, row, diag);
        for (int k = 0; k < 6; ++k) {
          int a = i + offs[k].first, b = j + offs[k].second;
          if (w.periodic) {
            a = wrap(a, n1);
            b = wrap(b, n2);
          } else if (a < 0 || a >= n1 || b < 0 || b >= n2) {
            continue;
          }
          int col = idx(a, b);
          if (col >= 0) trip.emplace_back(row, col, offw[k]);
          // Dirichlet neighbors contribute to the residual, not the matrix
        }
      }
    J.setFromTriplets(trip.begin(), trip.end());

    Eigen::VectorXd F(nunk);
    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < n1; ++i)
        if (idx(i, j) >= 0) F(idx(i, j)) = r(i, j);
    Eigen::VectorXd delta;
    bool solved = false;
    if (use_krylov) {
      krylov.compute(J);
      delta = krylov.solve(-F);
      double rel = (J * delta + F).norm() / std::max(F.norm(), 1e-300);
      solved = std::isfinite(rel) && rel <= 1e-8;
    } else {
      if (!analyzed) {
        lu.analyzePattern(J);
        analyzed = true;
      }
      lu.factorize(J);
      solved = lu.info() == Eigen::Success;
      if (solved) delta = lu.solve(-F);
    }
    if (!solved) {
      mu = std::max(4.0 * mu, 40.0);
      if (++rejections > 60) return false;
      continue;
    }

    // a short backtracking pass; mostly active in the transient phase
    bool accepted = false;
    for (double scale : {1.0, 0.5, 0.25}) {
      GridD vtry = v;
      for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i)
          if (idx(i, j) >= 0) vtry(i, j) += scale * delta(idx(i, j));
      GridD rtry = residual_of_v(prob, w, vtry);
      double r2_try = l2_active(w, rtry);
      if (std::isfinite(r2_try) && r2_try < r2) {
        v = vtry;
        r = rtry;
        mu *= r2_try / r2;  // SER relaxation toward pure Newton
        if (mu < 1e-3) mu = 0.0;
        r2 = r2_try;
        rn = sup_active(w, r);
        hist.residual_sup.push_back(rn);
        record_error(v);
        hist.step_scale.push_back(scale);
        hist.iterations = ++it;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      mu = std::max(4.0 * mu, 40.0);
      if (++rejections > 60) return false;
    }
  }
  hist.converged = rn <= tol;
  return hist.converged;
}

}  // namespace

PdeSolution singular_solve(const PdeProblem& prob, const GridD& initial_v, double tol,
                           const GridD* reference) {
  Workspace w = make_workspace(prob);
  int n1 = w.n1, n2 = w.n2;
  GridD v = initial_v;
  if (v.n1 != n1 || v.n2 != n2) throw DomainError("initial field has the wrong shape");
  for (auto& x : v.v)
    if (!std::isfinite(x)) throw DomainError("initial field must be finite");

  auto set_boundary = [&](GridD& f, double blend) {
    if (w.periodic) return;
    double c = prob.constant_solution();
    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < n1; ++i)
        if (!w.active(i, j)) {
          double g = prob.boundary(w.chart.z(i, j));
          f(i, j) = (1.0 - blend) * c + blend * g - w.svals(i, j);
        }
  };

  set_boundary(v, 1.0);
  NewtonHistory hist;
  if (newton_leg(prob, w, v, tol, 200, hist, reference)) {
    PdeSolution sol;
    sol.v = v;
    sol.u = v;
    for (size_t k = 0; k < sol.u.v.size(); ++k) sol.u.v[k] += w.svals.v[k];
    sol.history = std::move(hist);
    return sol;
  }

  // homotopy fallback: walk the boundary data (rectangle) or nothing more to
  // try on the torus, where the plain leg already had the full problem
  if (w.periodic) throw NewtonFailure("newton stalled on the torus problem", hist);
  GridD vh(n1, n2, prob.constant_solution());
  double blend = 0.0, step = 0.25;
  int refinements = 0;
  while (blend < 1.0) {
    double next = std::min(1.0, blend + step);
    GridD vtry = vh;
    set_boundary(vtry, next);
    NewtonHistory leg;
    if (newton_leg(prob, w, vtry, tol, 200, leg)) {
      vh = vtry;
      blend = next;
      hist = leg;
    } else {
      step *= 0.5;
      if (++refinements > 8)
        throw NewtonFailure("newton homotopy stalled at blend " + std::to_string(next), leg);
    }
  }
  hist.used_homotopy = true;
  PdeSolution sol;
  sol.v = vh;
  sol.u = vh;
  for (size_t k = 0; k < sol.u.v.size(); ++k) sol.u.v[k] += w.svals.v[k];
  sol.history = std::move(hist);
  return sol;
}

PdeSolution newton_solve(const PdeProblem& prob, const GridD& initial, double tol,
                         const GridD* reference) {
  if (!prob.sources.empty()) {
    // subtract the singular part from the supplied full initial field
    Workspace w = make_workspace(prob);
    GridD v0 = initial;
    for (size_t k = 0; k < v0.v.size(); ++k) v0.v[k] -= w.svals.v[k];
    return singular_solve(prob, v0, tol, reference);
  }
  return singular_solve(prob, initial, tol, reference);
}

GridD curvature_of(const PdeProblem& prob, const GridD& u) {
  return curvature_field(u, prob.domain.chart(), prob.domain.periodic(), prob.domain.periodic());
}

double jacobian_check(const PdeProblem& prob, const GridD& u, const GridD& direction,
                      double step) {
  double dn = 0;
  for (double x : direction.v) dn = std::max(dn, std::abs(x));
  if (dn == 0) throw DomainError("jacobian check: zero direction");

  Workspace w = make_workspace(prob);
  GridD up = u, um = u;
  for (size_t k = 0; k < u.v.size(); ++k) {
    up.v[k] += step * direction.v[k];
    um.v[k] -= step * direction.v[k];
  }
  GridD vp = up, vm = um, v = u;
  for (size_t k = 0; k < u.v.size(); ++k) {
    vp.v[k] -= w.svals.v[k];
    vm.v[k] -= w.svals.v[k];
    v.v[k] -= w.svals.v[k];
  }
  GridD rp = residual_of_v(prob, w, vp);
  GridD rm = residual_of_v(prob, w, vm);
  // analytic linearization: Δd + V d
  GridD lapd = flat_laplacian(direction, w.chart, w.periodic, w.periodic);
  double worst = 0, scale = 0;
  for (int j = 0; j < w.n2; ++j)
    for (int i = 0; i < w.n1; ++i) {
      if (!w.active(i, j)) continue;
      double fd = (rp(i, j) - rm(i, j)) / (2.0 * step);
      double an = lapd(i, j) + nonlinearity_prime(u(i, j), prob.lambda) * direction(i, j);
      worst = std::max(worst, std::abs(fd - an));
      scale = std::max(scale, std::abs(an));
    }
  return worst / std::max(scale, 1e-300);
}

AdmissibleTriple triple_from_solution(const PdeProblem& prob, const GridD& u) {
  AdmissibleTriple t;
  t.chart = prob.domain.chart();
  t.n1 = prob.domain.n1;
  t.n2 = prob.domain.n2;
  t.periodic1 = t.periodic2 = prob.domain.periodic();
  t.c = 1.0;
  t.u = u;
  t.h = GridC(t.n1, t.n2, cd(prob.lambda, 0.0));
  return t;
}

}  // namespace slag
