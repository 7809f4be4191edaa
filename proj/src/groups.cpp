#include "slag/groups.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace slag {

namespace {

using Key = std::array<long long, 19>;  // 18 rounded entries + antiunitary flag

struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = 1469598103934665603ull;
    for (long long x : k) {
      h ^= (size_t)x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

Key make_key(const Mat3c& m, bool conj_flag, double quantum) {
  Key k{};
  int idx = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      k[idx++] = llround(m(i, j).real() / quantum);
      k[idx++] = llround(m(i, j).imag() / quantum);
    }
  k[18] = conj_flag ? 1 : 0;
  return k;
}

struct ExtEl {
  Mat3c m;
  bool conj = false;
  std::string word;
};

ExtEl compose(const ExtEl& a, const ExtEl& b) {
  // (A, a)∘(B, b): z ↦ A (B z^{(b)})^{(a)}
  ExtEl r;
  r.m = a.m * (a.conj ? b.m.conjugate() : b.m);
  r.conj = a.conj != b.conj;
  r.word = b.word + a.word;
  return r;
}

// generic breadth-first closure over (matrix, conj-flag) pairs
std::vector<ExtEl> close_ext(const std::vector<ExtEl>& gens, int safety_bound, double tol) {
  std::vector<ExtEl> elements;
  std::unordered_map<Key, int, KeyHash> seen;
  auto find_el = [&](const ExtEl& e) {
    Key key = make_key(e.m, e.conj, 1e-6);
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    // rounding may split one element across two keys; fall back to a scan
    for (size_t i = 0; i < elements.size(); ++i)
      if (elements[i].conj == e.conj && (elements[i].m - e.m).norm() < tol) return (int)i;
    return -1;
  };
  auto insert_el = [&](const ExtEl& e) {
    seen.emplace(make_key(e.m, e.conj, 1e-6), (int)elements.size());
    elements.push_back(e);
  };

  insert_el({Mat3c::Identity(), false, ""});
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (size_t g = 0; g < gens.size(); ++g) {
      ExtEl prod = compose(gens[g], ExtEl{elements[cur].m, elements[cur].conj,
                                          elements[cur].word});
      if (find_el(prod) >= 0) continue;
      if ((int)elements.size() >= safety_bound)
        throw ClosureOverflow("closure exceeded the safety bound of " +
                              std::to_string(safety_bound) + " elements");
      insert_el(prod);
      queue.push_back((int)elements.size() - 1);
    }
  }
  return elements;
}

}  // namespace

UnitaryReflection::UnitaryReflection(const Mat3c& m, const ComplexLineCP2& line, std::string w,
                                     double tol)
    : matrix(m), fixed_line(line), word(std::move(w)) {
  if ((m * m - Mat3c::Identity()).norm() > tol)
    throw ConstraintViolation("reflection is not an involution");
  if ((m.adjoint() * m - Mat3c::Identity()).norm() > tol)
    throw ConstraintViolation("reflection is not unitary");
  if ((m * line.s1 - line.s1).norm() > tol || (m * line.s2 - line.s2).norm() > tol)
    throw ConstraintViolation("reflection does not fix its line");
}

PolygonGamma gamma_k3(int k) {
  if (k < 3) throw DomainError("gamma_k3 requires k >= 3");
  cd eps = std::polar(1.0, 2 * kPi / k);
  PolygonGamma g;
  g.k = k;
  Vec3c e3(0, 0, 1), e1(1, 0, 0);
  g.faces.push_back({1, CurveFaceType::Complex, ComplexLineCP2(Vec3c(eps, 1, 0), e3), {}});
  g.faces.push_back({2, CurveFaceType::Complex, ComplexLineCP2(Vec3c(1, 1, 0), e3), {}});
  g.faces.push_back({3, CurveFaceType::Complex, ComplexLineCP2(Vec3c(0, 1, 1), e1), {}});
  // vertices v_i = P_j ∩ P_k for (i j k) cyclic
  Vec3c v1(1, 1, 1), v2(eps, 1, 1), v3(0, 0, 1);
  auto angle = [&](int a, int b, const Vec3c& at) {
    return angle_between_complex_lines(g.faces[a].line, g.faces[b].line, at);
  };
  g.vertices.push_back({v1 / v1.norm(), angle(1, 2, v1)});
  g.vertices.push_back({v2 / v2.norm(), angle(2, 0, v2)});
  g.vertices.push_back({v3, angle(0, 1, v3)});
  return g;
}

UnitaryReflection reflection_matrix(const PolygonGamma& gamma, int face_id) {
  if (face_id < 1 || face_id > 3) throw DomainError("face id must be 1..3");
  cd eps = std::polar(1.0, 2 * kPi / gamma.k);
  Mat3c m = Mat3c::Zero();
  std::string w;
  switch (face_id) {
    case 1:
      m(0, 1) = eps;
      m(1, 0) = std::conj(eps);
      m(2, 2) = 1;
      w = "r1";
      break;
    case 2:
      m(0, 1) = 1;
      m(1, 0) = 1;
      m(2, 2) = 1;
      w = "r2";
      break;
    case 3:
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      w = "r3";
      break;
  }
  return UnitaryReflection(m, gamma.faces[face_id - 1].line, w);
}

int GroupClosure::find(const Mat3c& m, double tol) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if ((elements[i].m - m).norm() < tol) return (int)i;
  return -1;
}

GroupClosure close_group(const std::vector<Mat3c>& generators, int safety_bound, double tol) {
  std::vector<ExtEl> gens;
  for (size_t i = 0; i < generators.size(); ++i) {
    if ((generators[i].adjoint() * generators[i] - Mat3c::Identity()).norm() > 1e-9)
      throw ConstraintViolation("close_group: generator is not unitary");
    gens.push_back({generators[i], false, "g" + std::to_string(i + 1)});
  }
  std::vector<ExtEl> ext = close_ext(gens, safety_bound, tol);
  GroupClosure g;
  g.generators = generators;
  for (auto& e : ext) {
    g.elements.push_back({e.m, e.word.empty() ? "e" : e.word});
    g.max_unitarity_defect = std::max(
        g.max_unitarity_defect, (e.m.adjoint() * e.m - Mat3c::Identity()).cwiseAbs().maxCoeff());
  }
  g.min_separation = 1e300;
  for (size_t i = 0; i < g.elements.size(); ++i)
    for (size_t j = i + 1; j < g.elements.size(); ++j)
      g.min_separation =
          std::min(g.min_separation, (g.elements[i].m - g.elements[j].m).norm());
  return g;
}

namespace {

std::array<Mat3c, 3> k3_generators(int k) {
  PolygonGamma gamma = gamma_k3(k);
  return {reflection_matrix(gamma, 1).matrix, reflection_matrix(gamma, 2).matrix,
          reflection_matrix(gamma, 3).matrix};
}

}  // namespace

double relations_residual(const Mat3c& r1, const Mat3c& r2, const Mat3c& r3, int k) {
  auto pow_n = [](const Mat3c& m, int n) {
    Mat3c p = Mat3c::Identity();
    for (int i = 0; i < n; ++i) p *= m;
    return p;
  };
  double worst = 0;
  auto check = [&](const Mat3c& m) {
    worst = std::max(worst, (m - Mat3c::Identity()).norm());
  };
  check(r1 * r1);
  check(r2 * r2);
  check(r3 * r3);
  check(pow_n(r2 * r3, 3));
  check(pow_n(r3 * r1, 3));
  check(pow_n(r1 * r2, k));
  check(pow_n(r1 * r2 * r3 * r2, 3));
  return worst;
}

double verify_relations(int k) {
  auto r = k3_generators(k);
  return relations_residual(r[0], r[1], r[2], k);
}

int center_order(const GroupClosure& g) {
  int count = 0;
  for (const auto& e : g.elements) {
    bool central = true;
    for (const auto& gen : g.generators)
      if ((e.m * gen - gen * e.m).norm() > 1e-9) {
        central = false;
        break;
      }
    if (central) ++count;
  }
  return count;
}

namespace {

// number of distinct cosets g·D for a subgroup given by element indices
int coset_count(const GroupClosure& g, const std::vector<int>& subgroup) {
  std::unordered_set<Key, KeyHash> cosets;
  for (const auto& e : g.elements) {
    Key best{};
    bool first = true;
    for (int d : subgroup) {
      Mat3c m = e.m * g.elements[d].m;
      Key key = make_key(m, false, 1e-6);
      if (first || key < best) {
        best = key;
        first = false;
      }
    }
    cosets.insert(best);
  }
  return (int)cosets.size();
}

std::vector<int> subgroup_indices(const GroupClosure& g, const std::vector<Mat3c>& gens,
                                  int bound) {
  std::vector<ExtEl> eg;
  for (size_t i = 0; i < gens.size(); ++i) eg.push_back({gens[i], false, ""});
  std::vector<ExtEl> sub = close_ext(eg, bound, 1e-6);
  std::vector<int> idx;
  for (const auto& s : sub) {
    int at = g.find(s.m);
    if (at < 0) throw DomainError("subgroup element missing from the closure");
    idx.push_back(at);
  }
  return idx;
}

}  // namespace

TessellationReport tessellation_report(int k) {
  if (k < 3) throw DomainError("tessellation requires k >= 3");
  TessellationReport rep;
  rep.k = k;
  auto gens = k3_generators(k);
  int bound = 10 * 6 * k * k;
  GroupClosure g = close_group({gens[0], gens[1], gens[2]}, bound);
  rep.order = g.order();
  rep.min_separation = g.min_separation;
  rep.relations_residual = verify_relations(k);
  rep.center = center_order(g);
  rep.faces = g.order();

  // vertex stabilizers: dihedral groups of the adjacent face pairs
  std::array<std::vector<int>, 3> stab = {
      subgroup_indices(g, {gens[1], gens[2]}, bound),   // v1 = P2 ∩ P3
      subgroup_indices(g, {gens[2], gens[0]}, bound),   // v2 = P3 ∩ P1
      subgroup_indices(g, {gens[0], gens[1]}, bound)};  // v3 = P1 ∩ P2
  rep.vertices = 0;
  for (int i = 0; i < 3; ++i) {
    rep.dihedral_orders[i] = (int)stab[i].size();
    rep.vertex_orbits[i] = coset_count(g, stab[i]);
    rep.vertices += rep.vertex_orbits[i];
  }

  // edges: cosets of the three edge involutions
  rep.edges = 0;
  for (int i = 0; i < 3; ++i) rep.edges += coset_count(g, subgroup_indices(g, {gens[i]}, 4));

  PolygonGamma gamma = gamma_k3(k);
  double angle_sum = 0;
  for (const auto& v : gamma.vertices) angle_sum += v.angle;
  rep.gauss_bonnet_integral = rep.faces * (angle_sum - kPi);
  double chi_gb = rep.gauss_bonnet_integral / (2 * kPi);
  if (std::abs(chi_gb - std::round(chi_gb)) > 1e-8)
    throw DomainError("gauss-bonnet count is not an integer");
  rep.chi_gauss_bonnet = (int)std::lround(chi_gb);
  rep.chi_euler = rep.vertices - rep.edges + rep.faces;
  rep.chi_formula = k * (3 - k);

  rep.genus = 1 + k * (k - 3) / 2;
  rep.lift_degree = (k % 3 == 0) ? 3 : 1;
  rep.lifted_genus = (k % 3 == 0) ? 3LL * (1 + (long long)k * (k - 3) / 2)
                                  : 1 + (long long)k * (k - 3) / 2;

  // enlarged group with the antiunitary Lagrangian reflection z ↦ conj(z);
  // the order is reported, no reference value is asserted
  {
    std::vector<ExtEl> eg;
    eg.push_back({gens[0], false, "r1"});
    eg.push_back({gens[1], false, "r2"});
    eg.push_back({gens[2], false, "r3"});
    eg.push_back({Mat3c::Identity(), true, "c"});
    rep.enlarged_order = (int)close_ext(eg, 4 * bound, 1e-6).size();
  }
  return rep;
}

FinitenessReport finiteness_test(const PolygonGamma& gamma, int denom_bound) {
  int m = (int)gamma.faces.size();
  // degenerate polygons (coincident adjacent faces) are rejected
  for (int i = 0; i < m; ++i) {
    const auto& a = gamma.faces[i];
    const auto& b = gamma.faces[(i + 1) % m];
    if (a.type == CurveFaceType::Complex && b.type == CurveFaceType::Complex) {
      Vec3c na = a.line.normal(), nb = b.line.normal();
      if (std::abs(std::abs(na.dot(nb)) - 1.0) < 1e-12)
        throw ConstraintViolation("degenerate polygon: coincident adjacent faces");
    }
  }

  FinitenessReport rep;
  rep.finite_type = true;
  for (size_t vi = 0; vi < gamma.vertices.size(); ++vi) {
    VertexFiniteness vf;
    double x = gamma.vertices[vi].angle / (2 * kPi);
    // continued-fraction approximation with bounded denominator
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double y = x;
    for (int it = 0; it < 64; ++it) {
      long long a = (long long)std::floor(y);
      long long p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > denom_bound) break;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      if (std::abs(x - double(p1) / double(q1)) < 1e-9) {
        vf.rational = true;
        vf.denominator = (int)q1;
        break;
      }
      double frac = y - a;
      if (frac < 1e-12) break;
      y = 1.0 / frac;
    }
    if (!vf.rational) rep.finite_type = false;

    if (vf.rational) {
      // two-generator closure at the vertex (faces vi+1, vi+2 in the cyclic
      // labelling v_i = P_{i+1} ∩ P_{i+2})
      const auto& fa = gamma.faces[(vi + 1) % m];
      const auto& fb = gamma.faces[(vi + 2) % m];
      std::vector<ExtEl> gens;
      auto push_face = [&](const PolygonFace& f) {
        if (f.type == CurveFaceType::Complex)
          gens.push_back({ComplexReflection(f.line).R, false, "r"});
        else if (f.lag)
          gens.push_back({-AntiSlagReflection(*f.lag).S, true, "s"});
      };
      push_face(fa);
      push_face(fb);
      try {
        vf.dihedral_order = (int)close_ext(gens, 8 * denom_bound, 1e-6).size();
      } catch (const ClosureOverflow&) {
        vf.dihedral_order = 0;
        rep.finite_type = false;
      }
    }
    rep.vertices.push_back(vf);
  }
  return rep;
}

}  // namespace slag
