#include "slag/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace slag {

GridField GridField::from_real(const GridD& g, char domain, std::vector<double> meta) {
  GridField f;
  f.domain_kind = domain;
  f.value_kind = 'R';
  f.n1 = g.n1;
  f.n2 = g.n2;
  f.meta = std::move(meta);
  f.values.assign(g.v.begin(), g.v.end());
  return f;
}

GridField GridField::from_complex(const GridC& g, char domain, std::vector<double> meta) {
  GridField f;
  f.domain_kind = domain;
  f.value_kind = 'C';
  f.n1 = g.n1;
  f.n2 = g.n2;
  f.meta = std::move(meta);
  f.values.reserve(2 * g.v.size());
  for (const auto& z : g.v) {
    f.values.push_back(z.real());
    f.values.push_back(z.imag());
  }
  return f;
}

GridD GridField::to_real() const {
  if (value_kind != 'R') throw DomainError("grid field holds complex values");
  GridD g(n1, n2);
  std::copy(values.begin(), values.end(), g.v.begin());
  return g;
}

GridC GridField::to_complex() const {
  if (value_kind != 'C') throw DomainError("grid field holds real values");
  GridC g(n1, n2);
  for (size_t k = 0; k < g.v.size(); ++k) g.v[k] = cd(values[2 * k], values[2 * k + 1]);
  return g;
}

namespace {

void put_le_double(std::string& out, double x) {
  uint64_t bits;
  std::memcpy(&bits, &x, 8);
  for (int b = 0; b < 8; ++b) out.push_back(char((bits >> (8 * b)) & 0xff));
}

double get_le_double(const char* p) {
  uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= (uint64_t)(unsigned char)p[b] << (8 * b);
  double x;
  std::memcpy(&x, &bits, 8);
  return x;
}

}  // namespace

void write_grid_field(const std::string& path, const GridField& f) {
  char header[65];
  std::snprintf(header, sizeof(header), "SLAGGRID1 %c %c %10d %10d %8d", f.domain_kind,
                f.value_kind, f.n1, f.n2, (int)f.meta.size());
  std::string out(header);
  out.resize(64, ' ');
  for (double x : f.meta) put_le_double(out, x);
  for (double x : f.values) put_le_double(out, x);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open " + path + " for writing");
  os.write(out.data(), (std::streamsize)out.size());
}

GridField read_grid_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (data.size() < 64 || data.compare(0, 9, "SLAGGRID1") != 0)
    throw DomainError("not a SLAGGRID1 file: " + path);
  GridField f;
  int nmeta = 0;
  if (std::sscanf(data.c_str() + 10, "%c %c %10d %10d %8d", &f.domain_kind, &f.value_kind,
                  &f.n1, &f.n2, &nmeta) != 5)
    throw DomainError("corrupt grid header in " + path);
  size_t count = (size_t)nmeta + (size_t)f.n1 * f.n2 * (f.value_kind == 'C' ? 2 : 1);
  if (data.size() != 64 + 8 * count) throw DomainError("grid payload size mismatch in " + path);
  f.meta.resize(nmeta);
  for (int k = 0; k < nmeta; ++k) f.meta[k] = get_le_double(data.data() + 64 + 8 * k);
  size_t nv = count - nmeta;
  f.values.resize(nv);
  for (size_t k = 0; k < nv; ++k)
    f.values[k] = get_le_double(data.data() + 64 + 8 * (nmeta + k));
  return f;
}

void write_grid_field_csv(const std::string& path, const GridField& f) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot open " + path + " for writing");
  char buf[64];
  os << "# SLAGGRID1 " << f.domain_kind << ' ' << f.value_kind << ' ' << f.n1 << ' ' << f.n2
     << ' ' << f.meta.size() << '\n';
  os << "# meta";
  for (double x : f.meta) {
    std::snprintf(buf, sizeof(buf), " %.17g", x);
    os << buf;
  }
  os << '\n';
  int per_row = f.value_kind == 'C' ? 2 * f.n1 : f.n1;
  for (int j = 0; j < f.n2; ++j) {
    for (int i = 0; i < per_row; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", f.values[(size_t)j * per_row + i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

GridField read_grid_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open " + path);
  GridField f;
  std::string line;
  std::getline(is, line);
  int nmeta = 0;
  if (std::sscanf(line.c_str(), "# SLAGGRID1 %c %c %d %d %d", &f.domain_kind, &f.value_kind,
                  &f.n1, &f.n2, &nmeta) != 5)
    throw DomainError("corrupt csv grid header in " + path);
  std::getline(is, line);
  {
    const char* p = line.c_str() + 6;  // skip "# meta"
    for (int k = 0; k < nmeta; ++k) {
      char* end;
      f.meta.push_back(std::strtod(p, &end));
      p = end;
    }
  }
  while (std::getline(is, line)) {
    const char* p = line.c_str();
    while (true) {
      char* end;
      double x = std::strtod(p, &end);
      if (end == p) break;
      f.values.push_back(x);
      p = (*end == ',') ? end + 1 : end;
    }
  }
  return f;
}

std::vector<double> problem_meta(const PdeProblem& prob) {
  std::vector<double> m;
  if (prob.domain.kind == FlatDomain::Kind::Torus) {
    m = {prob.domain.omega.real(), prob.domain.omega.imag(), prob.lambda};
  } else {
    m = {prob.domain.width, prob.domain.height, prob.lambda};
  }
  for (const auto& s : prob.sources) {
    m.push_back(s.location.real());
    m.push_back(s.location.imag());
    m.push_back(s.beta);
  }
  return m;
}

Eigen::Matrix<double, 3, 6> default_projection() {
  Eigen::Matrix<double, 3, 6> p = Eigen::Matrix<double, 3, 6>::Zero();
  p(0, 0) = p(1, 1) = p(2, 2) = 1.0;
  return p;
}

void write_patch_obj(const std::string& path, const DiscretePatch& p,
                     const Eigen::Matrix<double, 3, 6>& proj) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot open " + path + " for writing");
  os << "# slag patch " << p.n1 << " x " << p.n2 << "\n";
  char buf[128];
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      Eigen::Vector3d v = proj * to_real6(p.pos(i, j));
      std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v(0), v(1), v(2));
      os << buf;
    }
  auto vid = [&](int i, int j) { return 1 + (i % p.n1 + p.n1) % p.n1 + p.n1 * ((j % p.n2 + p.n2) % p.n2); };
  int m1 = p.periodic1 ? p.n1 : p.n1 - 1;
  int m2 = p.periodic2 ? p.n2 : p.n2 - 1;
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      os << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' ' << vid(i + 1, j + 1) << "\n";
      os << "f " << vid(i, j) << ' ' << vid(i + 1, j + 1) << ' ' << vid(i, j + 1) << "\n";
    }
}

void write_patch_csv(const std::string& path, const DiscretePatch& p) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot open " + path + " for writing");
  os << "i,j,x1,x2,x3,y1,y2,y3\n";
  char buf[256];
  for (int j = 0; j < p.n2; ++j)
    for (int i = 0; i < p.n1; ++i) {
      Vec6d r = to_real6(p.pos(i, j));
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j, r(0),
                    r(1), r(2), r(3), r(4), r(5));
      os << buf;
    }
}

}  // namespace slag
