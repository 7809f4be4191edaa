#pragma once

#include "slag/patch.hpp"
#include "slag/pde.hpp"

#include <string>
#include <vector>

namespace slag {

// Grid-field container matching the SLAGGRID1 file format: a 64-byte ASCII
// header (magic, domain kind, value kind, dims, metadata count) followed by
// little-endian 8-byte floats, row-major. Metadata doubles carry the domain
// periods/size, λ and the source list; round trips are bit exact.
struct GridField {
  char domain_kind = 'T';  // 'T' torus | 'R' rectangle
  char value_kind = 'R';   // 'R' real | 'C' complex (interleaved re, im)
  int n1 = 0, n2 = 0;
  std::vector<double> meta;    // torus: re ω, im ω, λ, then source triples
  std::vector<double> values;  // n1*n2 (real) or 2*n1*n2 (complex)

  static GridField from_real(const GridD& g, char domain, std::vector<double> meta);
  static GridField from_complex(const GridC& g, char domain, std::vector<double> meta);
  GridD to_real() const;
  GridC to_complex() const;
};

void write_grid_field(const std::string& path, const GridField& f);
GridField read_grid_field(const std::string& path);

// CSV alternative ("%.17g", bit-exact through parsing).
void write_grid_field_csv(const std::string& path, const GridField& f);
GridField read_grid_field_csv(const std::string& path);

// grid-field metadata for a PDE problem (periods/size, λ, sources)
std::vector<double> problem_meta(const PdeProblem& prob);

// OBJ export: vertices are proj * (6D position); faces triangulate the grid
// cells (wrapping along periodic directions). The companion CSV always
// carries the full 6D coordinates.
void write_patch_obj(const std::string& path, const DiscretePatch& p,
                     const Eigen::Matrix<double, 3, 6>& proj);
void write_patch_csv(const std::string& path, const DiscretePatch& p);

Eigen::Matrix<double, 3, 6> default_projection();

}  // namespace slag
