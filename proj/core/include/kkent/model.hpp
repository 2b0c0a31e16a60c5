#ifndef KKENT_MODEL_HPP
#define KKENT_MODEL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace kkent {

using Index = std::int64_t;

// Chain lengths above this need an explicit override (dense 4^N x 4^N work arrays).
inline constexpr int kDefaultMaxSites = 7;
// Absolute ceiling for the override; 4^12 already needs > 100 GB per dense matrix.
inline constexpr int kAbsoluteMaxSites = 12;

enum class FieldPattern { off, uniform, staggered };

// External field on one subsystem. `off` removes the term entirely,
// regardless of magnitude.
struct FieldSpec {
  double magnitude = 0.0;
  FieldPattern pattern = FieldPattern::off;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Open chain of `n_sites` sites, each carrying a spin-1/2 S and a pseudospin-1/2 T.
//
//   H = J sum_b S_b.S_{b+1} + I sum_b T_b.T_{b+1}
//     + K sum_b (S_b.S_{b+1})(T_b.T_{b+1})
//     - sum_i hs_i S^z_i - sum_i ht_i T^z_i
struct ModelParams {
  int n_sites = 1;
  double j_spin = 0.0;
  double i_pseudo = 0.0;
  double k_coupling = 0.0;
  FieldSpec field_spin;
  FieldSpec field_pseudo;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class Axis { x, y, z, plus, minus };
enum class Sector { spin, pseudospin };

std::string_view to_string(FieldPattern pattern);
std::string_view to_string(Sector sector);
// Throws InvalidArgument for unrecognised names.
FieldPattern parse_field_pattern(std::string_view name);
Axis parse_axis(std::string_view name);
Sector parse_sector(std::string_view name);

// Throws InvalidArgument (bad values) or CapacityError (n_sites > max_sites).
void validate(const ModelParams& params, int max_sites = kDefaultMaxSites);

// 2^n_sites: dimension of one subsystem.
Index sector_dimension(int n_sites);
// 4^n_sites: dimension of the full Hilbert space.
Index hilbert_dimension(int n_sites);

struct MatrixEntry {
  Index row;
  Index col;
  double value;
};

// General sparse matrix in coordinate format. Duplicate coordinates add.
struct SparseMatrix {
  Index dimension = 0;
  std::vector<MatrixEntry> entries;

  Eigen::MatrixXd to_dense() const;
};

// Real symmetric sparse matrix; only the upper triangle (row <= col) is stored.
struct SparseSymMatrix {
  Index dimension = 0;
  std::vector<MatrixEntry> entries;

  Eigen::MatrixXd to_dense() const;
  double trace() const;
  // y = M x for a dense block of column vectors.
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
};

// Single-site operator embedded in the full space.
//
// Basis: global index = s * 2^N + t where s packs all spin projections and t
// all pseudospin projections, site 0 in the most significant bit, bit value 0
// meaning "up" (+1/2). S^z has entries +-1/2, S^+ and S^- have unit entries.
// S^y is imaginary in this basis; for Axis::y the returned real matrix B
// satisfies S^y = i B.
SparseMatrix site_operator(int n_sites, int site, Axis axis, Sector sector);

// Per-site field values: uniform -> [m, m, ...], staggered -> [m, -m, ...]
// starting positive at site 0, off -> zeros.
std::vector<double> field_profile(const FieldSpec& spec, int n_sites);

// S_b . S_{b+1} (or T_b . T_{b+1}) on the full space, bond b in [0, n_sites-1).
SparseSymMatrix bond_exchange(int n_sites, int bond, Sector sector);
// (S_b . S_{b+1})(T_b . T_{b+1}) on the full space.
SparseSymMatrix bond_product(int n_sites, int bond);
// sum_i S^z_i (or T^z_i) on the full space.
SparseSymMatrix total_z(int n_sites, Sector sector);

SparseSymMatrix build_hamiltonian(const ModelParams& params,
                                  int max_sites = kDefaultMaxSites);

}  // namespace kkent

#endif  // KKENT_MODEL_HPP
