#include "kkent/model.hpp"

#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "kkent/error.hpp"

namespace kkent {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

SpMat identity(Index size) {
  SpMat id(size, size);
  id.setIdentity();
  return id;
}

SpMat from_triplets(Index size, const std::vector<Triplet>& triplets) {
  SpMat m(size, size);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

// 2x2 spin-1/2 matrices in the (up, down) basis.
SpMat local_matrix(Axis axis) {
  switch (axis) {
    case Axis::z:
      return from_triplets(2, {{0, 0, 0.5}, {1, 1, -0.5}});
    case Axis::plus:
      return from_triplets(2, {{0, 1, 1.0}});
    case Axis::minus:
      return from_triplets(2, {{1, 0, 1.0}});
    case Axis::x:
      return from_triplets(2, {{0, 1, 0.5}, {1, 0, 0.5}});
    case Axis::y:
      // S^y = i * B with B = (S^- - S^+) / 2
      return from_triplets(2, {{0, 1, -0.5}, {1, 0, 0.5}});
  }
  throw InvalidArgument("site_operator: unknown axis");
}

SpMat kron(const SpMat& a, const SpMat& b) {
  return SpMat(Eigen::kroneckerProduct(a, b));
}

// Embed a 2x2 operator at `site` of an n-site register (site 0 leftmost).
SpMat embed_in_sector(int n_sites, int site, const SpMat& local) {
  const SpMat left = identity(Index{1} << site);
  const SpMat right = identity(Index{1} << (n_sites - 1 - site));
  return kron(kron(left, local), right);
}

SpMat sector_site(int n_sites, int site, Axis axis) {
  return embed_in_sector(n_sites, site, local_matrix(axis));
}

// S_b . S_{b+1} = S^z S^z + (S^+ S^- + S^- S^+) / 2 within one subsystem.
SpMat sector_bond(int n_sites, int bond) {
  const SpMat zz = sector_site(n_sites, bond, Axis::z) *
                   sector_site(n_sites, bond + 1, Axis::z);
  const SpMat pm = sector_site(n_sites, bond, Axis::plus) *
                   sector_site(n_sites, bond + 1, Axis::minus);
  const SpMat mp = sector_site(n_sites, bond, Axis::minus) *
                   sector_site(n_sites, bond + 1, Axis::plus);
  return zz + 0.5 * (pm + mp);
}

SpMat lift(const SpMat& sector_op, int n_sites, Sector sector) {
  const SpMat id = identity(sector_dimension(n_sites));
  return sector == Sector::spin ? kron(sector_op, id) : kron(id, sector_op);
}

SparseSymMatrix to_upper(const SpMat& m) {
  SparseSymMatrix out;
  out.dimension = m.rows();
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      if (it.row() <= it.col() && it.value() != 0.0) {
        out.entries.push_back({it.row(), it.col(), it.value()});
      }
    }
  }
  return out;
}

SparseMatrix to_general(const SpMat& m) {
  SparseMatrix out;
  out.dimension = m.rows();
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      if (it.value() != 0.0) out.entries.push_back({it.row(), it.col(), it.value()});
    }
  }
  return out;
}

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kAbsoluteMaxSites) {
    throw InvalidArgument("n_sites must be in [1, " + std::to_string(kAbsoluteMaxSites) +
                          "], got " + std::to_string(n_sites));
  }
}

void check_bond(int n_sites, int bond) {
  check_sites(n_sites);
  if (bond < 0 || bond >= n_sites - 1) {
    throw InvalidArgument("bond " + std::to_string(bond) + " out of range for " +
                          std::to_string(n_sites) + " sites");
  }
}

}  // namespace

std::string_view to_string(FieldPattern pattern) {
  switch (pattern) {
    case FieldPattern::off: return "off";
    case FieldPattern::uniform: return "uniform";
    case FieldPattern::staggered: return "staggered";
  }
  return "?";
}

std::string_view to_string(Sector sector) {
  return sector == Sector::spin ? "spin" : "pseudospin";
}

FieldPattern parse_field_pattern(std::string_view name) {
  if (name == "off") return FieldPattern::off;
  if (name == "uniform") return FieldPattern::uniform;
  if (name == "staggered") return FieldPattern::staggered;
  throw InvalidArgument("unknown field pattern '" + std::string(name) +
                        "' (expected off|uniform|staggered)");
}

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  if (name == "plus") return Axis::plus;
  if (name == "minus") return Axis::minus;
  throw InvalidArgument("unknown axis '" + std::string(name) + "'");
}

Sector parse_sector(std::string_view name) {
  if (name == "spin") return Sector::spin;
  if (name == "pseudospin") return Sector::pseudospin;
  throw InvalidArgument("unknown sector '" + std::string(name) + "'");
}

void validate(const ModelParams& params, int max_sites) {
  if (params.n_sites < 1) {
    throw InvalidArgument("n_sites must be >= 1, got " + std::to_string(params.n_sites));
  }
  if (max_sites > kAbsoluteMaxSites) {
    throw CapacityError("site cap " + std::to_string(max_sites) + " exceeds the absolute limit " +
                        std::to_string(kAbsoluteMaxSites));
  }
  if (params.n_sites > max_sites) {
    throw CapacityError("n_sites = " + std::to_string(params.n_sites) + " exceeds the cap of " +
                        std::to_string(max_sites) + " (dimension " +
                        std::to_string(hilbert_dimension(params.n_sites)) + ")");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(params.j_spin) || !finite(params.i_pseudo) || !finite(params.k_coupling) ||
      !finite(params.field_spin.magnitude) || !finite(params.field_pseudo.magnitude)) {
    throw InvalidArgument("couplings and field magnitudes must be finite");
  }
}

Index sector_dimension(int n_sites) { return Index{1} << n_sites; }

Index hilbert_dimension(int n_sites) { return Index{1} << (2 * n_sites); }

Eigen::MatrixXd SparseMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension, dimension);
  for (const auto& e : entries) m(e.row, e.col) += e.value;
  return m;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension, dimension);
  for (const auto& e : entries) {
    m(e.row, e.col) += e.value;
    if (e.row != e.col) m(e.col, e.row) += e.value;
  }
  return m;
}

double SparseSymMatrix::trace() const {
  double t = 0.0;
  for (const auto& e : entries) {
    if (e.row == e.col) t += e.value;
  }
  return t;
}

Eigen::MatrixXd SparseSymMatrix::multiply(const Eigen::MatrixXd& x) const {
  if (x.rows() != dimension) {
    throw InvalidArgument("SparseSymMatrix::multiply: dimension mismatch");
  }
  std::vector<Triplet> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) triplets.emplace_back(e.row, e.col, e.value);
  const SpMat upper = from_triplets(dimension, triplets);
  return upper.selfadjointView<Eigen::Upper>() * x;
}

SparseMatrix site_operator(int n_sites, int site, Axis axis, Sector sector) {
  check_sites(n_sites);
  if (site < 0 || site >= n_sites) {
    throw InvalidArgument("site " + std::to_string(site) + " out of range for " +
                          std::to_string(n_sites) + " sites");
  }
  return to_general(lift(sector_site(n_sites, site, axis), n_sites, sector));
}

std::vector<double> field_profile(const FieldSpec& spec, int n_sites) {
  std::vector<double> h(static_cast<std::size_t>(std::max(n_sites, 0)), 0.0);
  for (int i = 0; i < n_sites; ++i) {
    switch (spec.pattern) {
      case FieldPattern::off: break;
      case FieldPattern::uniform: h[i] = spec.magnitude; break;
      case FieldPattern::staggered: h[i] = (i % 2 == 0) ? spec.magnitude : -spec.magnitude; break;
    }
  }
  return h;
}

SparseSymMatrix bond_exchange(int n_sites, int bond, Sector sector) {
  check_bond(n_sites, bond);
  return to_upper(lift(sector_bond(n_sites, bond), n_sites, sector));
}

SparseSymMatrix bond_product(int n_sites, int bond) {
  check_bond(n_sites, bond);
  const SpMat b = sector_bond(n_sites, bond);
  return to_upper(kron(b, b));
}

SparseSymMatrix total_z(int n_sites, Sector sector) {
  check_sites(n_sites);
  SpMat sum(sector_dimension(n_sites), sector_dimension(n_sites));
  for (int i = 0; i < n_sites; ++i) sum += sector_site(n_sites, i, Axis::z);
  return to_upper(lift(sum, n_sites, sector));
}

SparseSymMatrix build_hamiltonian(const ModelParams& params, int max_sites) {
  validate(params, max_sites);
  const int n = params.n_sites;
  const Index dim = sector_dimension(n);

  // Single-subsystem pieces: H = A (x) 1 + 1 (x) B + K sum_b X_b (x) X_b.
  SpMat spin_part(dim, dim);
  SpMat pseudo_part(dim, dim);
  SpMat full(hilbert_dimension(n), hilbert_dimension(n));

  for (int b = 0; b + 1 < n; ++b) {
    const SpMat bond = sector_bond(n, b);
    if (params.j_spin != 0.0) spin_part += params.j_spin * bond;
    if (params.i_pseudo != 0.0) pseudo_part += params.i_pseudo * bond;
    if (params.k_coupling != 0.0) full += params.k_coupling * kron(bond, bond);
  }

  if (params.field_spin.pattern != FieldPattern::off) {
    const auto h = field_profile(params.field_spin, n);
    for (int i = 0; i < n; ++i) spin_part -= h[i] * sector_site(n, i, Axis::z);
  }
  if (params.field_pseudo.pattern != FieldPattern::off) {
    const auto h = field_profile(params.field_pseudo, n);
    for (int i = 0; i < n; ++i) pseudo_part -= h[i] * sector_site(n, i, Axis::z);
  }

  full += lift(spin_part, n, Sector::spin);
  full += lift(pseudo_part, n, Sector::pseudospin);
  full.prune(0.0);
  return to_upper(full);
}

}  // namespace kkent
