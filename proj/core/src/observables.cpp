#include "kkent/observables.hpp"

#include <numeric>
#include <string>

#include "kkent/error.hpp"

namespace kkent {

namespace {

void check_dims(const Eigen::MatrixXd& rho, Index dimension) {
  if (rho.rows() != dimension || rho.cols() != dimension) {
    throw InvalidArgument("expectation: operator dimension " + std::to_string(dimension) +
                          " does not match density matrix dimension " + std::to_string(rho.rows()));
  }
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

ObservableSummary ObservableSet::summary() const {
  return {mean(ss_bond), mean(tt_bond), mean(sstt_bond), mag_s, mag_t};
}

double expectation(const Eigen::MatrixXd& rho, const SparseSymMatrix& op) {
  check_dims(rho, op.dimension);
  double sum = 0.0;
  for (const auto& e : op.entries) {
    // rho is symmetric, so the mirrored lower entry contributes the same amount.
    sum += (e.row == e.col ? 1.0 : 2.0) * e.value * rho(e.col, e.row);
  }
  return sum;
}

double expectation(const Eigen::MatrixXd& rho, const SparseMatrix& op) {
  check_dims(rho, op.dimension);
  double sum = 0.0;
  for (const auto& e : op.entries) sum += e.value * rho(e.col, e.row);
  return sum;
}

double expectation(const DensityMatrix& rho, const SparseSymMatrix& op) {
  return expectation(rho.matrix, op);
}

ObservableSet compute_observables(const DensityMatrix& rho, const ModelParams& params) {
  validate(params, kAbsoluteMaxSites);
  const int n = params.n_sites;
  check_dims(rho.matrix, hilbert_dimension(n));

  ObservableSet out;
  for (int b = 0; b + 1 < n; ++b) {
    out.ss_bond.push_back(expectation(rho, bond_exchange(n, b, Sector::spin)));
    out.tt_bond.push_back(expectation(rho, bond_exchange(n, b, Sector::pseudospin)));
    out.sstt_bond.push_back(expectation(rho, bond_product(n, b)));
  }
  out.mag_s = expectation(rho, total_z(n, Sector::spin)) / n;
  out.mag_t = expectation(rho, total_z(n, Sector::pseudospin)) / n;
  return out;
}

}  // namespace kkent
