#ifndef KKENT_OBSERVABLES_HPP
#define KKENT_OBSERVABLES_HPP

#include <vector>

#include <Eigen/Dense>

#include "kkent/model.hpp"
#include "kkent/thermal.hpp"

namespace kkent {

// Bond-averaged correlators and magnetizations; the compact form written to CSV.
struct ObservableSummary {
  double ss_bond_mean = 0.0;
  double tt_bond_mean = 0.0;
  double sstt_bond_mean = 0.0;
  double mag_s = 0.0;
  double mag_t = 0.0;
};

// Thermal nearest-neighbour correlators, one entry per bond of the open chain,
// and magnetizations per site.
struct ObservableSet {
  std::vector<double> ss_bond;    // <S_b . S_{b+1}>
  std::vector<double> tt_bond;    // <T_b . T_{b+1}>
  std::vector<double> sstt_bond;  // <(S_b . S_{b+1})(T_b . T_{b+1})>
  double mag_s = 0.0;             // <sum_i S^z_i> / N
  double mag_t = 0.0;

  // Bond means are 0 for a single site (no bonds).
  ObservableSummary summary() const;
};

// Tr(rho A), summed over the stored entries of A.
double expectation(const Eigen::MatrixXd& rho, const SparseSymMatrix& op);
double expectation(const Eigen::MatrixXd& rho, const SparseMatrix& op);
double expectation(const DensityMatrix& rho, const SparseSymMatrix& op);

ObservableSet compute_observables(const DensityMatrix& rho, const ModelParams& params);

}  // namespace kkent

#endif  // KKENT_OBSERVABLES_HPP
