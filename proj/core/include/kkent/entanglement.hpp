#ifndef KKENT_ENTANGLEMENT_HPP
#define KKENT_ENTANGLEMENT_HPP

#include <Eigen/Dense>

#include "kkent/model.hpp"
#include "kkent/thermal.hpp"

namespace kkent {

// Logarithmic-negativity values below this are reported as exact zero.
inline constexpr double kNegativityClamp = 1e-12;

struct NegativityResult {
  double log_negativity = 0.0;    // natural log of trace_norm; >= 0
  double trace_norm = 1.0;        // sum |lambda| of the partial transpose
  double negativity_sum = 0.0;    // sum |lambda| over negative eigenvalues
  double min_pt_eigenvalue = 0.0;
};

// Partial transpose over the spin or pseudospin factor of a matrix indexed as
// rho[(s, t), (s', t')] with index s * D + t. The dimension must be a perfect
// square D^2.
//   spin:       out[(s,t),(s',t')] = rho[(s',t),(s,t')]
//   pseudospin: out[(s,t),(s',t')] = rho[(s,t'),(s',t)]
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& rho, Sector subsystem);
Eigen::MatrixXd partial_transpose(const DensityMatrix& rho, Sector subsystem);

// Tr sqrt(M^T M) = sum_i |lambda_i| for symmetric M.
double trace_norm(const Eigen::MatrixXd& m);

NegativityResult logarithmic_negativity(const Eigen::MatrixXd& rho, Sector subsystem = Sector::spin);
NegativityResult logarithmic_negativity(const DensityMatrix& rho, Sector subsystem = Sector::spin);

}  // namespace kkent

#endif  // KKENT_ENTANGLEMENT_HPP
