#include "kkent/entanglement.hpp"

#include <cmath>
#include <string>

#include "kkent/error.hpp"
#include "linalg.hpp"

namespace kkent {

namespace {

Index factor_dimension(const Eigen::MatrixXd& rho) {
  if (rho.rows() != rho.cols()) throw InvalidArgument("partial_transpose: matrix is not square");
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(rho.rows()))));
  if (d * d != rho.rows() || d == 0) {
    throw InvalidArgument("partial_transpose: dimension " + std::to_string(rho.rows()) +
                          " is not the square of a sector dimension");
  }
  return d;
}

}  // namespace

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& rho, Sector subsystem) {
  const Index d = factor_dimension(rho);
  Eigen::MatrixXd out(rho.rows(), rho.cols());
  // Block (s, s') is the D x D matrix over (t, t').
  for (Index sc = 0; sc < d; ++sc) {
    for (Index sr = 0; sr < d; ++sr) {
      if (subsystem == Sector::spin) {
        out.block(sr * d, sc * d, d, d) = rho.block(sc * d, sr * d, d, d);
      } else {
        out.block(sr * d, sc * d, d, d) = rho.block(sr * d, sc * d, d, d).transpose();
      }
    }
  }
  return out;
}

Eigen::MatrixXd partial_transpose(const DensityMatrix& rho, Sector subsystem) {
  return partial_transpose(rho.matrix, subsystem);
}

double trace_norm(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("trace_norm: matrix is not square");
  return detail::symmetric_eigenvalues(m).cwiseAbs().sum();
}

NegativityResult logarithmic_negativity(const Eigen::MatrixXd& rho, Sector subsystem) {
  const Eigen::VectorXd lambda = detail::symmetric_eigenvalues(partial_transpose(rho, subsystem));
  NegativityResult r;
  r.trace_norm = lambda.cwiseAbs().sum();
  r.negativity_sum = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < 0.0) r.negativity_sum -= lambda(i);
  }
  r.min_pt_eigenvalue = lambda.size() > 0 ? lambda(0) : 0.0;
  if (!std::isfinite(r.trace_norm)) throw NumericalError("partial transpose spectrum is not finite");
  r.log_negativity = std::log(r.trace_norm);
  if (r.log_negativity < kNegativityClamp) {
    r.log_negativity = 0.0;
    r.trace_norm = 1.0;
  }
  return r;
}

NegativityResult logarithmic_negativity(const DensityMatrix& rho, Sector subsystem) {
  return logarithmic_negativity(rho.matrix, subsystem);
}

}  // namespace kkent
