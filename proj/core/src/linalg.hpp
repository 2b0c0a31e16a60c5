#ifndef KKENT_SRC_LINALG_HPP
#define KKENT_SRC_LINALG_HPP

#include <string_view>

#include <Eigen/Dense>

namespace kkent::detail {

// In place: `a` is overwritten with eigenvectors, `w` receives ascending eigenvalues.
void symmetric_eigensystem(Eigen::MatrixXd& a, Eigen::VectorXd& w);

// Eigenvalues only; `a` is consumed as workspace.
Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd a);

// "lapack" or "eigen", decided once per process.
std::string_view eigensolver_backend();

}  // namespace kkent::detail

#endif  // KKENT_SRC_LINALG_HPP
