#include "linalg.hpp"

#include <random>
#include <string>

#include <lapacke.h>

#include "kkent/error.hpp"

namespace kkent::detail {

namespace {

void run_dsyevd(char job, Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  const double scale = a.cwiseAbs().maxCoeff();
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, job, 'U', n, a.data(), n, w.data());
  if (info < 0) {
    throw NumericalError("dsyevd: illegal argument " + std::to_string(-info));
  }
  if (info > 0) {
    throw NumericalError("dsyevd failed to converge (dimension " + std::to_string(n) + ", " +
                         std::to_string(info) + " off-diagonal elements did not converge, |A|_max = " +
                         std::to_string(scale) + ")");
  }
}

void run_eigen(bool vectors, Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed to converge (dimension " + std::to_string(a.rows()) + ")");
  }
  w = es.eigenvalues();
  if (vectors) a = es.eigenvectors();
}

// Some optimized BLAS builds return wrong products on some CPUs (seen with the
// OpenBLAS Cooperlake kernels). Solve one mid-sized problem through LAPACK and
// verify it with Eigen's own arithmetic before trusting the library.
bool lapack_passes_self_check() {
  constexpr int n = 300;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd h(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r <= c; ++r) h(r, c) = h(c, r) = u(rng);

  try {
    Eigen::MatrixXd v = h;
    Eigen::VectorXd w(n);
    run_dsyevd('V', v, w);
    Eigen::MatrixXd vals_only = h;
    Eigen::VectorXd w2(n);
    run_dsyevd('N', vals_only, w2);
    const double residual = (h.lazyProduct(v) - v * w.asDiagonal()).cwiseAbs().maxCoeff();
    const double gram = (v.transpose().lazyProduct(v) - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    const double drift = (w - w2).cwiseAbs().maxCoeff();
    const double trace = std::abs(w.sum() - h.trace());
    return residual < 1e-10 && gram < 1e-10 && drift < 1e-10 && trace < 1e-9;
  } catch (const NumericalError&) {
    return false;
  }
}

bool use_lapack() {
  static const bool ok = lapack_passes_self_check();
  return ok;
}

void solve(bool vectors, Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  if (a.rows() != a.cols()) throw InvalidArgument("eigensolve: matrix is not square");
  w.resize(a.rows());
  if (a.rows() == 0) return;
  if (use_lapack()) {
    run_dsyevd(vectors ? 'V' : 'N', a, w);
  } else {
    run_eigen(vectors, a, w);
  }
}

}  // namespace

void symmetric_eigensystem(Eigen::MatrixXd& a, Eigen::VectorXd& w) { solve(true, a, w); }

Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd a) {
  Eigen::VectorXd w;
  solve(false, a, w);
  return w;
}

std::string_view eigensolver_backend() { return use_lapack() ? "lapack" : "eigen"; }

}  // namespace kkent::detail
