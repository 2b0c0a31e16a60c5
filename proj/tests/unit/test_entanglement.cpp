#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kkent/entanglement.hpp"
#include "kkent/error.hpp"
#include "test_util.hpp"

using namespace kkent;

namespace {

// Random single-sector density matrix: A A^T / Tr(A A^T).
Eigen::MatrixXd random_state(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = g(rng);
  const Eigen::MatrixXd m = a * a.transpose();
  return m / m.trace();
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// (|up,up> + |down,down>) / sqrt(2) in the ordering |s t>.
Eigen::MatrixXd bell_state() {
  Eigen::Vector4d psi(1.0, 0.0, 0.0, 1.0);
  psi /= std::sqrt(2.0);
  return psi * psi.transpose();
}

DensityMatrix gibbs(const ModelParams& p, double t) {
  return thermal_density_matrix(diagonalize(build_hamiltonian(p)), t);
}

}  // namespace

TEST(PartialTranspose, ProductStateTransposesFirstFactor) {
  std::mt19937 rng(3);
  const Eigen::MatrixXd a = random_state(rng, 4);
  const Eigen::MatrixXd b = random_state(rng, 4);
  // Non-symmetric a makes the spin transpose visible.
  Eigen::MatrixXd skew = a;
  skew(0, 1) += 0.01;
  const Eigen::MatrixXd pt = partial_transpose(kron(skew, b), Sector::spin);
  EXPECT_LE((pt - kron(skew.transpose(), b)).cwiseAbs().maxCoeff(), 1e-16);
  const Eigen::MatrixXd ptt = partial_transpose(kron(a, skew), Sector::pseudospin);
  EXPECT_LE((ptt - kron(a, skew.transpose())).cwiseAbs().maxCoeff(), 1e-16);

  const Eigen::MatrixXd rho = kron(a, b);
  EXPECT_LE((testutil::sorted(oracle::eigenvalues(partial_transpose(rho, Sector::spin))) -
             testutil::sorted(oracle::eigenvalues(rho)))
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
}

TEST(PartialTranspose, MatchesIndexLoopOracle) {
  std::mt19937 rng(5);
  const Eigen::MatrixXd rho = random_state(rng, 64);
  EXPECT_EQ(partial_transpose(rho, Sector::spin), oracle::spin_transpose(rho, 8));
}

TEST(PartialTranspose, BellStateSpectrum) {
  const Eigen::MatrixXd pt = partial_transpose(bell_state(), Sector::spin);
  const Eigen::VectorXd ev = testutil::sorted(oracle::eigenvalues(pt));
  EXPECT_NEAR(ev(0), -0.5, 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.5, 1e-15);
  EXPECT_NEAR(pt.trace(), 1.0, 1e-15);
}

TEST(PartialTranspose, MaximallyMixedUnchanged) {
  const Eigen::MatrixXd mixed = Eigen::MatrixXd::Identity(16, 16) / 16.0;
  EXPECT_EQ(partial_transpose(mixed, Sector::spin), mixed);
  EXPECT_EQ(partial_transpose(mixed, Sector::pseudospin), mixed);
}

TEST(PartialTranspose, RejectsNonSquareDimension) {
  EXPECT_THROW(partial_transpose(Eigen::MatrixXd::Identity(8, 8), Sector::spin), InvalidArgument);
  EXPECT_THROW(partial_transpose(Eigen::MatrixXd::Zero(4, 3), Sector::spin), InvalidArgument);
}

TEST(TraceNorm, Examples) {
  EXPECT_NEAR(trace_norm(Eigen::Matrix2d(Eigen::Vector2d(0.5, 0.5).asDiagonal())), 1.0, 1e-15);
  // eigenvalues {1.5, -0.5} in a rotated basis
  const double c = std::cos(0.3), s = std::sin(0.3);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  const Eigen::Matrix2d m = r * Eigen::Vector2d(1.5, -0.5).asDiagonal() * r.transpose();
  EXPECT_NEAR(trace_norm(m), 2.0, 1e-14);
  EXPECT_NEAR(trace_norm(partial_transpose(bell_state(), Sector::spin)), 2.0, 1e-14);
}

TEST(LogarithmicNegativity, BellStateIsLnTwo) {
  const NegativityResult r = logarithmic_negativity(bell_state(), Sector::spin);
  EXPECT_NEAR(r.log_negativity, std::log(2.0), 1e-14);
  EXPECT_NEAR(r.negativity_sum, 0.5, 1e-14);
  EXPECT_NEAR(r.min_pt_eigenvalue, -0.5, 1e-14);
  EXPECT_EQ(r.log_negativity, std::log(r.trace_norm));
}

TEST(LogarithmicNegativity, SingletProductGroundStateIsUnentangled) {
  ModelParams p;
  p.n_sites = 2;
  p.k_coupling = -1.0;
  const SpectralDecomposition s = diagonalize(build_hamiltonian(p));
  ASSERT_EQ(s.ground_degeneracy(), 1);
  EXPECT_EQ(logarithmic_negativity(thermal_density_matrix(s, 0.0)).log_negativity, 0.0);
}

TEST(LogarithmicNegativity, DegenerateBiquadraticGroundManifold) {
  // Frozen from tests/oracle/frozen_values.py (16 x 16 brute force): 2.2e-16,
  // i.e. the equal mixture over the sixfold -3/16 level is PPT.
  ModelParams p;
  p.n_sites = 2;
  p.k_coupling = 1.0;
  const NegativityResult r = logarithmic_negativity(gibbs(p, 0.0));
  EXPECT_NEAR(r.log_negativity, 0.0, 1e-12);
  EXPECT_NEAR(r.trace_norm, 1.0, 1e-12);
}

TEST(LogarithmicNegativity, MaximallyMixedIsExactlyZero) {
  const NegativityResult r = logarithmic_negativity(Eigen::MatrixXd::Identity(64, 64) / 64.0);
  EXPECT_EQ(r.log_negativity, 0.0);
  EXPECT_EQ(r.trace_norm, 1.0);
}

TEST(LogarithmicNegativity, ProductStatesAreUnentangled) {
  std::mt19937 rng(7);
  for (int draw = 0; draw < 10; ++draw) {
    const Eigen::MatrixXd rho = kron(random_state(rng, 4), random_state(rng, 4));
    EXPECT_LE(logarithmic_negativity(rho).log_negativity, 1e-10);
  }
}

TEST(LogarithmicNegativity, InvariantsOnGibbsStates) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> temp(0.02, 2.0);
  for (int draw = 0; draw < 12; ++draw) {
    const ModelParams p = testutil::random_params(rng, 3);
    const DensityMatrix rho = gibbs(p, temp(rng));
    const NegativityResult s = logarithmic_negativity(rho, Sector::spin);
    const NegativityResult t = logarithmic_negativity(rho, Sector::pseudospin);
    EXPECT_NEAR(s.log_negativity, t.log_negativity, 1e-10);
    EXPECT_GE(s.log_negativity, 0.0);
    EXPECT_GE(s.trace_norm, 1.0);
    EXPECT_EQ(s.log_negativity, std::log(s.trace_norm));
    EXPECT_NEAR(s.trace_norm, 1.0 + 2.0 * s.negativity_sum, 1e-10);
  }
}

TEST(LogarithmicNegativity, DecoupledSubsystemsNeverEntangle) {
  std::mt19937 rng(17);
  for (int draw = 0; draw < 10; ++draw) {
    ModelParams p = testutil::random_params(rng, 3);
    p.k_coupling = 0.0;
    for (double t : {0.0, 0.01, 0.2, 1.5}) {
      EXPECT_LE(logarithmic_negativity(gibbs(p, t)).log_negativity, 1e-10);
    }
  }
}

TEST(LogarithmicNegativity, ContinuousInTemperature) {
  ModelParams p;
  p.n_sites = 3;
  p.j_spin = p.i_pseudo = -0.4;
  p.k_coupling = -1.0;
  const SpectralDecomposition s = diagonalize(build_hamiltonian(p));
  for (double t : {0.05, 0.1, 0.3, 0.8}) {
    const double a = logarithmic_negativity(thermal_density_matrix(s, t)).log_negativity;
    const double b = logarithmic_negativity(thermal_density_matrix(s, t + 1e-6)).log_negativity;
    EXPECT_LE(std::abs(a - b), 1e-3) << "T=" << t;
  }
}
