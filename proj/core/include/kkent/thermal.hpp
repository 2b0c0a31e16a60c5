#ifndef KKENT_THERMAL_HPP
#define KKENT_THERMAL_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kkent/spectra.hpp"

namespace kkent {

// Canonical-ensemble state rho(T) = Z^-1 sum_i exp(-E_i / T) |i><i|, k_B = 1.
struct DensityMatrix {
  Eigen::MatrixXd matrix;
  double temperature = 0.0;
  // ln sum_j exp(-(E_j - E_0) / T); ln(ground degeneracy) at T = 0.
  double log_partition = 0.0;

  Index dimension() const { return matrix.rows(); }
};

// Weights below this are stored as exact zeros.
inline constexpr double kWeightFloor = 1e-300;

// Normalized Boltzmann weights for ascending `energies`, shifted by the lowest
// level. At T = 0 the weight is spread evenly over levels within
// `degeneracy_tolerance` of the lowest one.
std::vector<double> boltzmann_weights(std::span<const double> energies, double temperature,
                                      double degeneracy_tolerance);

DensityMatrix thermal_density_matrix(const SpectralDecomposition& spec, double temperature);

// F = E_0 - T ln sum_j exp(-(E_j - E_0) / T), T > 0.
double free_energy(std::span<const double> energies, double temperature);
double free_energy(const SpectralDecomposition& spec, double temperature);

}  // namespace kkent

#endif  // KKENT_THERMAL_HPP
