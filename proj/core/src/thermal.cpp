#include "kkent/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kkent/error.hpp"

namespace kkent {

namespace {

void check_energies(std::span<const double> energies) {
  if (energies.empty()) throw InvalidArgument("empty spectrum");
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!std::isfinite(energies[i])) throw InvalidArgument("non-finite energy level");
    if (i > 0 && energies[i] < energies[i - 1]) {
      throw InvalidArgument("energies must be sorted ascending");
    }
  }
}

}  // namespace

std::vector<double> boltzmann_weights(std::span<const double> energies, double temperature,
                                      double degeneracy_tolerance) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw InvalidArgument("temperature must be a finite value >= 0, got " +
                          std::to_string(temperature));
  }
  check_energies(energies);
  const double e0 = energies.front();
  std::vector<double> w(energies.size(), 0.0);

  if (temperature == 0.0) {
    std::size_t g = 0;
    while (g < energies.size() && energies[g] - e0 <= degeneracy_tolerance) ++g;
    std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(g), 1.0 / static_cast<double>(g));
    return w;
  }

  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    w[i] = std::exp(-(energies[i] - e0) / temperature);
    z += w[i];
  }
  for (double& x : w) {
    x /= z;
    if (x < kWeightFloor) x = 0.0;
  }
  return w;
}

DensityMatrix thermal_density_matrix(const SpectralDecomposition& spec, double temperature) {
  const Index n = spec.dimension();
  if (n == 0 || spec.eigenvectors.rows() != n || spec.eigenvectors.cols() != n) {
    throw InvalidArgument("thermal_density_matrix: malformed spectral decomposition");
  }
  const std::span<const double> energies(spec.eigenvalues.data(), static_cast<std::size_t>(n));
  const std::vector<double> w = boltzmann_weights(energies, temperature, spec.degeneracy_tolerance());

  // Occupied levels form a prefix for T > 0 up to the weight floor; collect them anyway.
  std::vector<Index> occupied;
  for (Index i = 0; i < n; ++i) {
    if (w[i] > 0.0) occupied.push_back(i);
  }
  const auto rank = static_cast<Index>(occupied.size());
  Eigen::MatrixXd scaled(n, rank);
  for (Index k = 0; k < rank; ++k) {
    scaled.col(k) = std::sqrt(w[occupied[k]]) * spec.eigenvectors.col(occupied[k]);
  }

  DensityMatrix rho;
  rho.temperature = temperature;
  rho.matrix = Eigen::MatrixXd::Zero(n, n);
  rho.matrix.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  rho.matrix.triangularView<Eigen::StrictlyUpper>() = rho.matrix.transpose();

  if (temperature == 0.0) {
    rho.log_partition = std::log(static_cast<double>(spec.ground_degeneracy()));
  } else {
    double z = 0.0;
    for (Index i = 0; i < n; ++i) z += std::exp(-(spec.eigenvalues(i) - spec.eigenvalues(0)) / temperature);
    rho.log_partition = std::log(z);
  }
  return rho;
}

double free_energy(std::span<const double> energies, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw InvalidArgument("free_energy: temperature must be > 0, got " + std::to_string(temperature));
  }
  check_energies(energies);
  const double e0 = energies.front();
  double z = 0.0;
  for (double e : energies) z += std::exp(-(e - e0) / temperature);
  return e0 - temperature * std::log(z);
}

double free_energy(const SpectralDecomposition& spec, double temperature) {
  return free_energy(
      std::span<const double>(spec.eigenvalues.data(), static_cast<std::size_t>(spec.dimension())),
      temperature);
}

}  // namespace kkent
