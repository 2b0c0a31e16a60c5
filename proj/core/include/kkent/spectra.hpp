#ifndef KKENT_SPECTRA_HPP
#define KKENT_SPECTRA_HPP

#include <cstdint>
#include <filesystem>
#include <string_view>

#include <Eigen/Dense>

#include "kkent/model.hpp"

namespace kkent {

// Full spectrum of a real symmetric matrix. Eigenvalues ascend; column i of
// `eigenvectors` belongs to eigenvalues[i] and the columns are orthonormal.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Index dimension() const { return eigenvalues.size(); }
  double ground_energy() const { return eigenvalues(0); }
  double spectral_range() const;
  // 1e-9 * max(1, spectral_range): eigenvalues within this of E_0 count as ground states.
  double degeneracy_tolerance() const;
  int ground_degeneracy() const;
};

// Dense symmetric eigensolve of `h`. The result is checked for ordering,
// orthonormality (1e-10, probed with random vectors) and residual
// (1e-9 * max(1, range)) before it is returned; violations throw NumericalError.
SpectralDecomposition diagonalize(const SparseSymMatrix& h,
                                  Index max_dimension = hilbert_dimension(kDefaultMaxSites));

// Throws NumericalError describing the first violated invariant.
void check_decomposition(const SparseSymMatrix& h, const SpectralDecomposition& spec);

// "lapack" when the linked LAPACK passed a startup self-check, "eigen" otherwise.
std::string_view eigensolver_backend();

// Binary cache ---------------------------------------------------------------
//
// Layout (little endian):
//   "KKED"  | u32 format version | u64 dimension
//   dimension x f64 eigenvalues
//   dimension^2 x f64 eigenvectors, column-major
inline constexpr std::uint32_t kCacheFormatVersion = 1;

// Stable content hash of the physical parameters (FNV-1a over a canonical encoding).
std::uint64_t params_hash(const ModelParams& params);
std::filesystem::path cache_path(const std::filesystem::path& dir, const ModelParams& params);

void save_decomposition(const SpectralDecomposition& spec, const std::filesystem::path& path);
SpectralDecomposition load_decomposition(const std::filesystem::path& path);

// Loads from `cache_dir` when a valid entry exists, otherwise diagonalizes and
// stores. An empty `cache_dir` disables caching.
SpectralDecomposition diagonalize_cached(const ModelParams& params,
                                         const std::filesystem::path& cache_dir,
                                         int max_sites = kDefaultMaxSites);

}  // namespace kkent

#endif  // KKENT_SPECTRA_HPP
