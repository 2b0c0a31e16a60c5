#include "kkent/spectra.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "kkent/error.hpp"
#include "linalg.hpp"

namespace kkent {

namespace {

constexpr std::array<char, 4> kCacheMagic = {'K', 'K', 'E', 'D'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("decomposition cache: unexpected end of file");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

void put_reals(std::ostream& out, const double* data, Index count) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * 8));
  } else {
    for (Index i = 0; i < count; ++i) put_le(out, std::bit_cast<std::uint64_t>(data[i]));
  }
}

void get_reals(std::istream& in, double* data, Index count) {
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * 8));
    if (!in) throw IoError("decomposition cache: unexpected end of file");
  } else {
    for (Index i = 0; i < count; ++i) data[i] = std::bit_cast<double>(get_le<std::uint64_t>(in));
  }
}

struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ULL;

  void bytes(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state ^= (v >> (8 * i)) & 0xFFu;
      state *= 0x100000001b3ULL;
    }
  }
  void real(double v) { bytes(std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v)); }
};

}  // namespace

double SpectralDecomposition::spectral_range() const {
  if (eigenvalues.size() == 0) return 0.0;
  return eigenvalues(eigenvalues.size() - 1) - eigenvalues(0);
}

double SpectralDecomposition::degeneracy_tolerance() const {
  return 1e-9 * std::max(1.0, spectral_range());
}

int SpectralDecomposition::ground_degeneracy() const {
  const double tol = degeneracy_tolerance();
  int count = 0;
  while (count < eigenvalues.size() && eigenvalues(count) - eigenvalues(0) <= tol) ++count;
  return count;
}

void check_decomposition(const SparseSymMatrix& h, const SpectralDecomposition& spec) {
  const Index n = h.dimension;
  if (spec.eigenvalues.size() != n || spec.eigenvectors.rows() != n ||
      spec.eigenvectors.cols() != n) {
    throw NumericalError("decomposition shape does not match dimension " + std::to_string(n));
  }
  if (!spec.eigenvalues.allFinite() || !spec.eigenvectors.allFinite()) {
    throw NumericalError("decomposition contains NaN or Inf (dimension " + std::to_string(n) + ")");
  }
  for (Index i = 1; i < n; ++i) {
    if (spec.eigenvalues(i) < spec.eigenvalues(i - 1)) {
      throw NumericalError("eigenvalues are not sorted ascending");
    }
  }
  // A full Gram matrix costs as much as the eigensolve; random probes are O(n^2).
  std::mt19937_64 rng(0x6b6b6564);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd probes(n, 4);
  for (double& x : probes.reshaped()) x = gauss(rng);
  const Eigen::MatrixXd back = spec.eigenvectors.transpose() * (spec.eigenvectors * probes) - probes;
  double ortho = 0.0;
  for (Index k = 0; k < probes.cols(); ++k) {
    ortho = std::max(ortho, back.col(k).cwiseAbs().maxCoeff() / probes.col(k).norm());
  }
  if (ortho > 1e-10) {
    throw NumericalError("eigenvectors not orthonormal: |(V^T V - 1) x| / |x| = " + std::to_string(ortho));
  }
  const Eigen::MatrixXd residual =
      h.multiply(spec.eigenvectors) - spec.eigenvectors * spec.eigenvalues.asDiagonal();
  const double res = residual.cwiseAbs().maxCoeff();
  const double bound = 1e-9 * std::max(1.0, spec.spectral_range());
  if (res > bound) {
    std::ostringstream msg;
    msg << "eigen-residual " << res << " exceeds " << bound << " (dimension " << n << ")";
    throw NumericalError(msg.str());
  }
}

SpectralDecomposition diagonalize(const SparseSymMatrix& h, Index max_dimension) {
  if (h.dimension <= 0) throw InvalidArgument("diagonalize: empty matrix");
  if (h.dimension > max_dimension) {
    throw CapacityError("diagonalize: dimension " + std::to_string(h.dimension) +
                        " exceeds the cap " + std::to_string(max_dimension));
  }
  for (const auto& e : h.entries) {
    if (!std::isfinite(e.value)) throw InvalidArgument("diagonalize: non-finite matrix entry");
  }
  SpectralDecomposition spec;
  spec.eigenvectors = h.to_dense();
  detail::symmetric_eigensystem(spec.eigenvectors, spec.eigenvalues);
  check_decomposition(h, spec);
  return spec;
}

std::string_view eigensolver_backend() { return detail::eigensolver_backend(); }

std::uint64_t params_hash(const ModelParams& params) {
  Fnv1a h;
  h.bytes(kCacheFormatVersion);
  h.bytes(static_cast<std::uint64_t>(params.n_sites));
  h.real(params.j_spin);
  h.real(params.i_pseudo);
  h.real(params.k_coupling);
  for (const FieldSpec& f : {params.field_spin, params.field_pseudo}) {
    h.bytes(static_cast<std::uint64_t>(f.pattern));
    h.real(f.pattern == FieldPattern::off ? 0.0 : f.magnitude);
  }
  return h.state;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const ModelParams& params) {
  std::ostringstream name;
  name << "kked-" << std::hex << std::setw(16) << std::setfill('0') << params_hash(params)
       << ".bin";
  return dir / name.str();
}

void save_decomposition(const SpectralDecomposition& spec, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path).concat(
      ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(kCacheMagic.data(), kCacheMagic.size());
    put_le<std::uint32_t>(out, kCacheFormatVersion);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(spec.dimension()));
    put_reals(out, spec.eigenvalues.data(), spec.eigenvalues.size());
    put_reals(out, spec.eigenvectors.data(), spec.eigenvectors.size());
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SpectralDecomposition load_decomposition(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic) throw IoError(path.string() + ": not a decomposition cache file");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCacheFormatVersion) {
    throw IoError(path.string() + ": unsupported cache format version " + std::to_string(version));
  }
  const auto dim = get_le<std::uint64_t>(in);
  if (dim == 0 || dim > static_cast<std::uint64_t>(hilbert_dimension(kAbsoluteMaxSites))) {
    throw IoError(path.string() + ": implausible dimension " + std::to_string(dim));
  }
  const auto n = static_cast<Index>(dim);
  SpectralDecomposition spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors.resize(n, n);
  get_reals(in, spec.eigenvalues.data(), n);
  get_reals(in, spec.eigenvectors.data(), n * n);
  return spec;
}

SpectralDecomposition diagonalize_cached(const ModelParams& params,
                                         const std::filesystem::path& cache_dir, int max_sites) {
  const SparseSymMatrix h = build_hamiltonian(params, max_sites);
  const Index cap = hilbert_dimension(max_sites);
  if (cache_dir.empty()) return diagonalize(h, cap);

  const auto path = cache_path(cache_dir, params);
  if (std::filesystem::exists(path)) {
    try {
      SpectralDecomposition spec = load_decomposition(path);
      check_decomposition(h, spec);
      return spec;
    } catch (const std::exception&) {
      // stale or corrupt entry: recompute and overwrite
    }
  }
  SpectralDecomposition spec = diagonalize(h, cap);
  std::filesystem::create_directories(cache_dir);
  save_decomposition(spec, path);
  return spec;
}

}  // namespace kkent
