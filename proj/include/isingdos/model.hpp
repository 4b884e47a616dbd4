#pragma once

// Quantum Ising chain in transverse and longitudinal fields,
//
//   H = -sum_n X_n X_{n+1} - lambda sum_n Z_n - alpha sum_n X_n,
//
// on a periodic ring of N spins. Matrices are written in the Z product basis:
// bit n of a basis index is 0 when Z_n = +1 and 1 when Z_n = -1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace isingdos {

enum class ModelKind { TransverseField, TwoField };

struct IsingParams {
  int n_spins = 2;
  double lambda = 0.0;
  double alpha = 0.0;
  ModelKind model = ModelKind::TransverseField;

  static IsingParams transverse(int n_spins, double lambda) {
    return {n_spins, lambda, 0.0, ModelKind::TransverseField};
  }
  static IsingParams two_field(int n_spins, double lambda, double alpha) {
    return {n_spins, lambda, alpha, ModelKind::TwoField};
  }

  /// Throws InvalidArgs when N < 2 or a transverse-field model carries a
  /// nonzero alpha.
  void validate() const;

  /// Only meaningful for N <= 63; materializing paths cap N well below that.
  std::uint64_t dimension() const { return std::uint64_t{1} << n_spins; }
};

enum class SpectrumMethod { Dense, Fermion, Classical };

struct ManyBodySpectrum {
  std::vector<double> energies;  // ascending, size 2^N
  SpectrumMethod method = SpectrumMethod::Dense;
  IsingParams params;
};

/// Normalized trace moments <H^k> = 2^-N Tr H^k for k = 1..4.
struct MomentSet {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;

  double operator[](int order) const;
};

/// Row-major dense symmetric matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  double& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
};

/// Default budget for a dense 2^N x 2^N matrix of doubles: 4 GiB, i.e. N <= 14.
inline constexpr std::size_t kDefaultDenseBudgetBytes = std::size_t{4} << 30;

DenseMatrix build_hamiltonian(const IsingParams& params,
                              std::size_t budget_bytes = kDefaultDenseBudgetBytes);

/// All 2^N eigenvalues by dense symmetric diagonalization, ascending.
ManyBodySpectrum exact_spectrum(const IsingParams& params,
                                std::size_t budget_bytes = kDefaultDenseBudgetBytes);

/// Eigenvalues of a dense symmetric matrix, ascending. Consumes the matrix.
std::vector<double> symmetric_eigenvalues(DenseMatrix matrix);

/// lambda = 0 only: the Hamiltonian is diagonal in the X basis, so the
/// spectrum is the classical ring energy -sum s_n s_{n+1} - alpha sum s_n.
ManyBodySpectrum classical_spectrum(const IsingParams& params);

/// Moments of a spectrum up to max_order (<= 4); higher entries stay 0.
MomentSet numeric_moments(std::span<const double> energies, int max_order = 4);
MomentSet numeric_moments(const ManyBodySpectrum& spectrum, int max_order = 4);

/// Closed-form trace moments of the infinite-ring expansion.
MomentSet analytic_moments(const IsingParams& params);

/// Whether the closed-form moment of the given order is exact on a ring of
/// n_spins sites. Loops of `order` bond terms wrap the ring when N <= order;
/// the threshold N >= order + 1 was established against dense traces.
bool moment_formula_exact(int n_spins, int order);

}  // namespace isingdos
