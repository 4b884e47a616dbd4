#include "isingdos/model.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "isingdos/error.hpp"

namespace isingdos {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AtOrBelowGroundState: return "AtOrBelowGroundState";
    case ErrorCode::AlphaSingular: return "AlphaSingular";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::InvalidRegime: return "InvalidRegime";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::DisjointSupports: return "DisjointSupports";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void IsingParams::validate() const {
  if (n_spins < 2) {
    throw Error(ErrorCode::InvalidArgs, "spin count must be at least 2");
  }
  if (model == ModelKind::TransverseField && alpha != 0.0) {
    throw Error(ErrorCode::InvalidArgs,
                "transverse-field model requires alpha = 0");
  }
}

double MomentSet::operator[](int order) const {
  switch (order) {
    case 1: return m1;
    case 2: return m2;
    case 3: return m3;
    case 4: return m4;
    default:
      throw Error(ErrorCode::InvalidArgs, "moment order must be in 1..4");
  }
}

namespace {

void check_dense_budget(const IsingParams& params, std::size_t budget_bytes) {
  params.validate();
  // 2^(2N) doubles; anything past N = 30 overflows the byte count anyway.
  if (params.n_spins > 30) {
    throw Error(ErrorCode::CapExceeded, "dense matrix dimension too large");
  }
  const std::size_t dim = std::size_t{1} << params.n_spins;
  const long double bytes = static_cast<long double>(dim) * dim * sizeof(double);
  if (bytes > static_cast<long double>(budget_bytes)) {
    throw Error(ErrorCode::CapExceeded,
                "dense Hamiltonian for N=" + std::to_string(params.n_spins) +
                    " exceeds the configured memory budget");
  }
}

}  // namespace

DenseMatrix build_hamiltonian(const IsingParams& params, std::size_t budget_bytes) {
  check_dense_budget(params, budget_bytes);
  const int n = params.n_spins;
  const std::size_t dim = std::size_t{1} << n;
  DenseMatrix h{dim, std::vector<double>(dim * dim, 0.0)};

  for (std::size_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int site = 0; site < n; ++site) {
      const std::size_t bit = std::size_t{1} << site;
      const std::size_t next = std::size_t{1} << ((site + 1) % n);
      diag -= params.lambda * ((b & bit) ? -1.0 : 1.0);
      h(b ^ bit, b) -= params.alpha;
      // For N = 2 both bonds flip the same pair and accumulate.
      h(b ^ bit ^ next, b) -= 1.0;
    }
    h(b, b) += diag;
  }
  return h;
}

std::vector<double> symmetric_eigenvalues(DenseMatrix matrix) {
  const auto dim = static_cast<lapack_int>(matrix.dim);
  std::vector<double> values(matrix.dim);
  if (dim == 0) return values;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', dim,
                                         matrix.data.data(), dim, values.data());
  if (info != 0) {
    throw Error(ErrorCode::EigensolverFailure,
                "dsyevd failed with info=" + std::to_string(info));
  }
  std::sort(values.begin(), values.end());
  return values;
}

ManyBodySpectrum exact_spectrum(const IsingParams& params, std::size_t budget_bytes) {
  ManyBodySpectrum out;
  out.params = params;
  out.method = SpectrumMethod::Dense;
  out.energies = symmetric_eigenvalues(build_hamiltonian(params, budget_bytes));
  return out;
}

ManyBodySpectrum classical_spectrum(const IsingParams& params) {
  params.validate();
  if (params.lambda != 0.0) {
    throw Error(ErrorCode::InvalidArgs, "classical spectrum requires lambda = 0");
  }
  if (params.n_spins > 26) {
    throw Error(ErrorCode::CapExceeded, "classical enumeration limited to N <= 26");
  }
  const int n = params.n_spins;
  const std::uint64_t dim = params.dimension();
  ManyBodySpectrum out;
  out.params = params;
  out.method = SpectrumMethod::Classical;
  out.energies.reserve(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (int site = 0; site < n; ++site) {
      const double s = ((b >> site) & 1u) ? -1.0 : 1.0;
      const double s_next = ((b >> ((site + 1) % n)) & 1u) ? -1.0 : 1.0;
      e -= s * s_next + params.alpha * s;
    }
    out.energies.push_back(e);
  }
  std::sort(out.energies.begin(), out.energies.end());
  return out;
}

MomentSet numeric_moments(std::span<const double> energies, int max_order) {
  if (max_order < 1 || max_order > 4) {
    throw Error(ErrorCode::InvalidArgs, "max_order must be in 1..4");
  }
  if (energies.empty()) {
    throw Error(ErrorCode::EmptySpectrum, "cannot take moments of an empty spectrum");
  }
  // Compensated sums; the raw powers span many orders of magnitude.
  long double sums[4] = {0, 0, 0, 0};
  for (double e : energies) {
    long double p = 1.0L;
    for (int k = 0; k < max_order; ++k) {
      p *= e;
      sums[k] += p;
    }
  }
  const long double inv = 1.0L / static_cast<long double>(energies.size());
  MomentSet m;
  double* slots[4] = {&m.m1, &m.m2, &m.m3, &m.m4};
  for (int k = 0; k < max_order; ++k) *slots[k] = static_cast<double>(sums[k] * inv);
  return m;
}

MomentSet numeric_moments(const ManyBodySpectrum& spectrum, int max_order) {
  return numeric_moments(std::span<const double>(spectrum.energies), max_order);
}

MomentSet analytic_moments(const IsingParams& params) {
  const double n = params.n_spins;
  const double l2 = params.lambda * params.lambda;
  const double a2 = params.model == ModelKind::TwoField ? params.alpha * params.alpha : 0.0;
  const double s = 1.0 + l2 + a2;
  MomentSet m;
  m.m1 = 0.0;
  m.m2 = n * s;
  m.m3 = -6.0 * n * a2;
  m.m4 = 3.0 * n * n * s * s +
         n * (24.0 * a2 - 2.0 * a2 * a2 - 2.0 - 2.0 * l2 * l2 - 8.0 * l2 - 4.0 * l2 * a2);
  return m;
}

bool moment_formula_exact(int n_spins, int order) { return n_spins >= order + 1; }

}  // namespace isingdos
