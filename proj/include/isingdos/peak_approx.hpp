#pragma once

// Multi-Gaussian descriptions of the spectrum: one Gaussian per cluster of
// unperturbed levels, weighted by the cluster's share of the 2^N states.

#include <string>
#include <string_view>
#include <vector>

#include "isingdos/combinatorics.hpp"
#include "isingdos/density_curve.hpp"
#include "isingdos/model.hpp"

namespace isingdos {

struct GaussianComponent {
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

struct GaussianMixture {
  std::vector<GaussianComponent> components;

  double total_weight() const;
};

/// Mixture density on a grid of absolute energies, unit integral.
/// Components with zero variance deposit their weight into the enclosing grid
/// cell; components narrower than the widest cell are cell-averaged through
/// the normal CDF; the rest are sampled pointwise. Cells are bounded by the
/// midpoints between grid points.
DensityCurve render(const GaussianMixture& mixture, const std::vector<double>& grid);

/// Mass of the mixture inside each bin [edges[i], edges[i+1]).
std::vector<double> bin_masses(const GaussianMixture& mixture, const std::vector<double>& edges);

/// Bin-averaged mixture density at bin centers.
DensityCurve render_on_bins(const GaussianMixture& mixture, const std::vector<double>& edges);

/// {"components": [{"w": ..., "mu": ..., "var": ...}, ...]}
std::string mixture_to_json(const GaussianMixture& mixture);

struct FixedMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// FiniteGrid averages e_j / 2 over the momentum grid(s) of the given N;
/// Integral uses the N -> infinity phi-integrals.
enum class MomentSource { FiniteGrid, Integral };

/// Mean (N - 2n) <e> and variance 4 n (N - n) / (N - 1) (<e^2> - <e>^2) of the
/// transverse-field levels with n fermions, <.> over e_j / 2.
///
/// For |lambda| > 1 the grid is the one hosting n's occupation parity. For
/// |lambda| <= 1 both grids host every even n and the two sets are pooled:
/// the pooled mean is the average of the sector means and the pooled variance
/// adds the spread of those means.
FixedMoments tfim_fixed_n_moments(int n_spins, double lambda, int n,
                                  MomentSource source = MomentSource::FiniteGrid);

/// |lambda| > 1: 2^-N sum_n C(N, n) G_n. |lambda| <= 1: 2^(1-N) sum_{n even} C(N, n) G_n.
GaussianMixture tfim_mixture(int n_spins, double lambda,
                             MomentSource source = MomentSource::FiniteGrid);
DensityCurve tfim_multi_gaussian(const IsingParams& params, const std::vector<double>& grid,
                                 MomentSource source = MomentSource::FiniteGrid);

enum class VisibilityRegime { TfimLargeLambda, TfimSmallLambda, StrongFields, SmallLambdaIntegerAlpha };

/// "tfim-large", "tfim-small", "strong", "small-lambda-int-alpha". Throws InvalidRegime.
VisibilityRegime parse_regime(std::string_view text);
std::string_view to_string(VisibilityRegime regime);

struct Visibility {
  double n_max = 0.0;
  bool order_of_magnitude = false;  // only the scaling is known
};

/// Largest N at which neighbouring peaks stay resolved.
///   TfimLargeLambda:         2 lambda^2
///   TfimSmallLambda:         8 / lambda^2
///   StrongFields:            2 (lambda^2 + alpha^2)^3 / lambda^4
///   SmallLambdaIntegerAlpha: ~ 1 / lambda^4
Visibility visibility_Nmax(double lambda, double alpha, VisibilityRegime regime);

/// Strong fields, cluster with n spins up along the total field direction.
FixedMoments strong_field_moments(int n_spins, double lambda, double alpha, int n);
GaussianMixture strong_field_mixture(const IsingParams& params);

// Small transverse field at alpha = 1. Classes are labelled by R = 2k - n.

/// f-weighted mean of sqrt(1 + lambda^2)(N - 2n) - (N - 4k) / (1 + lambda^2)
/// over the cells of class R. Throws UnknownClass.
double small_lambda_ER(int n_spins, double lambda, int r);

/// Second-order shift of all strings in cell (n, k), summed over the cell.
/// Throws AlphaSingular at |alpha| = 2.
double small_lambda_deltaE(int n_spins, int n, int m, int k, double alpha, double lambda);

/// Class average of the shift at alpha = 1: sum over the class cells / N_R.
double small_lambda_deltaE_class(int n_spins, double lambda, int r);

/// sigma_R^2 = lambda^4 / (1 + lambda^2)^2 (1 / N_R) sum (N_a + N_b + N_c).
double small_lambda_sigmaR2(int n_spins, double lambda, int r);
double small_lambda_sigmaR(int n_spins, double lambda, int r);

struct ClassSummary {
  int r = 0;
  Count multiplicity = 0;
  double energy = 0.0;  // E_R
  double shift = 0.0;   // Delta E_R
  double variance = 0.0;
};

std::vector<ClassSummary> small_lambda_classes(int n_spins, double lambda);

/// 2^-N sum_R N_R G(E_R + Delta E_R, sigma_R^2). Requires alpha = 1.
/// `with_shift = false` drops Delta E_R.
GaussianMixture small_lambda_mixture_integer_alpha(const IsingParams& params,
                                                   bool with_shift = true);

struct GenericAlphaOptions {
  bool exact_variance = false;  // k(k-1)(N-2k) / ((n-1)(N-n-1)) instead of k^2 (N-2k) / (n (N-n))
  double sigma_floor = 0.0;     // added in quadrature to every width
};

/// 2^-N sum_{n,k} f(n,k) G(alpha (N - 2n) + 4k - N, 2 lambda^4 / (alpha^2 + lambda^2)^2 * ...).
GaussianMixture generic_alpha_mixture(const IsingParams& params,
                                      const GenericAlphaOptions& options = {});

struct XXReport {
  std::size_t dimension = 0;
  double mean = 0.0;
  double variance = 0.0;
  double predicted_mean = 0.0;
  double predicted_variance = 0.0;
  double mean_deviation = 0.0;      // |mean - predicted_mean|
  double variance_deviation = 0.0;  // |variance - predicted_variance|
};

inline constexpr int kXXMaxSpins = 12;

/// Moments of -sqrt(lambda^2 + alpha^2) sum Z - cos^2(phi) sum (s+_p s-_{p+1} + h.c.)
/// on the fixed-n subspace, cos(phi) = lambda / sqrt(lambda^2 + alpha^2),
/// against sqrt(lambda^2 + alpha^2)(N - 2n) and 2n(N - n)/(N - 1) cos^4(phi).
XXReport xx_projection_check(int n_spins, double lambda, double alpha, int n);

}  // namespace isingdos
