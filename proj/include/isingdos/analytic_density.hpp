#pragma once

// Smooth spectral densities of the Ising chain.
//
// The saddle-point density of the transverse-field chain follows from the
// canonical sum Z(beta) = prod_j cosh(beta e_j / 2) with the momentum sum
// replaced by (N / 2pi) \int dphi. With w(phi) = sqrt(1 - 2 lambda cos phi + lambda^2):
//
//   e(beta)    = -(1/2pi) \int tanh(beta w) w dphi           (saddle condition)
//   S(e)       = e beta + (1/2pi) \int ln cosh(beta w) dphi   (entropy per spin)
//   N / A^2    = \int w^2 / cosh^2(beta w) dphi               (prefactor)
//   rho(e)     = A exp(N S(e))                                 (per unit e)
//
// All phi-integrands are even about phi = pi, so integrals run over [0, pi].

#include "isingdos/density_curve.hpp"
#include "isingdos/model.hpp"

namespace isingdos {

struct SaddleSolution {
  double e = 0.0;
  double beta_sp = 0.0;
  double entropy = 0.0;
  double prefactor = 0.0;  // A for the requested N
  double residual = 0.0;   // |e - e(beta_sp)|
};

/// Energy per spin at inverse temperature beta.
double saddle_energy(double beta, double lambda);

/// (1/2pi) \int ln cosh(beta w) dphi
double log_partition_per_spin(double beta, double lambda);

/// (1/2pi) \int w^2 / cosh^2(beta w) dphi, i.e. -d e / d beta.
double saddle_curvature(double beta, double lambda);

/// Throws OutOfSupport when |e| >= |e_gs(lambda)|, NoConvergence if the
/// bracket cannot be closed.
SaddleSolution solve_saddle(double e, double lambda, int n_spins);

/// rho(e) = A exp(N S(e)), unit integral in e. Requires alpha = 0.
double saddle_density(double e, const IsingParams& params);

/// sqrt(N / (2pi (1 + lambda^2))) exp(-N e^2 / (2 (1 + lambda^2))), per unit e.
double gaussian_density_tfim(double e, const IsingParams& params);

/// Scale s with eps = E / s for the two-field Gaussian.
double rescaled_energy_scale(const IsingParams& params);

/// Gaussian with the cubic (third-moment) correction, per unit eps. The value
/// is returned as computed; it can be negative far in the tails.
double gaussian_density_two_fields(double eps, const IsingParams& params);

/// Same with the correction term dropped.
double gaussian_density_two_fields_pure(double eps);

/// -(1/2pi) \int_0^{2pi} sqrt(1 - 2 lambda cos phi + lambda^2) dphi
double ground_state_energy_per_spin(double lambda);

/// Low-energy tail at lambda = 1, per unit E with the 2^-N normalization.
/// Throws AtOrBelowGroundState when E <= N e_gs(1).
double tail_density_critical(double energy, int n_spins);

struct CurveReport {
  DensityCurve curve;
  int negative_points = 0;  // cubic-corrected points that came out below zero
};

/// Curves over a grid of the given abscissa. The two-field curve reports its
/// negative points and clamps them only when `clamp_negative` is set.
DensityCurve saddle_curve(const std::vector<double>& grid, Abscissa abscissa,
                          const IsingParams& params);
DensityCurve gaussian_curve(const std::vector<double>& grid, Abscissa abscissa,
                            const IsingParams& params);
CurveReport two_field_curve(const std::vector<double>& grid, Abscissa abscissa,
                            const IsingParams& params, bool clamp_negative);
DensityCurve tail_curve(const std::vector<double>& grid, Abscissa abscissa, int n_spins);

}  // namespace isingdos
