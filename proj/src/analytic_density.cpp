#include "isingdos/analytic_density.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isingdos/error.hpp"
#include "isingdos/quadrature.hpp"

namespace isingdos {

namespace {

constexpr double kPi = std::numbers::pi;

double dispersion(double lambda, double phi) {
  const double r = 1.0 - 2.0 * lambda * std::cos(phi) + lambda * lambda;
  return std::sqrt(std::max(r, 0.0));
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double sech2(double x) {
  const double a = std::abs(x);
  if (a > 350.0) return 0.0;
  const double c = std::cosh(a);
  return 1.0 / (c * c);
}

// (1/pi) \int_0^pi g(phi) dphi == (1/2pi) \int_0^{2pi} g for even g.
double phi_average(const std::function<double(double)>& g) {
  return integrate(g, 0.0, kPi).value / kPi;
}

void require_transverse(const IsingParams& params) {
  if (params.alpha != 0.0) {
    throw Error(ErrorCode::InvalidArgs, "transverse-field density requires alpha = 0");
  }
}

// Jacobian from the per-spin density to the requested abscissa.
struct PerSpinMap {
  double to_e;     // e = x * to_e
  double density;  // rho_x = rho_e * density
};

PerSpinMap per_spin_map(Abscissa abscissa, const IsingParams& params) {
  const double n = params.n_spins;
  switch (abscissa) {
    case Abscissa::PerSpin: return {1.0, 1.0};
    case Abscissa::Energy: return {1.0 / n, 1.0 / n};
    case Abscissa::Rescaled: {
      const double s = rescaled_energy_scale(params);
      return {s / n, s / n};
    }
  }
  return {1.0, 1.0};
}

}  // namespace

double saddle_energy(double beta, double lambda) {
  return -phi_average([&](double phi) {
    const double w = dispersion(lambda, phi);
    return std::tanh(beta * w) * w;
  });
}

double log_partition_per_spin(double beta, double lambda) {
  return phi_average([&](double phi) { return log_cosh(beta * dispersion(lambda, phi)); });
}

double saddle_curvature(double beta, double lambda) {
  return phi_average([&](double phi) {
    const double w = dispersion(lambda, phi);
    return w * w * sech2(beta * w);
  });
}

double ground_state_energy_per_spin(double lambda) {
  return -phi_average([&](double phi) { return dispersion(lambda, phi); });
}

SaddleSolution solve_saddle(double e, double lambda, int n_spins) {
  const double e_gs = ground_state_energy_per_spin(lambda);
  if (!(std::abs(e) < std::abs(e_gs))) {
    throw Error(ErrorCode::OutOfSupport,
                "energy per spin " + std::to_string(e) + " outside (e_gs, -e_gs)");
  }
  SaddleSolution s;
  s.e = e;
  if (e != 0.0) {
    // saddle_energy is decreasing in beta; expand until the root is bracketed.
    auto f = [&](double beta) { return saddle_energy(beta, lambda) - e; };
    double lo = -1.0;
    double hi = 1.0;
    while (f(lo) < 0.0) {
      hi = lo;
      lo *= 2.0;
      if (lo < -1e8) throw Error(ErrorCode::NoConvergence, "saddle bracket diverged");
    }
    while (f(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e8) throw Error(ErrorCode::NoConvergence, "saddle bracket diverged");
    }
    while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    double beta = 0.5 * (lo + hi);
    for (int step = 0; step < 2; ++step) {
      const double slope = saddle_curvature(beta, lambda);
      if (slope <= 0.0) break;
      beta += f(beta) / slope;
    }
    s.beta_sp = beta;
  }
  s.residual = std::abs(e - saddle_energy(s.beta_sp, lambda));
  s.entropy = e * s.beta_sp + log_partition_per_spin(s.beta_sp, lambda);
  const double curvature = saddle_curvature(s.beta_sp, lambda);
  s.prefactor = std::sqrt(n_spins / (2.0 * kPi * curvature));
  return s;
}

double saddle_density(double e, const IsingParams& params) {
  require_transverse(params);
  const SaddleSolution s = solve_saddle(e, params.lambda, params.n_spins);
  return s.prefactor * std::exp(params.n_spins * s.entropy);
}

double gaussian_density_tfim(double e, const IsingParams& params) {
  require_transverse(params);
  const double n = params.n_spins;
  const double v = 1.0 + params.lambda * params.lambda;
  return std::sqrt(n / (2.0 * kPi * v)) * std::exp(-n * e * e / (2.0 * v));
}

double rescaled_energy_scale(const IsingParams& params) {
  return std::sqrt(params.n_spins * (1.0 + params.lambda * params.lambda +
                                     params.alpha * params.alpha));
}

double gaussian_density_two_fields_pure(double eps) {
  return std::exp(-0.5 * eps * eps) / std::sqrt(2.0 * kPi);
}

double gaussian_density_two_fields(double eps, const IsingParams& params) {
  const double a2 = params.alpha * params.alpha;
  const double v = 1.0 + params.lambda * params.lambda + a2;
  const double skew = a2 / (std::sqrt(static_cast<double>(params.n_spins)) * std::pow(v, 1.5));
  return gaussian_density_two_fields_pure(eps) * (1.0 - skew * (eps * eps * eps - 3.0 * eps));
}

double tail_density_critical(double energy, int n_spins) {
  const double n = n_spins;
  const double e_gs = n * ground_state_energy_per_spin(1.0);
  const double x = energy - e_gs;
  if (!(x > 0.0)) {
    throw Error(ErrorCode::AtOrBelowGroundState, "tail density needs E > E_gs");
  }
  const double log_value = -n * std::numbers::ln2 - 0.75 * std::log(x) -
                           0.5 * std::log(8.0 * std::sqrt(6.0 * kPi) * n) +
                           std::sqrt(kPi * n * x / 6.0);
  return std::exp(log_value);
}

DensityCurve saddle_curve(const std::vector<double>& grid, Abscissa abscissa,
                          const IsingParams& params) {
  require_transverse(params);
  const PerSpinMap map = per_spin_map(abscissa, params);
  const double e_gs = ground_state_energy_per_spin(params.lambda);
  DensityCurve c{abscissa, Normalization::UnitIntegral, grid, {}};
  c.values.reserve(grid.size());
  for (double x : grid) {
    const double e = x * map.to_e;
    c.values.push_back(std::abs(e) < std::abs(e_gs) ? saddle_density(e, params) * map.density
                                                    : 0.0);
  }
  return c;
}

DensityCurve gaussian_curve(const std::vector<double>& grid, Abscissa abscissa,
                            const IsingParams& params) {
  const PerSpinMap map = per_spin_map(abscissa, params);
  DensityCurve c{abscissa, Normalization::UnitIntegral, grid, {}};
  c.values.reserve(grid.size());
  for (double x : grid) c.values.push_back(gaussian_density_tfim(x * map.to_e, params) * map.density);
  return c;
}

CurveReport two_field_curve(const std::vector<double>& grid, Abscissa abscissa,
                            const IsingParams& params, bool clamp_negative) {
  const double s = rescaled_energy_scale(params);
  // eps = x * to_eps, rho_x = rho_eps * to_eps
  double to_eps = 1.0;
  if (abscissa == Abscissa::Energy) to_eps = 1.0 / s;
  if (abscissa == Abscissa::PerSpin) to_eps = params.n_spins / s;
  CurveReport r;
  r.curve = DensityCurve{abscissa, Normalization::UnitIntegral, grid, {}};
  r.curve.values.reserve(grid.size());
  for (double x : grid) {
    double v = gaussian_density_two_fields(x * to_eps, params) * to_eps;
    if (v < 0.0) {
      ++r.negative_points;
      if (clamp_negative) v = 0.0;
    }
    r.curve.values.push_back(v);
  }
  return r;
}

DensityCurve tail_curve(const std::vector<double>& grid, Abscissa abscissa, int n_spins) {
  const IsingParams params = IsingParams::transverse(n_spins, 1.0);
  const PerSpinMap map = per_spin_map(abscissa, params);
  // tail is per unit E; rho_x = rho_E * dE/dx
  const double energy_per_x = map.to_e * n_spins;
  const double e_gs = n_spins * ground_state_energy_per_spin(1.0);
  DensityCurve c{abscissa, Normalization::UnitIntegral, grid, {}};
  c.values.reserve(grid.size());
  for (double x : grid) {
    const double energy = x * energy_per_x;
    c.values.push_back(energy > e_gs ? tail_density_critical(energy, n_spins) * energy_per_x
                                     : 0.0);
  }
  return c;
}

}  // namespace isingdos
