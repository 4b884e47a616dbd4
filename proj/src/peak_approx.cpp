#include "isingdos/peak_approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "isingdos/analytic_density.hpp"
#include "isingdos/error.hpp"
#include "isingdos/free_fermion.hpp"
#include "isingdos/model.hpp"
#include "json.hpp"

namespace isingdos {

namespace {

constexpr double kReach = 40.0;

double normal_cdf(double x, double mean, double sigma) {
  return 0.5 * std::erfc(-(x - mean) / (sigma * std::numbers::sqrt2));
}

double normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double share(Count count, int n_spins) {
  return std::ldexp(static_cast<double>(count), -n_spins);
}

void require_spins(int n_spins) {
  if (n_spins < 2) throw Error(ErrorCode::InvalidArgs, "N must be at least 2");
}

void require_n(int n_spins, int n) {
  require_spins(n_spins);
  if (n < 0 || n > n_spins) throw Error(ErrorCode::InvalidArgs, "n must lie in [0, N]");
}

// Cell edges around each grid point: midpoints inside, mirrored half-cells at the ends.
std::vector<double> cell_edges(const std::vector<double>& grid) {
  const std::size_t n = grid.size();
  std::vector<double> edges(n + 1);
  for (std::size_t i = 1; i < n; ++i) edges[i] = 0.5 * (grid[i - 1] + grid[i]);
  edges[0] = grid[0] - 0.5 * (grid[1] - grid[0]);
  edges[n] = grid[n - 1] + 0.5 * (grid[n - 1] - grid[n - 2]);
  return edges;
}

void add_bin_masses(const GaussianComponent& c, const std::vector<double>& edges,
                    std::vector<double>& masses) {
  if (c.variance <= 0.0) {
    if (c.mean < edges.front() || c.mean >= edges.back()) return;
    const auto it = std::upper_bound(edges.begin(), edges.end(), c.mean);
    masses[static_cast<std::size_t>(it - edges.begin()) - 1] += c.weight;
    return;
  }
  const double sigma = std::sqrt(c.variance);
  // Beyond 40 sigma the CDF is flat to double precision.
  const auto first = std::upper_bound(edges.begin(), edges.end(), c.mean - kReach * sigma);
  const auto last = std::lower_bound(edges.begin(), edges.end(), c.mean + kReach * sigma);
  const std::size_t begin = first == edges.begin() ? 0 : static_cast<std::size_t>(first - edges.begin()) - 1;
  const std::size_t end = std::min(static_cast<std::size_t>(last - edges.begin()) + 1, edges.size());
  double lower = normal_cdf(edges[begin], c.mean, sigma);
  for (std::size_t i = begin; i + 1 < end; ++i) {
    const double upper = normal_cdf(edges[i + 1], c.mean, sigma);
    masses[i] += c.weight * (upper - lower);
    lower = upper;
  }
}

}  // namespace

double GaussianMixture::total_weight() const {
  double t = 0.0;
  for (const auto& c : components) t += c.weight;
  return t;
}

DensityCurve render(const GaussianMixture& mixture, const std::vector<double>& grid) {
  if (grid.size() < 2) throw Error(ErrorCode::InvalidArgs, "grid needs at least two points");
  const std::vector<double> edges = cell_edges(grid);
  double widest = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) widest = std::max(widest, edges[i + 1] - edges[i]);

  DensityCurve out{Abscissa::Energy, Normalization::UnitIntegral, grid,
                   std::vector<double>(grid.size(), 0.0)};
  std::vector<double> masses(grid.size(), 0.0);
  for (const auto& c : mixture.components) {
    if (c.variance <= 0.0 || std::sqrt(c.variance) < widest) {
      add_bin_masses(c, edges, masses);
      continue;
    }
    const double reach = kReach * std::sqrt(c.variance);
    const auto lo = std::lower_bound(grid.begin(), grid.end(), c.mean - reach) - grid.begin();
    const auto hi = std::upper_bound(grid.begin(), grid.end(), c.mean + reach) - grid.begin();
    for (auto i = lo; i < hi; ++i) {
      out.values[i] += c.weight * normal_pdf(grid[i], c.mean, c.variance);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.values[i] += masses[i] / (edges[i + 1] - edges[i]);
  }
  return out;
}

std::vector<double> bin_masses(const GaussianMixture& mixture, const std::vector<double>& edges) {
  if (edges.size() < 2) throw Error(ErrorCode::InvalidArgs, "need at least one bin");
  std::vector<double> masses(edges.size() - 1, 0.0);
  for (const auto& c : mixture.components) add_bin_masses(c, edges, masses);
  return masses;
}

DensityCurve render_on_bins(const GaussianMixture& mixture, const std::vector<double>& edges) {
  const std::vector<double> masses = bin_masses(mixture, edges);
  DensityCurve out;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    out.grid.push_back(0.5 * (edges[i] + edges[i + 1]));
    out.values.push_back(masses[i] / (edges[i + 1] - edges[i]));
  }
  return out;
}

std::string mixture_to_json(const GaussianMixture& mixture) {
  nlohmann::ordered_json components = nlohmann::ordered_json::array();
  for (const auto& c : mixture.components) {
    components.push_back({{"w", c.weight}, {"mu", c.mean}, {"var", c.variance}});
  }
  nlohmann::ordered_json doc;
  doc["components"] = components;
  return doc.dump(2);
}

FixedMoments tfim_fixed_n_moments(int n_spins, double lambda, int n, MomentSource source) {
  require_n(n_spins, n);
  const double N = n_spins;
  const double spread = 4.0 * n * (N - n) / (N - 1.0);
  if (source == MomentSource::Integral) {
    const double mean_e = -ground_state_energy_per_spin(lambda);
    const double var_e = 1.0 + lambda * lambda - mean_e * mean_e;
    return {(N - 2.0 * n) * mean_e, spread * var_e};
  }

  std::vector<Parity> sectors;
  if (std::abs(lambda) <= 1.0) {
    sectors = {Parity::Even, Parity::Odd};
  } else {
    sectors = {n % 2 == 0 ? Parity::Even : Parity::Odd};
  }
  std::vector<double> means;
  std::vector<double> variances;
  for (Parity p : sectors) {
    const SectorSpec spec = sector_spec(n_spins, lambda, p);
    long double s1 = 0.0L;
    long double s2 = 0.0L;
    for (double e : spec.one_particle) {
      s1 += 0.5L * e;
      s2 += 0.25L * e * e;
    }
    const double mean_e = static_cast<double>(s1 / n_spins);
    const double var_e = static_cast<double>(s2 / n_spins) - mean_e * mean_e;
    means.push_back((N - 2.0 * n) * mean_e);
    variances.push_back(spread * std::max(var_e, 0.0));
  }
  FixedMoments out;
  for (std::size_t i = 0; i < means.size(); ++i) out.mean += means[i] / means.size();
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double d = means[i] - out.mean;
    out.variance += (variances[i] + d * d) / means.size();
  }
  return out;
}

GaussianMixture tfim_mixture(int n_spins, double lambda, MomentSource source) {
  require_spins(n_spins);
  const bool weak = std::abs(lambda) <= 1.0;
  GaussianMixture m;
  for (int n = 0; n <= n_spins; ++n) {
    if (weak && n % 2 != 0) continue;
    const FixedMoments fm = tfim_fixed_n_moments(n_spins, lambda, n, source);
    const double w = share(binomial(n_spins, n), n_spins) * (weak ? 2.0 : 1.0);
    m.components.push_back({w, fm.mean, fm.variance});
  }
  return m;
}

DensityCurve tfim_multi_gaussian(const IsingParams& params, const std::vector<double>& grid,
                                 MomentSource source) {
  if (params.alpha != 0.0) throw Error(ErrorCode::InvalidArgs, "multi-tfim requires alpha = 0");
  return render(tfim_mixture(params.n_spins, params.lambda, source), grid);
}

VisibilityRegime parse_regime(std::string_view text) {
  if (text == "tfim-large") return VisibilityRegime::TfimLargeLambda;
  if (text == "tfim-small") return VisibilityRegime::TfimSmallLambda;
  if (text == "strong") return VisibilityRegime::StrongFields;
  if (text == "small-lambda-int-alpha") return VisibilityRegime::SmallLambdaIntegerAlpha;
  throw Error(ErrorCode::InvalidRegime, "unknown visibility regime '" + std::string(text) + "'");
}

std::string_view to_string(VisibilityRegime regime) {
  switch (regime) {
    case VisibilityRegime::TfimLargeLambda: return "tfim-large";
    case VisibilityRegime::TfimSmallLambda: return "tfim-small";
    case VisibilityRegime::StrongFields: return "strong";
    case VisibilityRegime::SmallLambdaIntegerAlpha: return "small-lambda-int-alpha";
  }
  return "?";
}

Visibility visibility_Nmax(double lambda, double alpha, VisibilityRegime regime) {
  const double l2 = lambda * lambda;
  switch (regime) {
    case VisibilityRegime::TfimLargeLambda:
      return {2.0 * l2, false};
    case VisibilityRegime::TfimSmallLambda:
      if (lambda == 0.0) throw Error(ErrorCode::InvalidArgs, "lambda must be nonzero");
      return {8.0 / l2, false};
    case VisibilityRegime::StrongFields: {
      if (lambda == 0.0) throw Error(ErrorCode::InvalidArgs, "lambda must be nonzero");
      const double r2 = l2 + alpha * alpha;
      return {2.0 * r2 * r2 * r2 / (l2 * l2), false};
    }
    case VisibilityRegime::SmallLambdaIntegerAlpha:
      if (lambda == 0.0) throw Error(ErrorCode::InvalidArgs, "lambda must be nonzero");
      return {1.0 / (l2 * l2), true};
  }
  throw Error(ErrorCode::InvalidRegime, "unknown visibility regime");
}

FixedMoments strong_field_moments(int n_spins, double lambda, double alpha, int n) {
  require_n(n_spins, n);
  const double r2 = lambda * lambda + alpha * alpha;
  if (r2 == 0.0) throw Error(ErrorCode::InvalidArgs, "strong-field moments need a nonzero field");
  const double N = n_spins;
  const double kbar = n * (N - n) / (N - 1.0);
  return {std::sqrt(r2) * (N - 2.0 * n) - (N - 4.0 * kbar) * alpha * alpha / r2,
          2.0 * kbar * lambda * lambda * lambda * lambda / (r2 * r2)};
}

GaussianMixture strong_field_mixture(const IsingParams& params) {
  require_spins(params.n_spins);
  GaussianMixture m;
  for (int n = 0; n <= params.n_spins; ++n) {
    const FixedMoments fm = strong_field_moments(params.n_spins, params.lambda, params.alpha, n);
    m.components.push_back({share(binomial(params.n_spins, n), params.n_spins), fm.mean,
                            fm.variance});
  }
  return m;
}

namespace {

std::vector<Cell> require_class(int n_spins, int r) {
  require_spins(n_spins);
  std::vector<Cell> cells = class_cells(n_spins, r);
  if (cells.empty()) {
    throw Error(ErrorCode::UnknownClass,
                "no cells with 2k - n = " + std::to_string(r) + " for N=" + std::to_string(n_spins));
  }
  return cells;
}

Count class_size(int n_spins, const std::vector<Cell>& cells) {
  Count total = 0;
  for (const Cell& c : cells) total += f_count(n_spins, c.n, c.k);
  return total;
}

}  // namespace

double small_lambda_ER(int n_spins, double lambda, int r) {
  const std::vector<Cell> cells = require_class(n_spins, r);
  const double s2 = 1.0 + lambda * lambda;
  const double s = std::sqrt(s2);
  const double N = n_spins;
  long double sum = 0.0L;
  for (const Cell& c : cells) {
    const double e = s * (N - 2.0 * c.n) - (N - 4.0 * c.k) / s2;
    sum += static_cast<long double>(f_count(n_spins, c.n, c.k)) * e;
  }
  return static_cast<double>(sum / static_cast<long double>(class_size(n_spins, cells)));
}

double small_lambda_deltaE(int n_spins, int n, int m, int k, double alpha, double lambda) {
  if (std::abs(std::abs(alpha) - 2.0) < 1e-12) {
    throw Error(ErrorCode::AlphaSingular, "second-order shift diverges at |alpha| = 2");
  }
  if (!valid_cell(n_spins, n, k) || m != n_spins - n) {
    throw Error(ErrorCode::InvalidArgs, "invalid cell for the energy shift");
  }
  if (lambda == 0.0) return 0.0;
  const double a2 = alpha * alpha;
  const double l2 = lambda * lambda;
  const double pre = 2.0 * a2 * l2 / ((a2 + l2) * (a2 + l2));
  const double N = n_spins;
  if (k == 0) return n == 0 ? -pre * N / (2.0 - alpha) : -pre * N / (2.0 + alpha);
  const double cnk = static_cast<double>(compositions(n, k));
  const double cmk = static_cast<double>(compositions(m, k));
  const double cn1 = static_cast<double>(compositions(n - 1, k - 1));
  const double cm1 = static_cast<double>(compositions(m - 1, k - 1));
  const double walls = ((2.0 * k - n) / (2.0 + alpha) + (2.0 * k - m) / (2.0 - alpha)) * cnk * cmk / k;
  const double singles = 2.0 * alpha / (4.0 - a2) * (cn1 * cmk - cnk * cm1);
  return pre * N * (walls + singles);
}

double small_lambda_deltaE_class(int n_spins, double lambda, int r) {
  const std::vector<Cell> cells = require_class(n_spins, r);
  long double sum = 0.0L;
  for (const Cell& c : cells) {
    sum += small_lambda_deltaE(n_spins, c.n, n_spins - c.n, c.k, 1.0, lambda);
  }
  return static_cast<double>(sum / static_cast<long double>(class_size(n_spins, cells)));
}

double small_lambda_sigmaR2(int n_spins, double lambda, int r) {
  const std::vector<Cell> cells = require_class(n_spins, r);
  Count transitions = 0;
  for (const Cell& c : cells) {
    const int m = n_spins - c.n;
    transitions += count_Na(n_spins, c.n, m, c.k) + count_Nb(n_spins, c.n, m, c.k) +
                   count_Nc(n_spins, c.n, m, c.k);
  }
  const double s2 = 1.0 + lambda * lambda;
  const double l4 = lambda * lambda * lambda * lambda;
  return l4 / (s2 * s2) * static_cast<double>(transitions) /
         static_cast<double>(class_size(n_spins, cells));
}

double small_lambda_sigmaR(int n_spins, double lambda, int r) {
  return std::sqrt(small_lambda_sigmaR2(n_spins, lambda, r));
}

std::vector<ClassSummary> small_lambda_classes(int n_spins, double lambda) {
  require_spins(n_spins);
  std::vector<int> labels;
  for (const Cell& c : all_cells(n_spins)) labels.push_back(class_label(c));
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<ClassSummary> out;
  for (int r : labels) {
    ClassSummary s;
    s.r = r;
    s.multiplicity = class_size(n_spins, class_cells(n_spins, r));
    s.energy = small_lambda_ER(n_spins, lambda, r);
    s.shift = small_lambda_deltaE_class(n_spins, lambda, r);
    s.variance = small_lambda_sigmaR2(n_spins, lambda, r);
    out.push_back(s);
  }
  return out;
}

GaussianMixture small_lambda_mixture_integer_alpha(const IsingParams& params, bool with_shift) {
  if (params.alpha != 1.0) {
    throw Error(ErrorCode::InvalidArgs, "integer-alpha mixture is implemented for alpha = 1");
  }
  GaussianMixture m;
  for (const ClassSummary& s : small_lambda_classes(params.n_spins, params.lambda)) {
    m.components.push_back({share(s.multiplicity, params.n_spins),
                            s.energy + (with_shift ? s.shift : 0.0), s.variance});
  }
  return m;
}

GaussianMixture generic_alpha_mixture(const IsingParams& params, const GenericAlphaOptions& options) {
  require_spins(params.n_spins);
  const int N = params.n_spins;
  const double a2 = params.alpha * params.alpha;
  const double l2 = params.lambda * params.lambda;
  const double scale = a2 + l2 > 0.0 ? 2.0 * l2 * l2 / ((a2 + l2) * (a2 + l2)) : 0.0;
  GaussianMixture m;
  for (const Cell& c : all_cells(N)) {
    double shape = 0.0;
    if (options.exact_variance) {
      const double den = (c.n - 1.0) * (N - c.n - 1.0);
      if (den > 0.0) shape = c.k * (c.k - 1.0) * (N - 2.0 * c.k) / den;
    } else if (c.n > 0 && c.n < N) {
      shape = static_cast<double>(c.k) * c.k * (N - 2.0 * c.k) / (static_cast<double>(c.n) * (N - c.n));
    }
    const double var = scale * shape + options.sigma_floor * options.sigma_floor;
    m.components.push_back({share(f_count(N, c.n, c.k), N),
                            params.alpha * (N - 2.0 * c.n) + 4.0 * c.k - N, var});
  }
  return m;
}

XXReport xx_projection_check(int n_spins, double lambda, double alpha, int n) {
  require_n(n_spins, n);
  if (n_spins > kXXMaxSpins) {
    throw Error(ErrorCode::CapExceeded, "projected Hamiltonian limited to N <= 12");
  }
  if (n_spins < 3) throw Error(ErrorCode::InvalidArgs, "projection check needs N >= 3");
  const double r = std::hypot(lambda, alpha);
  if (r == 0.0) throw Error(ErrorCode::InvalidArgs, "projection check needs a nonzero field");
  const double cos2 = (lambda / r) * (lambda / r);

  std::vector<std::uint64_t> basis;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n_spins); ++s) {
    if (std::popcount(s) == n) basis.push_back(s);
  }
  const std::size_t dim = basis.size();
  DenseMatrix h{dim, std::vector<double>(dim * dim, 0.0)};
  auto index_of = [&](std::uint64_t s) {
    return static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), s) - basis.begin());
  };
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t s = basis[i];
    h(i, i) = r * (n_spins - 2.0 * n);
    for (int p = 0; p < n_spins; ++p) {
      const int q = (p + 1) % n_spins;
      if (((s >> p) & 1) == ((s >> q) & 1)) continue;
      const std::uint64_t t = s ^ (std::uint64_t{1} << p) ^ (std::uint64_t{1} << q);
      h(index_of(t), i) -= cos2;
    }
  }
  // Moments straight from the matrix: Tr H / d and Tr (H - mean)^2 / d.
  long double trace = 0.0L;
  for (std::size_t i = 0; i < dim; ++i) trace += h(i, i);
  XXReport rep;
  rep.dimension = dim;
  rep.mean = static_cast<double>(trace / dim);
  long double frob = 0.0L;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const long double v = h(i, j) - (i == j ? rep.mean : 0.0);
      frob += v * v;
    }
  }
  rep.variance = static_cast<double>(frob / dim);
  rep.predicted_mean = r * (n_spins - 2.0 * n);
  rep.predicted_variance = 2.0 * n * (n_spins - n) / (n_spins - 1.0) * cos2 * cos2;
  rep.mean_deviation = std::abs(rep.mean - rep.predicted_mean);
  rep.variance_deviation = std::abs(rep.variance - rep.predicted_variance);
  return rep;
}

}  // namespace isingdos
