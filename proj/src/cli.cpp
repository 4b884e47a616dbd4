#include "isingdos/cli.hpp"

#include <gsl/gsl_version.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "isingdos/analytic_density.hpp"
#include "isingdos/combinatorics.hpp"
#include "isingdos/density_tools.hpp"
#include "isingdos/error.hpp"
#include "isingdos/free_fermion.hpp"
#include "isingdos/model.hpp"
#include "isingdos/peak_approx.hpp"
#include "json.hpp"

namespace isingdos {

namespace {

struct ModelOptions {
  std::string model = "auto";
  int n = 0;
  double lambda = 0.0;
  double alpha = 0.0;

  IsingParams params() const {
    IsingParams p;
    p.n_spins = n;
    p.lambda = lambda;
    p.alpha = alpha;
    if (model == "tfim" || (model == "auto" && alpha == 0.0)) {
      p.model = ModelKind::TransverseField;
    } else {
      p.model = ModelKind::TwoField;
    }
    p.validate();
    return p;
  }
};

void add_model_options(CLI::App* cmd, ModelOptions& m, bool need_n = true) {
  cmd->add_option("--model", m.model, "tfim, two-field or auto (two-field when alpha != 0)")
      ->check(CLI::IsMember({"tfim", "two-field", "auto"}));
  auto* n = cmd->add_option("--n", m.n, "number of spins");
  if (need_n) n->required();
  cmd->add_option("--lambda", m.lambda, "transverse field");
  cmd->add_option("--alpha", m.alpha, "longitudinal field");
}

Metadata base_metadata(std::string_view command) {
  return {{"tool", "isingdos " + std::string(kVersion)},
          {"gsl", GSL_VERSION},
          {"command", std::string(command)}};
}

void add_params(Metadata& md, const IsingParams& p) {
  md.emplace_back("model", p.model == ModelKind::TransverseField ? "tfim" : "two-field");
  md.emplace_back("N", std::to_string(p.n_spins));
  md.emplace_back("lambda", format_double(p.lambda));
  md.emplace_back("alpha", format_double(p.alpha));
}

// Writes through `body` to the named file, or to `out` for "-".
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  body(file);
  if (!file) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return in;
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "range must be LO:HI");
  Range r;
  try {
    std::size_t used = 0;
    r.lo = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("lo");
    const std::string hi = text.substr(colon + 1);
    r.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("hi");
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "cannot parse range '" + text + "'");
  }
  if (!(r.hi > r.lo)) throw Error(ErrorCode::InvalidArgs, "range needs HI > LO");
  return r;
}

struct AbscissaFlags {
  bool per_spin = false;
  bool rescaled = false;

  Abscissa abscissa() const {
    if (per_spin) return Abscissa::PerSpin;
    if (rescaled) return Abscissa::Rescaled;
    return Abscissa::Energy;
  }
};

void add_abscissa_flags(CLI::App* cmd, AbscissaFlags& f) {
  auto* a = cmd->add_flag("--per-spin", f.per_spin, "use e = E / N as abscissa");
  auto* b = cmd->add_flag("--rescaled", f.rescaled,
                          "use eps = E / sqrt(N (1 + lambda^2 + alpha^2)) as abscissa");
  a->excludes(b);
}

// E per unit of the chosen abscissa.
double energy_scale(Abscissa a, const IsingParams& p) {
  switch (a) {
    case Abscissa::Energy: return 1.0;
    case Abscissa::PerSpin: return p.n_spins;
    case Abscissa::Rescaled: return rescaled_energy_scale(p);
  }
  return 1.0;
}

// Mixture in absolute E, rendered on a grid given in the chosen abscissa.
DensityCurve render_in(const GaussianMixture& mixture, const std::vector<double>& grid,
                       Abscissa a, const IsingParams& p) {
  const double scale = energy_scale(a, p);
  std::vector<double> energies(grid);
  for (double& x : energies) x *= scale;
  DensityCurve c = render(mixture, energies);
  c.grid = grid;
  c.abscissa = a;
  for (double& v : c.values) v *= scale;
  return c;
}

// ---- subcommands ----------------------------------------------------------

struct SpectrumCmd {
  ModelOptions model;
  std::string method = "dense";
  std::string out;
};

void run_spectrum(const SpectrumCmd& c, std::ostream& out) {
  const IsingParams p = c.model.params();
  ManyBodySpectrum s;
  if (c.method == "dense") {
    s = exact_spectrum(p);
  } else if (c.method == "fermion") {
    if (p.model != ModelKind::TransverseField) {
      throw Error(ErrorCode::InvalidArgs, "fermion method requires the tfim model");
    }
    s = enumerate_spectrum(p.n_spins, p.lambda);
  } else {
    s = classical_spectrum(p);
  }
  Metadata md = base_metadata("spectrum");
  add_params(md, p);
  md.emplace_back("method", c.method);
  md.emplace_back("count", std::to_string(s.energies.size()));
  emit(c.out, out, [&](std::ostream& os) { write_spectrum_csv(os, s.energies, md); });
}

struct DensityCmd {
  std::string in;
  int bins = 0;
  double kde = 0.0;
  std::string range;
  AbscissaFlags flags;
  std::string out;
};

void run_density(const DensityCmd& c, std::ostream& out) {
  std::ifstream in = open_input(c.in);
  const SpectrumFile f = read_spectrum_csv(in);
  if (f.energies.empty()) throw Error(ErrorCode::EmptySpectrum, "spectrum file has no rows");

  IsingParams p;
  const Abscissa a = c.flags.abscissa();
  if (a != Abscissa::Energy) {
    const auto n = f.get("N");
    if (!n) throw Error(ErrorCode::InvalidArgs, "spectrum file lacks N for abscissa conversion");
    p.n_spins = std::stoi(*n);
    p.lambda = std::stod(f.get("lambda").value_or("0"));
    p.alpha = std::stod(f.get("alpha").value_or("0"));
  }
  const double scale = a == Abscissa::Energy ? 1.0 : energy_scale(a, p);
  std::vector<double> x(f.energies);
  for (double& v : x) v /= scale;

  Metadata md = base_metadata("density");
  for (const auto& key : {"model", "N", "lambda", "alpha", "method"}) {
    if (const auto v = f.get(key)) md.emplace_back(key, *v);
  }
  md.emplace_back("source", c.in);
  DensityCurve curve;
  if (c.kde > 0.0) {
    md.emplace_back("kde_bandwidth", format_double(c.kde));
    curve = kernel_density(x, c.kde);
  } else {
    int bins = c.bins;
    if (bins == 0) {
      bins = default_bins(static_cast<int>(std::lround(std::log2(static_cast<double>(x.size())))));
    }
    std::optional<Range> range;
    if (!c.range.empty()) range = parse_range(c.range);
    md.emplace_back("bins", std::to_string(bins));
    curve = histogram(x, bins, range);
  }
  curve.abscissa = a;
  emit(c.out, out, [&](std::ostream& os) { write_curve_csv(os, curve, md); });
}

struct ApproxCmd {
  std::string kind;
  ModelOptions model;
  std::string grid;
  AbscissaFlags flags;
  std::string out;
  std::string mixture_out;
  bool clamp_negative = false;
  bool exact_variance = false;
  double sigma_floor = 0.0;
  bool no_shift = false;
  bool integral_moments = false;
};

// Covers every component out to 8 sigma with spacing 0.05 in E.
std::string default_grid(const GaussianMixture& m, Abscissa a, const IsingParams& p) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const GaussianComponent& g : m.components) {
    const double half = 8.0 * std::sqrt(g.variance) + 1.0;
    lo = first ? g.mean - half : std::min(lo, g.mean - half);
    hi = first ? g.mean + half : std::max(hi, g.mean + half);
    first = false;
  }
  const int points = static_cast<int>(std::clamp(std::ceil((hi - lo) / 0.05) + 1.0, 2001.0, 20001.0));
  const double scale = energy_scale(a, p);
  return format_double(lo / scale) + ":" + format_double(hi / scale) + ":" + std::to_string(points);
}

void run_approx(const ApproxCmd& c, std::ostream& out, std::ostream& err) {
  const IsingParams p = c.model.params();
  const Abscissa a = c.flags.abscissa();
  Metadata md = base_metadata("approx");
  md.emplace_back("kind", c.kind);
  add_params(md, p);

  DensityCurve curve;
  std::optional<GaussianMixture> mixture;
  const bool multi = c.kind.starts_with("multi-");
  if (!multi && c.grid.empty()) {
    throw Error(ErrorCode::InvalidArgs, "--grid is required for kind " + c.kind);
  }
  std::vector<double> grid;
  if (!multi) {
    grid = parse_grid(c.grid);
    md.emplace_back("grid", c.grid);
  }
  if (c.kind == "gaussian") {
    if (p.model == ModelKind::TransverseField) {
      curve = gaussian_curve(grid, a, p);
    } else {
      CurveReport r = two_field_curve(grid, a, p, c.clamp_negative);
      md.emplace_back("negative_points", std::to_string(r.negative_points));
      md.emplace_back("clamped", c.clamp_negative ? "true" : "false");
      if (r.negative_points > 0) {
        err << "warning: cubic correction is negative at " << r.negative_points << " grid points\n";
      }
      curve = std::move(r.curve);
    }
  } else if (c.kind == "saddle") {
    curve = saddle_curve(grid, a, p);
  } else if (c.kind == "tail") {
    if (p.lambda != 1.0 || p.alpha != 0.0) {
      throw Error(ErrorCode::InvalidArgs, "tail density is available at lambda = 1, alpha = 0");
    }
    curve = tail_curve(grid, a, p.n_spins);
  } else {
    if (c.kind == "multi-tfim") {
      const MomentSource src = c.integral_moments ? MomentSource::Integral : MomentSource::FiniteGrid;
      md.emplace_back("moments", c.integral_moments ? "integral" : "finite-grid");
      if (p.alpha != 0.0) throw Error(ErrorCode::InvalidArgs, "multi-tfim requires alpha = 0");
      mixture = tfim_mixture(p.n_spins, p.lambda, src);
    } else if (c.kind == "multi-strong") {
      mixture = strong_field_mixture(p);
    } else if (c.kind == "multi-int-alpha") {
      md.emplace_back("shift", c.no_shift ? "off" : "on");
      mixture = small_lambda_mixture_integer_alpha(p, !c.no_shift);
    } else {
      GenericAlphaOptions opt;
      opt.exact_variance = c.exact_variance;
      opt.sigma_floor = c.sigma_floor;
      md.emplace_back("variance_form", c.exact_variance ? "exact" : "large-nk");
      md.emplace_back("sigma_floor", format_double(c.sigma_floor));
      mixture = generic_alpha_mixture(p, opt);
    }
    md.emplace_back("components", std::to_string(mixture->components.size()));
    const std::string spec = c.grid.empty() ? default_grid(*mixture, a, p) : c.grid;
    md.emplace_back("grid", spec);
    curve = render_in(*mixture, parse_grid(spec), a, p);
  }
  emit(c.out, out, [&](std::ostream& os) { write_curve_csv(os, curve, md); });
  if (mixture && !c.mixture_out.empty()) {
    emit(c.mixture_out, out, [&](std::ostream& os) { os << mixture_to_json(*mixture) << '\n'; });
  }
}

struct CompareCmd {
  std::string a;
  std::string b;
  std::string window;
  double prominence = 0.01;
  std::string out;
};

void run_compare(const CompareCmd& c, std::ostream& out) {
  std::ifstream fa = open_input(c.a);
  std::ifstream fb = open_input(c.b);
  const DensityCurve ca = read_curve_csv(fa);
  const DensityCurve cb = read_curve_csv(fb);
  CompareOptions opt;
  opt.min_prominence_fraction = c.prominence;
  if (!c.window.empty()) opt.window = parse_range(c.window);
  const ComparisonReport rep = compare(ca, cb, opt);
  emit(c.out, out, [&](std::ostream& os) { os << report_to_json(rep) << '\n'; });
}

struct CensusCmd {
  int n = 0;
  std::string alpha;
  std::string format = "csv";
  std::string out;
};

std::uint64_t narrow(Count c) {
  if (c > static_cast<Count>(~std::uint64_t{0})) {
    throw Error(ErrorCode::CapExceeded, "count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

void run_census(const CensusCmd& c, std::ostream& out) {
  Metadata md = base_metadata("census");
  md.emplace_back("N", std::to_string(c.n));
  if (c.alpha.empty()) {
    const BlockCensus census = block_census(c.n);
    emit(c.out, out, [&](std::ostream& os) {
      if (c.format == "json") {
        nlohmann::ordered_json doc;
        doc["N"] = c.n;
        doc["cells"] = nlohmann::ordered_json::array();
        for (const auto& [cell, f] : census.table) {
          doc["cells"].push_back({{"n", cell.n}, {"k", cell.k}, {"f", narrow(f)}});
        }
        os << doc.dump(2) << '\n';
        return;
      }
      for (const auto& [key, value] : md) os << "# " << key << ": " << value << '\n';
      os << "n,k,f\n";
      for (const auto& [cell, f] : census.table) {
        os << cell.n << ',' << cell.k << ',' << to_string(f) << '\n';
      }
    });
    return;
  }
  const Rational alpha = Rational::parse(c.alpha);
  md.emplace_back("alpha", alpha.str());
  const DegeneracyCensus census = degeneracy_census(c.n, alpha);
  emit(c.out, out, [&](std::ostream& os) {
    if (c.format == "json") {
      nlohmann::ordered_json doc;
      doc["N"] = c.n;
      doc["alpha"] = alpha.str();
      doc["classes"] = nlohmann::ordered_json::array();
      for (const auto& [key, cls] : census.classes) {
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const Cell& cell : cls.cells) cells.push_back({cell.n, cell.k});
        doc["classes"].push_back({{"energy", cls.energy.str()},
                                  {"multiplicity", narrow(cls.multiplicity)},
                                  {"cells", cells}});
      }
      os << doc.dump(2) << '\n';
      return;
    }
    for (const auto& [key, value] : md) os << "# " << key << ": " << value << '\n';
    os << "energy,multiplicity,cells\n";
    for (const auto& [key, cls] : census.classes) {
      os << cls.energy.str() << ',' << to_string(cls.multiplicity) << ',';
      for (std::size_t i = 0; i < cls.cells.size(); ++i) {
        os << (i ? " " : "") << cls.cells[i].n << ':' << cls.cells[i].k;
      }
      os << '\n';
    }
  });
}

struct MomentsCmd {
  ModelOptions model;
  int max_order = 4;
  std::string method = "dense";
  std::string out;
};

void run_moments(const MomentsCmd& c, std::ostream& out) {
  const IsingParams p = c.model.params();
  const ManyBodySpectrum s = c.method == "fermion" ? enumerate_spectrum(p.n_spins, p.lambda)
                                                   : exact_spectrum(p);
  const MomentSet numeric = numeric_moments(s, c.max_order);
  const MomentSet analytic = analytic_moments(p);
  Metadata md = base_metadata("moments");
  add_params(md, p);
  md.emplace_back("method", c.method);
  emit(c.out, out, [&](std::ostream& os) {
    for (const auto& [key, value] : md) os << "# " << key << ": " << value << '\n';
    os << "order,numeric,analytic,formula_exact\n";
    for (int k = 1; k <= c.max_order; ++k) {
      os << k << ',' << format_double(numeric[k]) << ',' << format_double(analytic[k]) << ','
         << (moment_formula_exact(p.n_spins, k) ? "true" : "false") << '\n';
    }
  });
}

struct VisibilityCmd {
  ModelOptions model;
  std::string regime;
};

void run_visibility(const VisibilityCmd& c, std::ostream& out) {
  VisibilityRegime regime;
  if (!c.regime.empty()) {
    regime = parse_regime(c.regime);
  } else if (c.model.model == "tfim" || (c.model.model == "auto" && c.model.alpha == 0.0)) {
    regime = std::abs(c.model.lambda) > 1.0 ? VisibilityRegime::TfimLargeLambda
                                            : VisibilityRegime::TfimSmallLambda;
  } else if (c.model.alpha == std::round(c.model.alpha) && std::abs(c.model.lambda) < 1.0) {
    regime = VisibilityRegime::SmallLambdaIntegerAlpha;
  } else {
    regime = VisibilityRegime::StrongFields;
  }
  const Visibility v = visibility_Nmax(c.model.lambda, c.model.alpha, regime);
  out << format_double(v.n_max) << '\n';
}

void print_error(std::ostream& err, std::string_view code, const std::string& message) {
  nlohmann::ordered_json doc;
  doc["code"] = code;
  doc["message"] = message;
  err << doc.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral densities of the quantum Ising chain", "isingdos"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SpectrumCmd spectrum;
  auto* sp = app.add_subcommand("spectrum", "all 2^N eigenvalues as CSV");
  add_model_options(sp, spectrum.model);
  sp->add_option("--method", spectrum.method)->check(CLI::IsMember({"dense", "fermion", "classical"}));
  sp->add_option("--out", spectrum.out, "output file, - for stdout");

  DensityCmd density;
  auto* de = app.add_subcommand("density", "histogram or kernel density of a spectrum CSV");
  de->add_option("--in", density.in)->required();
  de->add_option("--bins", density.bins, "bin count (default ceil(sqrt(2^N)), at most 400)")
      ->check(CLI::Range(2, 1000000));
  de->add_option("--kde", density.kde, "Gaussian kernel bandwidth instead of a histogram")
      ->check(CLI::PositiveNumber);
  de->add_option("--range", density.range, "histogram range LO:HI");
  add_abscissa_flags(de, density.flags);
  de->add_option("--out", density.out);

  ApproxCmd approx;
  auto* ap = app.add_subcommand("approx", "analytic density approximations on a grid");
  ap->add_option("--kind", approx.kind)
      ->required()
      ->check(CLI::IsMember({"gaussian", "saddle", "tail", "multi-tfim", "multi-strong",
                             "multi-int-alpha", "multi-generic"}));
  add_model_options(ap, approx.model);
  ap->add_option("--grid", approx.grid,
                 "LO:HI:POINTS, endpoints included (multi-* kinds default to the mixture's span)");
  add_abscissa_flags(ap, approx.flags);
  ap->add_option("--out", approx.out);
  ap->add_option("--mixture-out", approx.mixture_out, "mixture components as JSON (multi-* kinds)");
  ap->add_flag("--clamp-negative", approx.clamp_negative, "clamp negative cubic-corrected values");
  ap->add_flag("--exact-variance", approx.exact_variance, "small-(n,k) width form (multi-generic)");
  ap->add_option("--sigma-floor", approx.sigma_floor, "width added in quadrature (multi-generic)")
      ->check(CLI::NonNegativeNumber);
  ap->add_flag("--no-shift", approx.no_shift, "drop the second-order shifts (multi-int-alpha)");
  ap->add_flag("--integral-moments", approx.integral_moments,
               "infinite-chain fixed-n moments (multi-tfim)");

  CompareCmd cmp;
  auto* co = app.add_subcommand("compare", "L1/sup distance and peak offsets of two curves");
  co->add_option("--a", cmp.a)->required();
  co->add_option("--b", cmp.b)->required();
  co->add_option("--window", cmp.window, "restrict to LO:HI");
  co->add_option("--prominence", cmp.prominence, "peak prominence as a fraction of the maximum");
  co->add_option("--out", cmp.out);

  CensusCmd census;
  auto* ce = app.add_subcommand("census", "block census f(n,k) or degeneracy classes");
  ce->add_option("--n", census.n)->required()->check(CLI::Range(2, 64));
  ce->add_option("--alpha", census.alpha, "rational P/Q; groups cells by unperturbed energy");
  ce->add_option("--format", census.format)->check(CLI::IsMember({"csv", "json"}));
  ce->add_option("--out", census.out);

  MomentsCmd moments;
  auto* mo = app.add_subcommand("moments", "numeric vs closed-form trace moments");
  add_model_options(mo, moments.model);
  mo->add_option("--max-order", moments.max_order)->check(CLI::Range(1, 4));
  mo->add_option("--method", moments.method)->check(CLI::IsMember({"dense", "fermion"}));
  mo->add_option("--out", moments.out);

  VisibilityCmd vis;
  auto* vi = app.add_subcommand("visibility", "largest N with resolvable peaks");
  add_model_options(vi, vis.model, false);
  vi->add_option("--regime", vis.regime, "tfim-large, tfim-small, strong, small-lambda-int-alpha");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sp) run_spectrum(spectrum, out);
    if (*de) run_density(density, out);
    if (*ap) run_approx(approx, out, err);
    if (*co) run_compare(cmp, out);
    if (*ce) run_census(census, out);
    if (*mo) run_moments(moments, out);
    if (*vi) run_visibility(vis, out);
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "InvalidArgs", e.what());
    return 1;
  }
  return 0;
}

}  // namespace isingdos
