#pragma once

// Empirical densities from spectra, curve comparison and CSV/JSON plumbing.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isingdos/density_curve.hpp"
#include "isingdos/model.hpp"

namespace isingdos {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// ceil(sqrt(2^N)), capped at 400.
int default_bins(int n_spins);

/// Edges of `bins` equal bins. Without a range the data span [min, max] is
/// padded by one bin on each side, so the outer bins stay empty (bins >= 3).
std::vector<double> bin_edges(std::span<const double> energies, int bins,
                              std::optional<Range> range = std::nullopt);

/// Unit-integral histogram at bin centers. Values outside an explicit range
/// are dropped; the normalization uses the full count.
DensityCurve histogram(std::span<const double> energies, int bins,
                       std::optional<Range> range = std::nullopt);
DensityCurve histogram(const ManyBodySpectrum& spectrum, int bins,
                       std::optional<Range> range = std::nullopt);

/// Gaussian kernel sum, unit integral. The default grid spans the data
/// padded by 5 bandwidths with spacing bandwidth / 4 (at most 20001 points).
/// Each kernel is cell-averaged when it is narrower than the grid spacing.
DensityCurve kernel_density(std::span<const double> energies, double bandwidth,
                            std::optional<std::vector<double>> grid = std::nullopt);

/// Linear interpolation onto a new grid; zero outside the curve's range.
DensityCurve resample(const DensityCurve& curve, const std::vector<double>& grid);

struct Peak {
  double position = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

/// Local maxima whose topographic prominence is at least
/// `min_prominence_fraction` of the curve maximum.
std::vector<Peak> find_peaks(const DensityCurve& curve, double min_prominence_fraction = 0.01);

struct PeakMatch {
  double a = 0.0;
  double b = 0.0;
  double offset = 0.0;  // b - a
};

struct ComparisonReport {
  double l1 = 0.0;
  double sup = 0.0;
  std::vector<PeakMatch> peaks;
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;
  bool grids_aligned = false;
  Range overlap;
};

struct CompareOptions {
  std::optional<Range> window;
  double min_prominence_fraction = 0.01;
};

/// Both curves are interpolated onto the union of their abscissae inside the
/// common range; L1 is the trapezoidal integral of |a - b| there. Peaks are
/// paired greedily by distance. Throws DisjointSupports.
ComparisonReport compare(const DensityCurve& a, const DensityCurve& b,
                         const CompareOptions& options = {});

std::string report_to_json(const ComparisonReport& report);

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "# key: value" lines, then "abscissa,density" and one row per point.
void write_curve_csv(std::ostream& out, const DensityCurve& curve, const Metadata& metadata);
DensityCurve read_curve_csv(std::istream& in);

struct SpectrumFile {
  std::vector<double> energies;
  Metadata metadata;

  std::optional<std::string> get(const std::string& key) const;
};

/// "# key: value" lines, then "energy" and one eigenvalue per row.
void write_spectrum_csv(std::ostream& out, std::span<const double> energies,
                        const Metadata& metadata);
SpectrumFile read_spectrum_csv(std::istream& in);

}  // namespace isingdos
