#include "isingdos/density_tools.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "isingdos/error.hpp"
#include "isingdos/peak_approx.hpp"
#include "json.hpp"

namespace isingdos {

int default_bins(int n_spins) {
  const double b = std::ceil(std::sqrt(std::ldexp(1.0, n_spins)));
  return static_cast<int>(std::clamp(b, 2.0, 400.0));
}

std::vector<double> bin_edges(std::span<const double> energies, int bins,
                              std::optional<Range> range) {
  if (bins < 2) throw Error(ErrorCode::InvalidArgs, "histogram needs at least two bins");
  if (energies.empty()) throw Error(ErrorCode::EmptySpectrum, "histogram of an empty spectrum");
  double lo;
  double width;
  if (range) {
    if (!(range->hi > range->lo)) throw Error(ErrorCode::InvalidArgs, "histogram range is empty");
    lo = range->lo;
    width = (range->hi - range->lo) / bins;
  } else {
    if (bins < 3) throw Error(ErrorCode::InvalidArgs, "the padded default range needs at least three bins");
    const auto [mn, mx] = std::minmax_element(energies.begin(), energies.end());
    width = *mx > *mn ? (*mx - *mn) / (bins - 2) : 1.0;
    lo = *mn - width;
  }
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i) edges[i] = lo + width * i;
  if (range) edges.back() = range->hi;
  return edges;
}

DensityCurve histogram(std::span<const double> energies, int bins, std::optional<Range> range) {
  const std::vector<double> edges = bin_edges(energies, bins, range);
  const double lo = edges.front();
  const double width = edges[1] - edges[0];
  std::vector<double> counts(bins, 0.0);
  for (double e : energies) {
    if (range && (e < range->lo || e > range->hi)) continue;
    auto i = static_cast<long>(std::floor((e - lo) / width));
    // Default range: data sit in the interior bins by construction.
    i = range ? std::clamp(i, 0L, static_cast<long>(bins) - 1)
              : std::clamp(i, 1L, static_cast<long>(bins) - 2);
    counts[i] += 1.0;
  }
  DensityCurve out;
  out.grid.resize(bins);
  out.values.resize(bins);
  const double total = static_cast<double>(energies.size());
  for (int i = 0; i < bins; ++i) {
    out.grid[i] = 0.5 * (edges[i] + edges[i + 1]);
    out.values[i] = counts[i] / (total * width);
  }
  return out;
}

DensityCurve histogram(const ManyBodySpectrum& spectrum, int bins, std::optional<Range> range) {
  return histogram(std::span<const double>(spectrum.energies), bins, range);
}

DensityCurve kernel_density(std::span<const double> energies, double bandwidth,
                            std::optional<std::vector<double>> grid) {
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::InvalidArgs, "bandwidth must be positive");
  if (energies.empty()) throw Error(ErrorCode::EmptySpectrum, "kernel density of an empty spectrum");
  if (!grid) {
    const auto [mn, mx] = std::minmax_element(energies.begin(), energies.end());
    const double lo = *mn - 5.0 * bandwidth;
    const double hi = *mx + 5.0 * bandwidth;
    const double points = std::min(20001.0, std::ceil((hi - lo) / (0.25 * bandwidth)) + 1.0);
    grid = uniform_grid(lo, hi, static_cast<int>(std::max(points, 2.0)));
  }
  GaussianMixture kernels;
  kernels.components.reserve(energies.size());
  const double w = 1.0 / static_cast<double>(energies.size());
  for (double e : energies) kernels.components.push_back({w, e, bandwidth * bandwidth});
  return render(kernels, *grid);
}

DensityCurve resample(const DensityCurve& curve, const std::vector<double>& grid) {
  DensityCurve out{curve.abscissa, curve.norm, grid, std::vector<double>(grid.size(), 0.0)};
  const auto& x = curve.grid;
  const auto& y = curve.values;
  if (x.empty()) return out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    if (g < x.front() || g > x.back()) continue;
    const auto it = std::lower_bound(x.begin(), x.end(), g);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    if (*it == g) {
      out.values[i] = y[j];
      continue;
    }
    const double t = (g - x[j - 1]) / (x[j] - x[j - 1]);
    out.values[i] = y[j - 1] + t * (y[j] - y[j - 1]);
  }
  return out;
}

std::vector<Peak> find_peaks(const DensityCurve& curve, double min_prominence_fraction) {
  const auto& y = curve.values;
  const std::size_t n = y.size();
  std::vector<Peak> peaks;
  if (n < 3) return peaks;
  const double top = *std::max_element(y.begin(), y.end());
  const double threshold = min_prominence_fraction * top;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // Plateaus count once, at their left end.
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    std::size_t r = i;
    while (r + 1 < n && y[r + 1] == y[i]) ++r;
    if (r + 1 < n && y[r + 1] > y[i]) continue;
    // Prominence: height above the higher of the two minima reached before
    // climbing above this peak on either side.
    double left_min = y[i];
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] > y[i]) break;
      left_min = std::min(left_min, y[j]);
    }
    double right_min = y[i];
    for (std::size_t j = r + 1; j < n; ++j) {
      if (y[j] > y[i]) break;
      right_min = std::min(right_min, y[j]);
    }
    const double prominence = y[i] - std::max(left_min, right_min);
    if (prominence >= threshold && prominence > 0.0) {
      peaks.push_back({curve.grid[i], y[i], prominence});
    }
  }
  return peaks;
}

ComparisonReport compare(const DensityCurve& a, const DensityCurve& b, const CompareOptions& options) {
  if (a.size() < 2 || b.size() < 2) throw Error(ErrorCode::InvalidArgs, "curves need two points");
  if (a.abscissa != b.abscissa) {
    throw Error(ErrorCode::InvalidArgs, "curves use different abscissae");
  }
  Range overlap{std::max(a.grid.front(), b.grid.front()), std::min(a.grid.back(), b.grid.back())};
  if (options.window) {
    overlap.lo = std::max(overlap.lo, options.window->lo);
    overlap.hi = std::min(overlap.hi, options.window->hi);
  }
  if (!(overlap.hi > overlap.lo)) {
    throw Error(ErrorCode::DisjointSupports, "curves share no abscissa range");
  }
  std::vector<double> grid{overlap.lo, overlap.hi};
  for (const auto* c : {&a, &b}) {
    for (double x : c->grid) {
      if (x > overlap.lo && x < overlap.hi) grid.push_back(x);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const DensityCurve ra = resample(a, grid);
  const DensityCurve rb = resample(b, grid);
  ComparisonReport rep;
  rep.overlap = overlap;
  rep.grids_aligned = a.grid == b.grid;
  std::vector<double> diff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diff[i] = std::abs(ra.values[i] - rb.values[i]);
    rep.sup = std::max(rep.sup, diff[i]);
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    rep.l1 += 0.5 * (diff[i] + diff[i - 1]) * (grid[i] - grid[i - 1]);
  }

  auto inside = [&](const DensityCurve& c) {
    std::vector<Peak> out;
    for (const Peak& p : find_peaks(c, options.min_prominence_fraction)) {
      if (p.position >= overlap.lo && p.position <= overlap.hi) out.push_back(p);
    }
    return out;
  };
  const std::vector<Peak> pa = inside(a);
  const std::vector<Peak> pb = inside(b);
  struct Pair {
    double distance;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      pairs.push_back({std::abs(pa[i].position - pb[j].position), i, j});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.distance < y.distance; });
  std::vector<bool> used_a(pa.size(), false);
  std::vector<bool> used_b(pb.size(), false);
  for (const Pair& p : pairs) {
    if (used_a[p.i] || used_b[p.j]) continue;
    used_a[p.i] = used_b[p.j] = true;
    rep.peaks.push_back({pa[p.i].position, pb[p.j].position, pb[p.j].position - pa[p.i].position});
  }
  std::sort(rep.peaks.begin(), rep.peaks.end(),
            [](const PeakMatch& x, const PeakMatch& y) { return x.a < y.a; });
  rep.unmatched_a = static_cast<std::size_t>(std::count(used_a.begin(), used_a.end(), false));
  rep.unmatched_b = static_cast<std::size_t>(std::count(used_b.begin(), used_b.end(), false));
  return rep;
}

std::string report_to_json(const ComparisonReport& report) {
  nlohmann::ordered_json doc;
  doc["l1"] = report.l1;
  doc["sup"] = report.sup;
  doc["grids_aligned"] = report.grids_aligned;
  doc["overlap"] = {report.overlap.lo, report.overlap.hi};
  nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
  for (const auto& p : report.peaks) peaks.push_back({{"a", p.a}, {"b", p.b}, {"offset", p.offset}});
  doc["peak_positions"] = peaks;
  doc["unmatched_a"] = report.unmatched_a;
  doc["unmatched_b"] = report.unmatched_b;
  return doc.dump(2);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

namespace {

void write_metadata(std::ostream& out, const Metadata& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
}

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

// Splits a CSV stream into metadata, header and data rows.
struct RawTable {
  Metadata metadata;
  std::string header;
  std::vector<std::pair<std::size_t, std::string>> rows;
};

RawTable read_table(std::istream& in) {
  if (!in) throw Error(ErrorCode::IoError, "cannot read input");
  RawTable t;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto colon = body.find(": ");
      if (colon != std::string::npos) t.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    if (t.header.empty()) {
      t.header = line;
      continue;
    }
    t.rows.emplace_back(number, line);
  }
  if (t.header.empty()) throw Error(ErrorCode::ParseError, "missing CSV header");
  return t;
}

std::optional<std::string> lookup(const Metadata& metadata, const std::string& key) {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

}  // namespace

void write_curve_csv(std::ostream& out, const DensityCurve& curve, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << "# abscissa: " << to_string(curve.abscissa) << '\n';
  out << "# normalization: " << to_string(curve.norm) << '\n';
  out << "abscissa,density\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << format_double(curve.grid[i]) << ',' << format_double(curve.values[i]) << '\n';
  }
}

DensityCurve read_curve_csv(std::istream& in) {
  const RawTable t = read_table(in);
  if (t.header != "abscissa,density") {
    throw Error(ErrorCode::ParseError, "expected header 'abscissa,density'");
  }
  DensityCurve c;
  if (const auto a = lookup(t.metadata, "abscissa")) {
    if (*a == "E") c.abscissa = Abscissa::Energy;
    else if (*a == "e") c.abscissa = Abscissa::PerSpin;
    else if (*a == "eps") c.abscissa = Abscissa::Rescaled;
    else throw Error(ErrorCode::ParseError, "unknown abscissa '" + *a + "'");
  }
  if (const auto n = lookup(t.metadata, "normalization"); n && *n == "counts") {
    c.norm = Normalization::Counts;
  }
  for (const auto& [number, row] : t.rows) {
    const auto comma = row.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected two columns");
    }
    c.grid.push_back(parse_double(std::string_view(row).substr(0, comma), number));
    c.values.push_back(parse_double(std::string_view(row).substr(comma + 1), number));
  }
  if (!std::is_sorted(c.grid.begin(), c.grid.end())) {
    throw Error(ErrorCode::ParseError, "curve abscissae must be ascending");
  }
  return c;
}

std::optional<std::string> SpectrumFile::get(const std::string& key) const {
  return lookup(metadata, key);
}

void write_spectrum_csv(std::ostream& out, std::span<const double> energies, const Metadata& metadata) {
  write_metadata(out, metadata);
  out << "energy\n";
  for (double e : energies) out << format_double(e) << '\n';
}

SpectrumFile read_spectrum_csv(std::istream& in) {
  const RawTable t = read_table(in);
  if (t.header != "energy") throw Error(ErrorCode::ParseError, "expected header 'energy'");
  SpectrumFile f;
  f.metadata = t.metadata;
  for (const auto& [number, row] : t.rows) f.energies.push_back(parse_double(row, number));
  std::sort(f.energies.begin(), f.energies.end());
  return f;
}

}  // namespace isingdos
