#include "isingdos/density_curve.hpp"

#include <charconv>
#include <string>

#include "isingdos/error.hpp"

namespace isingdos {

std::string_view to_string(Abscissa a) {
  switch (a) {
    case Abscissa::Energy: return "E";
    case Abscissa::PerSpin: return "e";
    case Abscissa::Rescaled: return "eps";
  }
  return "?";
}

std::string_view to_string(Normalization n) {
  return n == Normalization::UnitIntegral ? "unit-integral" : "counts";
}

double DensityCurve::integral() const {
  double total = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    total += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return total;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) {
    throw Error(ErrorCode::InvalidArgs, "grid needs hi > lo and at least two points");
  }
  std::vector<double> g(points);
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError,
                "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "grid must be LO:HI:POINTS");
  }
  const double lo = parse_number<double>(spec.substr(0, first), "grid LO");
  const double hi = parse_number<double>(spec.substr(first + 1, second - first - 1), "grid HI");
  const int points = parse_number<int>(spec.substr(second + 1), "grid POINTS");
  return uniform_grid(lo, hi, points);
}

DensityCurve rescale_abscissa(const DensityCurve& curve, double scale, Abscissa target) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgs, "scale must be positive");
  DensityCurve out = curve;
  out.abscissa = target;
  for (auto& x : out.grid) x /= scale;
  for (auto& v : out.values) v *= scale;
  return out;
}

}  // namespace isingdos
