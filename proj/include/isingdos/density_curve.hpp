#pragma once

#include <string_view>
#include <vector>

namespace isingdos {

/// Which variable a density is expressed in. Densities in different variables
/// differ by a Jacobian, so every curve carries its flag.
///   Energy:   absolute E
///   PerSpin:  e = E / N
///   Rescaled: eps = E / sqrt(N (1 + lambda^2 + alpha^2))
enum class Abscissa { Energy, PerSpin, Rescaled };

enum class Normalization { UnitIntegral, Counts };

std::string_view to_string(Abscissa a);
std::string_view to_string(Normalization n);

struct DensityCurve {
  Abscissa abscissa = Abscissa::Energy;
  Normalization norm = Normalization::UnitIntegral;
  std::vector<double> grid;    // ascending
  std::vector<double> values;  // same length as grid

  std::size_t size() const { return grid.size(); }

  /// Trapezoidal integral over the grid.
  double integral() const;
};

/// `points` equally spaced abscissae from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int points);

/// Parses "LO:HI:POINTS". Throws ParseError.
std::vector<double> parse_grid(std::string_view spec);

/// Changes the abscissa by a linear map x_new = x_old / scale, rescaling the
/// density so mass is preserved.
DensityCurve rescale_abscissa(const DensityCurve& curve, double scale, Abscissa target);

}  // namespace isingdos
