#pragma once

#include <functional>
#include <span>

namespace isingdos {

struct QuadratureResult {
  double value = 0.0;
  double delta = 0.0;  // |I(2n) - I(n)| at the last doubling
  int order = 0;
  bool converged = false;
};

inline constexpr double kQuadratureTolerance = 1e-13;
inline constexpr int kQuadratureMaxOrder = 8192;

/// Fixed-order Gauss-Legendre on [a, b], doubling the order from 16 until two
/// successive results agree to tol * max(1, |I|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol = kQuadratureTolerance);

/// Same, with the interval split at the given interior breakpoints.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> points, double tol = kQuadratureTolerance);

}  // namespace isingdos
