#include "isingdos/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "isingdos/error.hpp"

namespace isingdos {

namespace {

struct TableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const {
    gsl_integration_glfixed_table_free(t);
  }
};

const gsl_integration_glfixed_table* table_for(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<gsl_integration_glfixed_table, TableDeleter>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot.reset(gsl_integration_glfixed_table_alloc(order));
  return slot.get();
}

double trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

double fixed_rule(const std::function<double(double)>& f, double a, double b, int order) {
  gsl_function g;
  g.function = &trampoline;
  g.params = const_cast<std::function<double(double)>*>(&f);
  return gsl_integration_glfixed(&g, a, b, table_for(order));
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  QuadratureResult r;
  int order = 16;
  double previous = fixed_rule(f, a, b, order);
  while (order < kQuadratureMaxOrder) {
    order *= 2;
    const double current = fixed_rule(f, a, b, order);
    r.value = current;
    r.delta = std::abs(current - previous);
    r.order = order;
    if (r.delta <= tol * std::max(1.0, std::abs(current))) {
      r.converged = true;
      return r;
    }
    previous = current;
  }
  return r;
}

QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> points,
                           double tol) {
  if (points.size() < 2) {
    throw Error(ErrorCode::InvalidArgs, "integration needs at least two points");
  }
  QuadratureResult total;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const QuadratureResult piece = integrate(f, points[i], points[i + 1], tol);
    total.value += piece.value;
    total.delta += piece.delta;
    total.order = std::max(total.order, piece.order);
    total.converged = total.converged && piece.converged;
  }
  return total;
}

}  // namespace isingdos
