#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "isingdos/error.hpp"
#include "isingdos/model.hpp"
#include "oracles.hpp"

using namespace isingdos;

namespace {

std::vector<double> with_multiplicity(std::initializer_list<std::pair<double, int>> items) {
  std::vector<double> out;
  for (auto [v, m] : items) out.insert(out.end(), m, v);
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("two-spin field term sits on the diagonal") {
  const DenseMatrix h = build_hamiltonian(IsingParams::transverse(2, 5.0));
  CHECK(h(0, 0) == -10.0);
  CHECK(h(1, 1) == 0.0);
  CHECK(h(2, 2) == 0.0);
  CHECK(h(3, 3) == 10.0);
}

TEST_CASE("hamiltonian is symmetric") {
  const DenseMatrix h = build_hamiltonian(IsingParams::two_field(5, 0.7, 0.3));
  for (std::size_t i = 0; i < h.dim; ++i) {
    for (std::size_t j = 0; j < h.dim; ++j) CHECK(h(i, j) == h(j, i));
  }
}

TEST_CASE("zero-field rings reproduce the classical energies") {
  CHECK(max_abs_diff(exact_spectrum(IsingParams::transverse(3, 0.0)).energies,
                     with_multiplicity({{-3.0, 2}, {1.0, 6}})) < 1e-12);
  CHECK(max_abs_diff(exact_spectrum(IsingParams::transverse(4, 0.0)).energies,
                     with_multiplicity({{-4.0, 2}, {0.0, 12}, {4.0, 2}})) < 1e-12);
  CHECK(max_abs_diff(exact_spectrum(IsingParams::two_field(3, 0.0, 1.0)).energies,
                     with_multiplicity({{-6.0, 1}, {0.0, 4}, {2.0, 3}})) < 1e-12);
  for (int n = 3; n <= 8; ++n) {
    for (double alpha : {0.0, 0.4, 1.0, 2.5}) {
      const auto p = IsingParams::two_field(n, 0.0, alpha);
      CHECK(max_abs_diff(exact_spectrum(p).energies, oracle::classical_ring(n, alpha)) < 1e-11);
      CHECK(max_abs_diff(classical_spectrum(p).energies, oracle::classical_ring(n, alpha)) < 1e-12);
    }
  }
}

TEST_CASE("spectrum is sorted, complete and traceless") {
  const auto s = exact_spectrum(IsingParams::transverse(2, 1.0));
  CHECK(s.energies.size() == 4);
  CHECK(std::is_sorted(s.energies.begin(), s.energies.end()));
  double sum = 0.0;
  for (double e : s.energies) sum += e;
  CHECK(std::abs(sum) < 1e-12);
  CHECK(s.method == SpectrumMethod::Dense);
}

TEST_CASE("transverse-field spectra are symmetric and even in lambda") {
  // E -> -E needs a bipartite ring; odd N only keeps the lambda symmetry
  for (int n : {4, 5, 8}) {
    for (double lambda : {0.3, 1.0, 1.7}) {
      const auto s = exact_spectrum(IsingParams::transverse(n, lambda)).energies;
      const auto m = exact_spectrum(IsingParams::transverse(n, -lambda)).energies;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (n % 2 == 0) CHECK(std::abs(s[i] + s[s.size() - 1 - i]) < 1e-9);
        CHECK(std::abs(s[i] - m[i]) < 1e-9);
      }
    }
  }
}

TEST_CASE("dense runs are deterministic") {
  const auto p = IsingParams::two_field(7, 0.9, 0.4);
  CHECK(exact_spectrum(p).energies == exact_spectrum(p).energies);
}

TEST_CASE("numeric moments of small spectra") {
  const MomentSet m = numeric_moments(exact_spectrum(IsingParams::transverse(3, 0.0)));
  CHECK(m.m1 == doctest::Approx(0.0));
  CHECK(m.m2 == doctest::Approx(3.0));
  for (double lambda : {0.0, 0.5, 2.0}) {
    const MomentSet t = numeric_moments(exact_spectrum(IsingParams::transverse(6, lambda)));
    CHECK(std::abs(t.m1) < 1e-12);
    CHECK(std::abs(t.m3) < 1e-9);
    CHECK(t.m2 >= 0.0);
    CHECK(t.m4 >= t.m2 * t.m2);
  }
  CHECK_THROWS_AS(numeric_moments(std::vector<double>{}), Error);
}

TEST_CASE("closed-form moments") {
  CHECK(analytic_moments(IsingParams::transverse(10, 1.0)).m2 == doctest::Approx(20.0));
  const auto p = IsingParams::two_field(4, 0.7, 1.0);
  const MomentSet a = analytic_moments(p);
  CHECK(a.m3 == doctest::Approx(-24.0));
  CHECK(moment_formula_exact(4, 3));
  CHECK(numeric_moments(exact_spectrum(p)).m3 == doctest::Approx(-24.0).epsilon(1e-12));
  CHECK(analytic_moments(IsingParams::two_field(8, 0.7, 0.0)).m3 == 0.0);
}

TEST_CASE("closed-form moments match dense traces from N = order + 1") {
  for (int n = 2; n <= 9; ++n) {
    for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
      for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        const auto p = IsingParams::two_field(n, lambda, alpha);
        const MomentSet num = numeric_moments(exact_spectrum(p));
        const MomentSet ana = analytic_moments(p);
        for (int k = 1; k <= 4; ++k) {
          if (!moment_formula_exact(n, k)) continue;
          const double scale = std::max(1.0, std::abs(ana[k]));
          CHECK(std::abs(num[k] - ana[k]) <= 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("the moment thresholds are tight") {
  // At N = order a loop wraps the ring and the closed form misses it.
  for (int k = 2; k <= 4; ++k) {
    CHECK_FALSE(moment_formula_exact(k, k));
    bool differs = false;
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (double alpha : {0.5, 1.0}) {
        const auto p = IsingParams::two_field(k, lambda, alpha);
        const double num = numeric_moments(exact_spectrum(p))[k];
        differs = differs || std::abs(num - analytic_moments(p)[k]) > 1e-8;
      }
    }
    CHECK(differs);
  }
}

TEST_CASE("parameter and budget errors") {
  CHECK_THROWS_AS(IsingParams::transverse(1, 1.0).validate(), Error);
  IsingParams bad = IsingParams::transverse(4, 1.0);
  bad.alpha = 0.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  try {
    build_hamiltonian(IsingParams::transverse(15, 1.0));
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
  CHECK_THROWS_AS(exact_spectrum(IsingParams::transverse(6, 1.0), 1000), Error);
  CHECK_THROWS_AS(classical_spectrum(IsingParams::transverse(4, 0.5)), Error);
}

}
