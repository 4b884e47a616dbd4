#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "isingdos/error.hpp"
#include "isingdos/free_fermion.hpp"
#include "isingdos/model.hpp"

using namespace isingdos;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Spectrum built with the strong-field parity rule regardless of lambda.
std::vector<double> strong_rule_spectrum(int n, double lambda) {
  std::vector<double> out;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const SectorSpec s = sector_spec(n, lambda, p);
    for (std::uint64_t occ = 0; occ < (std::uint64_t{1} << n); ++occ) {
      const bool odd = std::popcount(occ) % 2 == 1;
      if (odd != (p == Parity::Odd)) continue;
      double e = 0.0;
      for (int j = 0; j < n; ++j) e += s.one_particle[j] * (((occ >> j) & 1) ? 0.5 : -0.5);
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("free-fermion") {

TEST_CASE("one-particle energies") {
  CHECK(one_particle_energy(1.0, 0.0) == 0.0);
  CHECK(one_particle_energy(0.0, 1.234) == doctest::Approx(2.0));
  CHECK(one_particle_energy(2.0, kPi) == doctest::Approx(6.0));
  for (double phi = 0.0; phi < 2 * kPi; phi += 0.1) CHECK(one_particle_energy(1.0, phi) >= 0.0);
}

TEST_CASE("momentum grids") {
  const auto even = momentum_grid(4, Parity::Even);
  const auto odd = momentum_grid(4, Parity::Odd);
  const std::vector<double> want_even{kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4};
  const std::vector<double> want_odd{0.0, kPi / 2, kPi, 3 * kPi / 2};
  CHECK(max_abs_diff(even, want_even) < 1e-15);
  CHECK(max_abs_diff(odd, want_odd) < 1e-15);
  CHECK(max_abs_diff(momentum_grid(2, Parity::Even), {kPi / 2, 3 * kPi / 2}) < 1e-15);
  try {
    momentum_grid(5, Parity::Even);
    FAIL("expected OddN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddN);
  }
  CHECK_THROWS_AS(enumerate_spectrum(7, 0.5), Error);
}

TEST_CASE("zero field gives the classical ring") {
  const auto s = enumerate_spectrum(4, 0.0);
  CHECK(s.method == SpectrumMethod::Fermion);
  std::vector<double> want(2, -4.0);
  want.insert(want.end(), 12, 0.0);
  want.insert(want.end(), 2, 4.0);
  CHECK(max_abs_diff(s.energies, want) < 1e-12);
}

TEST_CASE("strong field splits into binomial clusters") {
  const auto e = enumerate_spectrum(4, 10.0).energies;
  std::vector<int> sizes{1};
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] - e[i - 1] > 10.0) {
      sizes.push_back(1);
    } else {
      ++sizes.back();
    }
  }
  CHECK(sizes == std::vector<int>{1, 4, 6, 4, 1});
}

TEST_CASE("every lambda yields 2^N symmetric levels") {
  for (int n : {2, 4, 6, 10}) {
    for (double lambda : {0.0, 0.3, 1.0, 1.4, 5.0, -0.7, -2.0}) {
      const auto e = enumerate_spectrum(n, lambda).energies;
      REQUIRE(e.size() == (std::size_t{1} << n));
      CHECK(std::is_sorted(e.begin(), e.end()));
      for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(e[i] + e[e.size() - 1 - i]) < 1e-9);
    }
  }
}

TEST_CASE("agrees with dense diagonalization") {
  for (int n : {2, 4, 6, 8, 10}) {
    for (double lambda : {0.2, 0.5, 0.9, 1.0, 1.1, 1.5, 3.0}) {
      const auto ff = enumerate_spectrum(n, lambda).energies;
      const auto dense = exact_spectrum(IsingParams::transverse(n, lambda)).energies;
      CAPTURE(n);
      CAPTURE(lambda);
      CHECK(max_abs_diff(ff, dense) < 1e-8);
    }
  }
}

TEST_CASE("both parity conventions agree at the critical point") {
  for (int n : {4, 6, 8}) {
    CHECK(max_abs_diff(enumerate_spectrum(n, 1.0).energies, strong_rule_spectrum(n, 1.0)) < 1e-12);
  }
}

TEST_CASE("occupation rules") {
  CHECK(occupation_allowed(Parity::Even, 0.5, false));
  CHECK_FALSE(occupation_allowed(Parity::Odd, 0.5, true));
  CHECK(occupation_allowed(Parity::Odd, 2.0, true));
  CHECK_FALSE(occupation_allowed(Parity::Even, 2.0, true));
}

}
