#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "isingdos/density_tools.hpp"
#include "isingdos/error.hpp"
#include "isingdos/free_fermion.hpp"

using namespace isingdos;

TEST_SUITE("density-tools") {

TEST_CASE("histogram with an explicit range") {
  const std::vector<double> e{0.0, 0.0, 1.0, 1.0};
  const DensityCurve h = histogram(e, 2, Range{0.0, 1.0});
  REQUIRE(h.size() == 2);
  CHECK(h.values[0] == doctest::Approx(1.0));
  CHECK(h.values[1] == doctest::Approx(1.0));
  CHECK(h.grid[0] == doctest::Approx(0.25));
}

TEST_CASE("default histograms integrate to one") {
  for (double lambda : {0.3, 1.0, 2.5}) {
    const auto s = enumerate_spectrum(10, lambda);
    for (int bins : {3, 17, 100}) {
      CHECK(std::abs(histogram(s, bins).integral() - 1.0) <= 1e-12);
    }
  }
  CHECK(default_bins(12) == 64);
  CHECK(default_bins(14) == 128);
  CHECK(default_bins(20) == 400);
  try {
    histogram(std::vector<double>{}, 10);
    FAIL("expected EmptySpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySpectrum);
  }
  CHECK_THROWS_AS(histogram(std::vector<double>{1.0}, 1), Error);
  CHECK_THROWS_AS(histogram(std::vector<double>{0.0, 1.0}, 2), Error);
}

TEST_CASE("critical histogram is symmetric") {
  // Levels sitting exactly on an edge go to the upper bin, so mirrored bins
  // may differ by at most that mass.
  const auto s = enumerate_spectrum(12, 1.0);
  const DensityCurve h = histogram(s, 100);
  const auto edges = bin_edges(s.energies, 100);
  const double width = edges[1] - edges[0];
  double on_edges = 0.0;
  for (double e : s.energies) {
    const double u = (e - edges[0]) / width;
    if (std::abs(u - std::round(u)) < 1e-9) on_edges += 1.0 / static_cast<double>(s.energies.size());
  }
  double asym = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) asym += std::abs(h.values[i] - h.values[h.size() - 1 - i]) * width;
  CHECK(asym <= 2 * on_edges + 1e-12);
}

TEST_CASE("kernel density of one level is one gaussian") {
  const double sigma = 0.7;
  const auto grid = uniform_grid(-6, 6, 241);
  const DensityCurve k = kernel_density(std::vector<double>{0.0}, sigma, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double want = std::exp(-grid[i] * grid[i] / (2 * sigma * sigma)) / (sigma * std::sqrt(2 * std::numbers::pi));
    CHECK(k.values[i] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(k.integral() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(kernel_density(std::vector<double>{0.0}, 0.0), Error);
}

TEST_CASE("narrow kernels converge to the histogram") {
  const auto s = enumerate_spectrum(8, 0.7).energies;
  // explicit range so that no level sits on a bin edge
  const DensityCurve h = histogram(s, 41, Range{s.front() - 0.37, s.back() + 0.41});
  const DensityCurve k = kernel_density(s, 1e-9, h.grid);
  for (std::size_t i = 0; i < h.size(); ++i) CHECK(k.values[i] == doctest::Approx(h.values[i]).epsilon(1e-9));
}

TEST_CASE("compare metrics") {
  const auto grid = uniform_grid(-2, 2, 401);
  DensityCurve a{Abscissa::Energy, Normalization::UnitIntegral, grid, {}};
  for (double x : grid) a.values.push_back(std::exp(-x * x));
  const ComparisonReport same = compare(a, a);
  CHECK(same.l1 == 0.0);
  CHECK(same.sup == 0.0);
  CHECK(same.grids_aligned);
  CHECK(same.peaks.size() == 1);

  DensityCurve b = a;
  for (double& v : b.values) v += 0.05;
  const ComparisonReport shifted = compare(a, b);
  CHECK(shifted.sup == doctest::Approx(0.05));
  CHECK(shifted.l1 == doctest::Approx(0.05 * 4));

  DensityCurve c{Abscissa::Energy, Normalization::UnitIntegral, uniform_grid(-1.5, 3, 77), {}};
  for (double x : c.grid) c.values.push_back(std::exp(-(x - 0.2) * (x - 0.2)));
  const ComparisonReport ab = compare(a, c);
  const ComparisonReport ba = compare(c, a);
  CHECK_FALSE(ab.grids_aligned);
  CHECK(ab.l1 == doctest::Approx(ba.l1).epsilon(1e-14));
  CHECK(ab.sup == doctest::Approx(ba.sup).epsilon(1e-14));
  REQUIRE(ab.peaks.size() == 1);
  CHECK(ab.peaks[0].offset == doctest::Approx(0.2).epsilon(0.05));

  DensityCurve far{Abscissa::Energy, Normalization::UnitIntegral, {5.0, 6.0}, {1.0, 1.0}};
  try {
    compare(a, far);
    FAIL("expected DisjointSupports");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DisjointSupports);
  }
  DensityCurve other = a;
  other.abscissa = Abscissa::PerSpin;
  CHECK_THROWS_AS(compare(a, other), Error);
  CompareOptions window;
  window.window = Range{-1.0, 1.0};
  CHECK(compare(a, b, window).l1 == doctest::Approx(0.1));
}

TEST_CASE("resampling onto finer grids keeps the mass") {
  const auto coarse = uniform_grid(-8, 8, 161);
  DensityCurve c{Abscissa::Energy, Normalization::UnitIntegral, coarse, {}};
  for (double x : coarse) c.values.push_back(std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi));
  for (int points : {321, 641, 1281}) {
    CHECK(resample(c, uniform_grid(-8, 8, points)).integral() == doctest::Approx(c.integral()).epsilon(1e-9));
  }
  const DensityCurve outside = resample(c, {-9.0, 9.0});
  CHECK(outside.values[0] == 0.0);
}

TEST_CASE("peaks respect the prominence filter") {
  const auto grid = uniform_grid(-5, 5, 1001);
  DensityCurve c{Abscissa::Energy, Normalization::UnitIntegral, grid, {}};
  for (double x : grid) {
    c.values.push_back(std::exp(-(x + 2) * (x + 2) * 4) + 0.5 * std::exp(-(x - 2) * (x - 2) * 4) +
                       0.001 * std::cos(40 * x));
  }
  const auto peaks = find_peaks(c, 0.01);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0].position == doctest::Approx(-2.0).epsilon(0.01));
  CHECK(peaks[1].position == doctest::Approx(2.0).epsilon(0.01));
  CHECK(find_peaks(c, 0.0).size() > 2);
}

TEST_CASE("csv round trips are exact") {
  DensityCurve c{Abscissa::PerSpin, Normalization::UnitIntegral, {-0.1, 2.5e-300, 1.0 / 3.0}, {0.1, 2.0 / 3.0, 1e300}};
  std::stringstream ss;
  write_curve_csv(ss, c, {{"N", "8"}});
  const std::string text = ss.str();
  CHECK(text.find("# N: 8\n") != std::string::npos);
  CHECK(text.find("abscissa,density\n") != std::string::npos);
  const DensityCurve back = read_curve_csv(ss);
  CHECK(back.abscissa == Abscissa::PerSpin);
  CHECK(back.grid == c.grid);
  CHECK(back.values == c.values);

  const std::vector<double> e{-1.0 / 7.0, 0.0, 3.0};
  std::stringstream sp;
  write_spectrum_csv(sp, e, {{"lambda", "0.5"}});
  const SpectrumFile f = read_spectrum_csv(sp);
  CHECK(f.energies == e);
  CHECK(f.get("lambda") == std::optional<std::string>("0.5"));

  std::stringstream bad("abscissa,density\n1,x\n");
  CHECK_THROWS_AS(read_curve_csv(bad), Error);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}

}
