#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace oracle {

std::vector<double> classical_ring(int n_spins, double alpha) {
  std::vector<double> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n_spins); ++s) {
    double e = 0.0;
    for (int i = 0; i < n_spins; ++i) {
      const int a = (s >> i) & 1 ? -1 : 1;
      const int b = (s >> ((i + 1) % n_spins)) & 1 ? -1 : 1;
      e -= a * b + alpha * a;
    }
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<double, double> fixed_n_subsets(const std::vector<double>& one_particle, int n) {
  const int modes = static_cast<int>(one_particle.size());
  long double s1 = 0.0L;
  long double s2 = 0.0L;
  long double count = 0.0L;
  for (std::uint64_t occ = 0; occ < (std::uint64_t{1} << modes); ++occ) {
    if (std::popcount(occ) != n) continue;
    long double e = 0.0L;
    for (int j = 0; j < modes; ++j) e += one_particle[j] * (((occ >> j) & 1) ? 0.5L : -0.5L);
    s1 += e;
    s2 += e * e;
    count += 1.0L;
  }
  const long double mean = s1 / count;
  return {static_cast<double>(mean), static_cast<double>(s2 / count - mean * mean)};
}

namespace {

int spin(std::uint64_t s, int i, int n_spins) {
  return (s >> (((i % n_spins) + n_spins) % n_spins)) & 1 ? 1 : -1;
}

}  // namespace

std::map<isingdos::Cell, double> perturbative_shift(int n_spins, double alpha, double lambda) {
  const double r = std::hypot(alpha, lambda);
  const double s = alpha / r;
  const double c = lambda / r;
  const std::uint64_t dim = std::uint64_t{1} << n_spins;
  std::vector<double> diag(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (int i = 0; i < n_spins; ++i) {
      e -= r * spin(b, i, n_spins) + s * s * spin(b, i, n_spins) * spin(b, i + 1, n_spins);
    }
    diag[b] = e;
  }
  std::map<isingdos::Cell, double> out;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const isingdos::Cell cell = isingdos::cell_of(b, n_spins);
    std::map<std::uint64_t, double> v;
    for (int i = 0; i < n_spins; ++i) {
      v[b ^ (std::uint64_t{1} << i)] -= s * c * (spin(b, i - 1, n_spins) + spin(b, i + 1, n_spins));
      v[b ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << ((i + 1) % n_spins))] -= c * c;
    }
    double shift = 0.0;
    for (const auto& [f, amp] : v) {
      if (amp == 0.0) continue;
      if (isingdos::class_label(isingdos::cell_of(f, n_spins)) == isingdos::class_label(cell)) continue;
      shift += amp * amp / (diag[b] - diag[f]);
    }
    out[cell] += shift;
  }
  return out;
}

std::vector<Cluster> nearest_clusters(const std::vector<double>& energies,
                                      const std::vector<double>& centres) {
  std::vector<std::vector<double>> members(centres.size());
  for (double e : energies) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < centres.size(); ++i) {
      if (std::abs(e - centres[i]) < std::abs(e - centres[best])) best = i;
    }
    members[best].push_back(e);
  }
  std::vector<Cluster> out;
  for (const auto& m : members) {
    Cluster c;
    c.count = m.size();
    if (!m.empty()) {
      long double sum = 0.0L;
      for (double e : m) sum += e;
      c.mean = static_cast<double>(sum / m.size());
      long double sq = 0.0L;
      for (double e : m) sq += (e - c.mean) * (e - c.mean);
      c.stddev = static_cast<double>(std::sqrt(sq / m.size()));
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace oracle
