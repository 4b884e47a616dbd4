#pragma once

// Independent reference computations for the tests. Everything here is brute
// force over basis states or subsets and shares no formulas with the library.

#include <map>
#include <utility>
#include <vector>

#include "isingdos/combinatorics.hpp"

namespace oracle {

/// Energies -sum s_i s_{i+1} - alpha sum s_i of all 2^N sign strings on a ring, sorted.
std::vector<double> classical_ring(int n_spins, double alpha);

/// Mean and variance of sum_j e_j (n_j - 1/2) over all occupation patterns
/// with exactly n particles.
std::pair<double, double> fixed_n_subsets(const std::vector<double>& one_particle, int n);

/// Second-order shift sum_f |V_fs|^2 / (E_s - E_f) of every string s in the
/// field-aligned frame, summed per cell. Final states in the same degenerate
/// class (2k - n) are excluded.
std::map<isingdos::Cell, double> perturbative_shift(int n_spins, double alpha, double lambda);

/// Counts of eigenvalues nearest to each centre, and their means and standard deviations.
struct Cluster {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};
std::vector<Cluster> nearest_clusters(const std::vector<double>& energies,
                                      const std::vector<double>& centres);

}  // namespace oracle
