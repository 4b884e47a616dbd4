#pragma once

// Exact spectrum of the transverse-field chain through Jordan-Wigner fermions.
//
// Every eigenvalue is E = sum_j e_j (n_j - 1/2) with n_j in {0, 1}, where the
// one-particle energies e_j = 2 sqrt(1 - 2 lambda cos(phi_j) + lambda^2) live on
// one of two momentum grids:
//
//   Even parity sector: phi_j = pi (2j + 1) / N   (antiperiodic fermions)
//   Odd parity sector:  phi_j = 2 pi j / N        (periodic fermions)
//
// Allowed occupation parities:
//   |lambda| <= 1: both grids, even sum n_j only.
//   |lambda| >  1: odd-momentum grid with even sum n_j, even-momentum grid
//                  with odd sum n_j.

#include <vector>

#include "isingdos/model.hpp"

namespace isingdos {

enum class Parity { Even, Odd };

struct SectorSpec {
  Parity parity = Parity::Even;
  std::vector<double> phases;
  std::vector<double> one_particle;  // e_j >= 0, aligned with phases
};

double one_particle_energy(double lambda, double phi);

/// N phases in [0, 2 pi), ascending. Throws OddN for odd N.
std::vector<double> momentum_grid(int n_spins, Parity parity);

SectorSpec sector_spec(int n_spins, double lambda, Parity parity);

/// Whether the sector admits states with the given occupation parity.
bool occupation_allowed(Parity sector, double lambda, bool odd_occupation);

/// Spectrum cap for the 2^N materialized energies.
inline constexpr int kFermionMaxSpins = 26;

/// All 2^N eigenvalues of the transverse-field chain, ascending.
/// Throws OddN for odd N and CapExceeded above kFermionMaxSpins.
ManyBodySpectrum enumerate_spectrum(int n_spins, double lambda);

}  // namespace isingdos
