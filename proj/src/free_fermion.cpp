#include "isingdos/free_fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "isingdos/error.hpp"

namespace isingdos {

double one_particle_energy(double lambda, double phi) {
  // Clamp: at lambda = 1, phi = 0 the radicand can round to -1e-17.
  const double radicand = 1.0 - 2.0 * lambda * std::cos(phi) + lambda * lambda;
  return 2.0 * std::sqrt(std::max(radicand, 0.0));
}

std::vector<double> momentum_grid(int n_spins, Parity parity) {
  if (n_spins < 2) {
    throw Error(ErrorCode::InvalidArgs, "momentum grid needs N >= 2");
  }
  if (n_spins % 2 != 0) {
    throw Error(ErrorCode::OddN, "free-fermion sectors are defined for even N only");
  }
  std::vector<double> phases(n_spins);
  const double step = std::numbers::pi / n_spins;
  for (int j = 0; j < n_spins; ++j) {
    const int integer_momentum = parity == Parity::Even ? 2 * j + 1 : 2 * j;
    phases[j] = step * integer_momentum;
  }
  return phases;
}

SectorSpec sector_spec(int n_spins, double lambda, Parity parity) {
  SectorSpec spec;
  spec.parity = parity;
  spec.phases = momentum_grid(n_spins, parity);
  spec.one_particle.reserve(spec.phases.size());
  for (double phi : spec.phases) spec.one_particle.push_back(one_particle_energy(lambda, phi));
  return spec;
}

bool occupation_allowed(Parity sector, double lambda, bool odd_occupation) {
  if (std::abs(lambda) <= 1.0) return !odd_occupation;
  return sector == Parity::Even ? !odd_occupation : odd_occupation;
}

namespace {

// Walks all 2^N occupation patterns in Gray-code order; each step toggles one
// mode, so the energy update is O(1) and the occupation parity alternates.
void append_sector(const SectorSpec& spec, double lambda, std::vector<double>& out) {
  const auto& e = spec.one_particle;
  const int n = static_cast<int>(e.size());
  double energy = 0.0;
  for (double ej : e) energy -= 0.5 * ej;

  const bool keep_even = occupation_allowed(spec.parity, lambda, false);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  if (keep_even) out.push_back(energy);
  for (std::uint64_t i = 1; i < total; ++i) {
    const int mode = std::countr_zero(i);
    gray ^= std::uint64_t{1} << mode;
    energy += (gray >> mode) & 1u ? e[mode] : -e[mode];
    if ((i & 0xFFFu) == 0) {
      // Re-anchor so rounding drift stays bounded for large N.
      energy = 0.0;
      for (int j = 0; j < n; ++j) energy += ((gray >> j) & 1u ? 0.5 : -0.5) * e[j];
    }
    const bool odd = (std::popcount(gray) & 1) != 0;
    if (odd != keep_even) out.push_back(energy);
  }
}

}  // namespace

ManyBodySpectrum enumerate_spectrum(int n_spins, double lambda) {
  if (n_spins % 2 != 0) {
    throw Error(ErrorCode::OddN, "free-fermion spectrum requires even N");
  }
  if (n_spins > kFermionMaxSpins) {
    throw Error(ErrorCode::CapExceeded,
                "free-fermion enumeration limited to N <= " + std::to_string(kFermionMaxSpins));
  }
  ManyBodySpectrum out;
  out.params = IsingParams::transverse(n_spins, lambda);
  out.params.validate();
  out.method = SpectrumMethod::Fermion;
  out.energies.reserve(out.params.dimension());
  for (Parity p : {Parity::Even, Parity::Odd}) {
    append_sector(sector_spec(n_spins, lambda, p), lambda, out.energies);
  }
  std::sort(out.energies.begin(), out.energies.end());
  return out;
}

}  // namespace isingdos
