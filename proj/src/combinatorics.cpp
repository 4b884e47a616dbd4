#include "isingdos/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "isingdos/error.hpp"

namespace isingdos {

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Rational Rational::make(std::int64_t p, std::int64_t q) {
  if (q == 0) throw Error(ErrorCode::InvalidArgs, "rational with zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p, q);
  return {p / g, q / g};
}

Rational Rational::parse(std::string_view text) {
  auto number = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto* end = part.data() + part.size();
    const auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (part.empty() || ec != std::errc{} || ptr != end) {
      throw Error(ErrorCode::ParseError, "cannot parse rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make(number(text), 1);
  return make(number(text.substr(0, slash)), number(text.substr(slash + 1)));
}

std::string Rational::str() const {
  return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

Count binomial(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  Count r = 1;
  for (int i = 1; i <= b; ++i) r = r * static_cast<Count>(a - b + i) / static_cast<Count>(i);
  return r;
}

Count compositions(int s, int p) {
  if (s < 0 || p < 0) return 0;
  if (p == 0) return s == 0 ? 1 : 0;
  return binomial(s - 1, p - 1);
}

bool valid_cell(int n_spins, int n, int k) {
  if (n_spins < 2 || n < 0 || n > n_spins) return false;
  if (k == 0) return n == 0 || n == n_spins;
  return k >= 1 && k <= std::min(n, n_spins - n);
}

namespace {

void require_cell(int n_spins, int n, int k) {
  if (!valid_cell(n_spins, n, k)) {
    throw Error(ErrorCode::InvalidArgs, "invalid cell (n=" + std::to_string(n) +
                                            ", k=" + std::to_string(k) +
                                            ") for N=" + std::to_string(n_spins));
  }
}

void require_transition_cell(int n_spins, int n, int m, int k) {
  require_cell(n_spins, n, k);
  if (m != n_spins - n) throw Error(ErrorCode::InvalidArgs, "m must equal N - n");
  if (n_spins < 3) {
    throw Error(ErrorCode::InvalidArgs, "transition counts need N >= 3");
  }
}

}  // namespace

Count f_count(int n_spins, int n, int k) {
  require_cell(n_spins, n, k);
  if (k == 0) return 1;
  // Each string has k up-blocks; fixing the first block at a marked site
  // overcounts by k.
  return static_cast<Count>(n_spins) * compositions(n, k) * compositions(n_spins - n, k) /
         static_cast<Count>(k);
}

std::vector<Cell> all_cells(int n_spins) {
  if (n_spins < 2) throw Error(ErrorCode::InvalidArgs, "N must be at least 2");
  std::vector<Cell> out{{0, 0}};
  for (int n = 1; n < n_spins; ++n) {
    for (int k = 1; k <= std::min(n, n_spins - n); ++k) out.push_back({n, k});
  }
  out.push_back({n_spins, 0});
  return out;
}

Rational k_bar(int n_spins, int n) {
  if (n_spins < 2 || n < 0 || n > n_spins) {
    throw Error(ErrorCode::InvalidArgs, "k_bar needs N >= 2 and 0 <= n <= N");
  }
  return Rational::make(static_cast<std::int64_t>(n) * (n_spins - n), n_spins - 1);
}

Count BlockCensus::total() const {
  Count t = 0;
  for (const auto& [cell, f] : table) t += f;
  return t;
}

BlockCensus block_census(int n_spins) {
  BlockCensus c;
  c.n_spins = n_spins;
  for (const Cell& cell : all_cells(n_spins)) c.table[cell] = f_count(n_spins, cell.n, cell.k);
  return c;
}

Count DegeneracyCensus::total() const {
  Count t = 0;
  for (const auto& [key, cls] : classes) t += cls.multiplicity;
  return t;
}

DegeneracyCensus degeneracy_census(int n_spins, Rational alpha) {
  DegeneracyCensus out;
  out.n_spins = n_spins;
  out.alpha = alpha;
  for (const Cell& cell : all_cells(n_spins)) {
    const std::int64_t key =
        alpha.p * (n_spins - 2 * cell.n) + alpha.q * (4 * cell.k - n_spins);
    auto& cls = out.classes[key];
    cls.scaled_energy = key;
    cls.energy = Rational::make(key, alpha.q);
    cls.multiplicity += f_count(n_spins, cell.n, cell.k);
    cls.cells.push_back(cell);
  }
  return out;
}

std::vector<Cell> class_cells(int n_spins, int r) {
  std::vector<Cell> out;
  for (const Cell& cell : all_cells(n_spins)) {
    if (class_label(cell) == r) out.push_back(cell);
  }
  return out;
}

Count count_Na(int n_spins, int n, int m, int k) {
  require_transition_cell(n_spins, n, m, k);
  if (k == 0) return 0;
  // Choose an up-block of size exactly 2 to erase: the remaining n - 2 up
  // spins form k - 1 blocks.
  return static_cast<Count>(n_spins) * compositions(m, k) * compositions(n - 2, k - 1);
}

Count count_Nb(int n_spins, int n, int m, int k) {
  require_transition_cell(n_spins, n, m, k);
  if (k == 0) return n == 0 ? static_cast<Count>(n_spins) : 0;
  // A pair inserted strictly inside a down-block splits it into k + 1 blocks.
  return static_cast<Count>(n_spins) * compositions(n, k) * binomial(m - 3, k);
}

Count count_Nc(int n_spins, int n, int m, int k) {
  require_transition_cell(n_spins, n, m, k);
  if (k == 0) return 0;
  // A wall moves by two when the block it shrinks has size >= 2; summed over
  // both walls of every block, with the other species composition free.
  const Count up_shrinks = compositions(n, k) - compositions(n - 1, k - 1);
  const Count down_shrinks = compositions(m, k) - compositions(m - 1, k - 1);
  return 2 * static_cast<Count>(n_spins) *
         (compositions(m - 1, k - 1) * up_shrinks + compositions(n - 1, k - 1) * down_shrinks);
}

Count count_N1(int n, int k) {
  if (k < 1 || n < k) throw Error(ErrorCode::InvalidArgs, "count_N1 needs 1 <= k <= n");
  return static_cast<Count>(k) * compositions(n - 1, k - 1);
}

Count count_N2(int n, int k) {
  if (k < 1 || n < k) throw Error(ErrorCode::InvalidArgs, "count_N2 needs 1 <= k <= n");
  return static_cast<Count>(k) * compositions(n - 2, k - 1);
}

Cell cell_of(std::uint64_t bits, int n_spins) {
  const std::uint64_t mask = n_spins == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_spins) - 1;
  bits &= mask;
  const std::uint64_t rotated = ((bits << 1) | (bits >> (n_spins - 1))) & mask;
  // An up-block starts where bit i is set and bit i-1 is clear.
  return {std::popcount(bits), std::popcount(bits & ~rotated)};
}

std::map<std::int64_t, Count> BruteForceCensus::classes(Rational alpha) const {
  std::map<std::int64_t, Count> out;
  for (const auto& [sums, count] : spin_sums) {
    const auto [bond_sum, spin_sum] = sums;
    // E0 = -sum s_i s_{i+1} - alpha sum s_i
    out[-alpha.q * bond_sum - alpha.p * spin_sum] += count;
  }
  return out;
}

BruteForceCensus brute_force_census(int n_spins) {
  if (n_spins > kBruteForceMaxSpins) {
    throw Error(ErrorCode::CapExceeded, "brute-force census limited to N <= 16");
  }
  if (n_spins < 3) throw Error(ErrorCode::InvalidArgs, "brute-force census needs N >= 3");
  BruteForceCensus out;
  out.n_spins = n_spins;
  const std::uint64_t total = std::uint64_t{1} << n_spins;
  for (std::uint64_t s = 0; s < total; ++s) {
    // Spin value +1 for an up (set) bit, -1 otherwise.
    int bond_sum = 0;
    int spin_sum = 0;
    for (int i = 0; i < n_spins; ++i) {
      const int si = (s >> i) & 1 ? 1 : -1;
      const int sj = (s >> ((i + 1) % n_spins)) & 1 ? 1 : -1;
      bond_sum += si * sj;
      spin_sum += si;
    }
    out.spin_sums[{bond_sum, spin_sum}] += 1;

    const Cell cell = cell_of(s, n_spins);
    auto& t = out.cells[cell];
    t.strings += 1;
    const int r = class_label(cell);
    for (int i = 0; i < n_spins; ++i) {
      const std::uint64_t flipped = s ^ (std::uint64_t{1} << i) ^
                                    (std::uint64_t{1} << ((i + 1) % n_spins));
      const Cell after = cell_of(flipped, n_spins);
      if (class_label(after) != r) continue;
      if (after.n == cell.n - 2) {
        t.a += 1;
      } else if (after.n == cell.n + 2) {
        t.b += 1;
      } else {
        t.c += 1;
      }
    }
  }
  return out;
}

std::pair<Count, Count> brute_force_part_counts(int n, int k) {
  Count ones = 0;
  Count twos = 0;
  std::vector<int> parts;
  // Depth-first over compositions of n into k positive parts.
  auto walk = [&](auto&& self, int remaining, int slots) -> void {
    if (slots == 0) {
      if (remaining != 0) return;
      for (int p : parts) {
        ones += p == 1;
        twos += p == 2;
      }
      return;
    }
    for (int p = 1; p <= remaining - (slots - 1); ++p) {
      parts.push_back(p);
      self(self, remaining - p, slots - 1);
      parts.pop_back();
    }
  };
  walk(walk, n, k);
  return {ones, twos};
}

}  // namespace isingdos
