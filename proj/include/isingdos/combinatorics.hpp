#pragma once

// Counting of cyclic spin strings by block structure.
//
// A string of N spins on a ring with n up spins arranged in k maximal up-blocks
// (and therefore k down-blocks of total size m = N - n) is a cell (n, k). The
// two polarized strings are the cells (0, 0) and (N, 0).
//
// comp(s, p) below is the number of compositions of s into p positive parts,
// C(s-1, p-1), with comp(0, 0) = 1. Writing every count through comp keeps the
// boundary cases (single blocks, empty remainders) exact without special
// casing binomials with negative arguments.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isingdos {

using Count = unsigned __int128;

std::string to_string(Count value);

/// Exact p/q with q > 0 and gcd(p, q) = 1.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  static Rational make(std::int64_t p, std::int64_t q);
  /// "P/Q" or "P". Throws ParseError.
  static Rational parse(std::string_view text);

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
  }
};

/// C(a, b), zero when b < 0, a < 0 or b > a.
Count binomial(int a, int b);

/// Compositions of s into p positive parts.
Count compositions(int s, int p);

struct Cell {
  int n = 0;
  int k = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Whether (n, k) is a realizable cell on a ring of N sites.
bool valid_cell(int n_spins, int n, int k);

/// Number of ring strings in cell (n, k). Throws InvalidArgs for invalid cells.
Count f_count(int n_spins, int n, int k);

/// All cells of a ring, polarized ones included, in (n, k) order.
std::vector<Cell> all_cells(int n_spins);

/// Mean block number over strings with n up spins: n (N - n) / (N - 1).
Rational k_bar(int n_spins, int n);

struct BlockCensus {
  int n_spins = 0;
  std::map<Cell, Count> table;  // includes (0, 0) and (N, 0)

  Count total() const;
};

BlockCensus block_census(int n_spins);

struct DegeneracyClass {
  std::int64_t scaled_energy = 0;  // q * E0 for alpha = p / q
  Rational energy;                 // E0 = alpha (N - 2n) + 4k - N
  Count multiplicity = 0;
  std::vector<Cell> cells;
};

struct DegeneracyCensus {
  int n_spins = 0;
  Rational alpha;
  std::map<std::int64_t, DegeneracyClass> classes;  // keyed by scaled_energy

  Count total() const;
};

/// Groups all cells by their exact unperturbed energy.
DegeneracyCensus degeneracy_census(int n_spins, Rational alpha);

/// Class label R = 2k - n used at alpha = 1, where E0 = 2R.
inline int class_label(const Cell& c) { return 2 * c.k - c.n; }

/// Cells with 2k - n = R. Empty when R is not realized.
std::vector<Cell> class_cells(int n_spins, int r);

// Two-spin flips of neighbouring sites that keep 2k - n fixed, summed over all
// strings of a cell. Requires N >= 3 (on two sites both bonds hit the same
// pair). Labels follow the transition:
//   a: n -> n - 2, k -> k - 1   (removes an up-block of size 2)
//   b: n -> n + 2, k -> k + 1   (inserts an up-block of size 2)
//   c: n -> n,     k -> k       (moves a block wall by two)
Count count_Na(int n_spins, int n, int m, int k);
Count count_Nb(int n_spins, int n, int m, int k);
Count count_Nc(int n_spins, int n, int m, int k);

/// Parts of size 1 (N1) and size 2 (N2) summed over all compositions of n
/// into k parts.
Count count_N1(int n, int k);
Count count_N2(int n, int k);

struct TransitionCounts {
  Count strings = 0;
  Count a = 0;
  Count b = 0;
  Count c = 0;
  friend bool operator==(const TransitionCounts&, const TransitionCounts&) = default;
};

/// Exhaustive scan over all 2^N strings.
struct BruteForceCensus {
  int n_spins = 0;
  std::map<Cell, TransitionCounts> cells;
  /// (sum s_i s_{i+1}, sum s_i) -> number of strings, with s = +1 for up.
  std::map<std::pair<int, int>, Count> spin_sums;
  /// Multiplicity per q * E0 for alpha = p / q, from the raw spin sums.
  std::map<std::int64_t, Count> classes(Rational alpha) const;
};

inline constexpr int kBruteForceMaxSpins = 16;

/// Throws CapExceeded above kBruteForceMaxSpins and InvalidArgs below N = 3.
BruteForceCensus brute_force_census(int n_spins);

/// Brute-force part counts over compositions of n into k parts.
std::pair<Count, Count> brute_force_part_counts(int n, int k);

/// Cell (n, k) of a single string.
Cell cell_of(std::uint64_t bits, int n_spins);

}  // namespace isingdos
