#pragma once

// Permutations of {0, .., N-1} in one-line notation, with Lehmer-code ranking
// in lexicographic order. The rank is the state index of the interchange
// process.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aldous_lab {

inline constexpr int kMaxRankedSize = 12;

std::uint64_t factorial(int n);

class Permutation {
 public:
  /// Validates bijectivity of the one-line array (values 0..N-1).
  explicit Permutation(std::vector<int> one_line);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(one_line_.size()); }
  const std::vector<int>& one_line() const { return one_line_; }
  int operator[](int slot) const { return one_line_[slot]; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> one_line_;
};

struct PermutationRank {
  std::uint64_t value = 0;
  int size = 0;

  bool operator==(const PermutationRank&) const = default;
};

PermutationRank rank(const Permutation& p);
Permutation unrank(const PermutationRank& r);

/// Rank of a raw one-line array; no validation. Used on hot paths.
std::uint64_t rank_unchecked(std::span<const int> one_line);

/// (a * b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation invert(const Permutation& p);

/// (i j) * p: swaps the values i and j wherever they occur in p.
Permutation apply_transposition(const Permutation& p, int i, int j);

/// phi_{N,i}(p) = p_i.
int position_of(const Permutation& p, int slot);

/// Index table of the left action of the transposition (i j) on ranks:
/// table[rank(p)] = rank((i j) * p) for all p in S_N.
std::vector<std::uint32_t> transposition_rank_table(int n, int i, int j);

}  // namespace aldous_lab
