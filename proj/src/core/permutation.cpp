#include "core/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace aldous_lab {

std::uint64_t factorial(int n) {
  require(n >= 0 && n <= 20, ErrorCode::kInvalidArgument, "factorial argument out of range");
  std::uint64_t out = 1;
  for (int k = 2; k <= n; ++k) out *= static_cast<std::uint64_t>(k);
  return out;
}

Permutation::Permutation(std::vector<int> one_line) : one_line_(std::move(one_line)) {
  std::vector<bool> seen(one_line_.size(), false);
  for (int v : one_line_) {
    require(v >= 0 && static_cast<std::size_t>(v) < one_line_.size() && !seen[v],
            ErrorCode::kInvalidArgument, "one-line array is not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  require(n >= 0, ErrorCode::kInvalidArgument, "negative permutation size");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

std::uint64_t rank_unchecked(std::span<const int> one_line) {
  const std::size_t n = one_line.size();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller_after = 0;
    for (std::size_t t = i + 1; t < n; ++t) smaller_after += one_line[t] < one_line[i];
    r = r * (n - i) + smaller_after;
  }
  return r;
}

PermutationRank rank(const Permutation& p) {
  require(p.size() <= kMaxRankedSize, ErrorCode::kResourceLimit,
          "ranked permutations are capped at N = 12");
  return {rank_unchecked(p.one_line()), p.size()};
}

Permutation unrank(const PermutationRank& r) {
  require(r.size >= 0 && r.size <= kMaxRankedSize, ErrorCode::kResourceLimit,
          "ranked permutations are capped at N = 12");
  const int n = r.size;
  require(r.value < factorial(n), ErrorCode::kInvalidArgument,
          "rank " + std::to_string(r.value) + " out of range for N = " + std::to_string(n));
  std::vector<int> digits(n);
  std::uint64_t value = r.value;
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t base = static_cast<std::uint64_t>(n - i);
    digits[i] = static_cast<int>(value % base);
    value /= base;
  }
  std::vector<int> unused(n);
  std::iota(unused.begin(), unused.end(), 0);
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = unused[digits[i]];
    unused.erase(unused.begin() + digits[i]);
  }
  return Permutation(std::move(out));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require(a.size() == b.size(), ErrorCode::kInvalidArgument, "permutation size mismatch");
  std::vector<int> out(a.size());
  for (int i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return Permutation(std::move(out));
}

Permutation invert(const Permutation& p) {
  std::vector<int> out(p.size());
  for (int i = 0; i < p.size(); ++i) out[p[i]] = i;
  return Permutation(std::move(out));
}

Permutation apply_transposition(const Permutation& p, int i, int j) {
  require(i >= 0 && j >= 0 && i < p.size() && j < p.size() && i != j,
          ErrorCode::kInvalidArgument, "transposition indices out of range");
  std::vector<int> out = p.one_line();
  for (int& v : out) {
    if (v == i) {
      v = j;
    } else if (v == j) {
      v = i;
    }
  }
  return Permutation(std::move(out));
}

int position_of(const Permutation& p, int slot) {
  require(slot >= 0 && slot < p.size(), ErrorCode::kInvalidArgument, "slot out of range");
  return p[slot];
}

std::vector<std::uint32_t> transposition_rank_table(int n, int i, int j) {
  require(n >= 2 && n <= kMaxRankedSize, ErrorCode::kResourceLimit,
          "transposition tables need 2 <= N <= 12");
  require(i >= 0 && j >= 0 && i < n && j < n && i != j, ErrorCode::kInvalidArgument,
          "transposition indices out of range");
  const std::uint64_t count = factorial(n);
  std::vector<std::uint32_t> table(count);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> swapped(n);
  // next_permutation walks S_N in lexicographic order, i.e. in rank order.
  for (std::uint64_t r = 0; r < count; ++r) {
    for (int s = 0; s < n; ++s) swapped[s] = p[s] == i ? j : (p[s] == j ? i : p[s]);
    table[r] = static_cast<std::uint32_t>(rank_unchecked(swapped));
    std::next_permutation(p.begin(), p.end());
  }
  return table;
}

}  // namespace aldous_lab
