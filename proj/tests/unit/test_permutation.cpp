#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "core/error.hpp"
#include "core/permutation.hpp"

using namespace aldous_lab;

TEST_CASE("rank and unrank") {
  CHECK(rank(Permutation({0, 1, 2})).value == 0);
  CHECK(rank(Permutation({2, 1, 0})).value == 5);
  CHECK(unrank({0, 3}) == Permutation({0, 1, 2}));
  CHECK(unrank({5, 3}) == Permutation({2, 1, 0}));
  for (std::uint64_t r = 0; r < 120; ++r) CHECK(rank(unrank({r, 5})).value == r);
  CHECK_THROWS_AS(unrank({6, 3}), Error);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), Error);
}

TEST_CASE("rank is a lexicographic bijection") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::uint64_t expected = 0;
    do {
      const Permutation perm(p);
      CHECK(rank(perm).value == expected);
      CHECK(rank_unchecked(p) == expected);
      CHECK(unrank({expected, n}) == perm);
      ++expected;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(expected == factorial(n));
  }
}

TEST_CASE("group operations") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> v{0, 1, 2, 3, 4, 5};
    std::shuffle(v.begin(), v.end(), rng);
    const Permutation p(v);
    CHECK(compose(p, invert(p)) == Permutation::identity(6));
    CHECK(compose(invert(p), p) == Permutation::identity(6));
  }
  CHECK(apply_transposition(Permutation({0, 1, 2}), 0, 1) == Permutation({1, 0, 2}));
  const Permutation p({2, 0, 3, 1});
  CHECK(apply_transposition(apply_transposition(p, 1, 3), 1, 3) == p);
  // Left multiplication by the transposition.
  CHECK(apply_transposition(p, 0, 2) == compose(Permutation({2, 1, 0, 3}), p));
  CHECK_THROWS_AS(compose(Permutation({0, 1}), Permutation({0, 1, 2})), Error);
}

TEST_CASE("position_of and fiber sizes") {
  CHECK(position_of(Permutation({2, 0, 1}), 0) == 2);
  const Permutation id = Permutation::identity(5);
  for (int i = 0; i < 5; ++i) CHECK(position_of(id, i) == i);
  CHECK_THROWS_AS(position_of(id, 5), Error);
  for (int n = 2; n <= 6; ++n) {
    for (int slot = 0; slot < n; ++slot) {
      std::vector<std::uint64_t> fiber(n, 0);
      for (std::uint64_t r = 0; r < factorial(n); ++r) ++fiber[position_of(unrank({r, n}), slot)];
      for (std::uint64_t c : fiber) CHECK(c == factorial(n - 1));
    }
  }
}

TEST_CASE("transposition rank tables are fixed-point-free involutions") {
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::vector<std::uint32_t> t = transposition_rank_table(n, i, j);
        REQUIRE(t.size() == factorial(n));
        for (std::size_t r = 0; r < t.size(); ++r) {
          CHECK(t[r] != r);
          CHECK(t[t[r]] == r);
          CHECK(t[r] == rank(apply_transposition(unrank({r, n}), i, j)).value);
        }
      }
    }
  }
}
