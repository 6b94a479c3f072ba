#pragma once

// Seeded randomized campaigns. Every trial draws from its own seed, derived
// from the campaign seed and the trial index, so any single row of a log can
// be replayed on its own.

#include <cstdint>
#include <random>
#include <vector>

#include "core/lattice.hpp"
#include "core/spectral.hpp"
#include "core/trace_bounds.hpp"

namespace aldous_lab {

inline constexpr double kTraceSlackTol = 1e-12;
inline constexpr double kContainmentTol = 1e-8;

/// splitmix64 step; the seed of trial `index` in a campaign seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Random rates on all pairs of 0..size-1: each pair present with probability
/// 0.7 and rate uniform in [0.05, 2], plus a random spanning path so the
/// result is connected.
RateFunction random_rate_function(std::size_t size, std::mt19937_64& rng);

struct TraceTrial {
  std::uint64_t seed = 0;
  int d = 1;
  int n = 1;
  std::size_t size = 0;  // |V|; n+1 for the one-dimensional inequality
  TraceReport report;
};

/// One trial of the path inequality: n uniform in 1..n_max, f Gaussian, a
/// ramp or a spike at n+1.
TraceTrial trace_trial_1d(int n_max, std::uint64_t seed);
/// One trial of the lattice inequality: a random traceable V between R^d_n
/// and R^d_{n+1}, f Gaussian or boundary-weighted.
TraceTrial trace_trial_nd(int d, int n, std::uint64_t seed);

std::vector<TraceTrial> trace_fuzz_1d(int n_max, std::size_t trials, std::uint64_t seed);
std::vector<TraceTrial> trace_fuzz_nd(int d, int n, std::size_t trials, std::uint64_t seed);

/// V = R^2_5 plus the corner (6,6), f the indicator of the corner. The set is
/// not traceable and the inequality fails (lhs 1 against rhs 4/5).
TraceTrial trace_negative_control();

struct ContainmentTrial {
  std::uint64_t seed = 0;
  RateFunction rates{0};
  ContainmentReport report;
};

ContainmentTrial containment_trial(std::size_t size, std::uint64_t seed, double tol);
std::vector<ContainmentTrial> containment_campaign(std::size_t size, std::size_t trials,
                                                   std::uint64_t seed, double tol);

}  // namespace aldous_lab
