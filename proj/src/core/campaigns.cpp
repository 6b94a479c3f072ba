#include "core/campaigns.hpp"

#include <algorithm>
#include <numeric>

#include "core/error.hpp"

namespace aldous_lab {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RateFunction random_rate_function(std::size_t size, std::mt19937_64& rng) {
  require(size >= 2, ErrorCode::kInvalidArgument, "random rates need at least two vertices");
  std::uniform_real_distribution<double> rate(0.05, 2.0);
  std::bernoulli_distribution present(0.7);
  RateFunction q(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if (present(rng)) q.set(i, j, rate(rng));
    }
  }
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t s = 0; s + 1 < size; ++s) {
    if (q.rate(order[s], order[s + 1]) == 0.0) q.set(order[s], order[s + 1], rate(rng));
  }
  return q;
}

TraceTrial trace_trial_1d(int n_max, std::uint64_t seed) {
  require(n_max >= 1, ErrorCode::kInvalidArgument, "n_max must be >= 1");
  std::mt19937_64 rng(seed);
  TraceTrial t;
  t.seed = seed;
  t.d = 1;
  t.n = std::uniform_int_distribution<int>(1, n_max)(rng);
  t.size = static_cast<std::size_t>(t.n) + 1;
  std::vector<double> f(t.size);
  std::normal_distribution<double> normal;
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      for (double& x : f) x = normal(rng);
      break;
    case 1: {
      const double slope = normal(rng), offset = normal(rng);
      for (std::size_t k = 0; k < f.size(); ++k) f[k] = offset + slope * static_cast<double>(k);
      break;
    }
    default:
      for (double& x : f) x = 0.01 * normal(rng);
      f.back() = 1.0 + normal(rng);
      break;
  }
  t.report = trace_1d(f, t.n);
  return t;
}

TraceTrial trace_trial_nd(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const VertexSet fill = random_traceable_fill(d, n, rng);
  std::size_t lo = 1;
  for (int i = 0; i < d; ++i) lo *= static_cast<std::size_t>(n);
  TraceTrial t;
  t.seed = seed;
  t.d = d;
  t.n = n;
  t.size = std::uniform_int_distribution<std::size_t>(lo, fill.size())(rng);
  const VertexSet v = fill.prefix(t.size);
  std::vector<double> f(v.size());
  std::normal_distribution<double> normal;
  const bool boundary_weighted = std::bernoulli_distribution(0.5)(rng);
  for (std::size_t i = 0; i < v.size(); ++i) {
    f[i] = normal(rng);
    if (boundary_weighted && face_of(v[i], n) != 0) f[i] *= 10.0;
  }
  t.report = trace_nd(v, d, n, f);
  return t;
}

std::vector<TraceTrial> trace_fuzz_1d(int n_max, std::size_t trials, std::uint64_t seed) {
  std::vector<TraceTrial> out;
  out.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) out.push_back(trace_trial_1d(n_max, trial_seed(seed, i)));
  return out;
}

std::vector<TraceTrial> trace_fuzz_nd(int d, int n, std::size_t trials, std::uint64_t seed) {
  std::vector<TraceTrial> out;
  out.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) out.push_back(trace_trial_nd(d, n, trial_seed(seed, i)));
  return out;
}

TraceTrial trace_negative_control() {
  std::vector<LatticePoint> points = make_hypercube({2, 5}).points();
  points.push_back(LatticePoint{6, 6});
  const VertexSet v(2, std::move(points));
  std::vector<double> f(v.size(), 0.0);
  f.back() = 1.0;
  TraceTrial t;
  t.d = 2;
  t.n = 5;
  t.size = v.size();
  t.report = trace_nd_unchecked(v, 2, 5, f);
  return t;
}

ContainmentTrial containment_trial(std::size_t size, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  ContainmentTrial t;
  t.seed = seed;
  t.rates = random_rate_function(size, rng);
  t.report = containment_report(t.rates, tol);
  return t;
}

std::vector<ContainmentTrial> containment_campaign(std::size_t size, std::size_t trials,
                                                   std::uint64_t seed, double tol) {
  std::vector<ContainmentTrial> out;
  out.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    out.push_back(containment_trial(size, trial_seed(seed, i), tol));
  }
  return out;
}

}  // namespace aldous_lab
