#include "core/hjkn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace aldous_lab {

namespace {

// ALDOUS_LAB_CACHE names a directory for transposition rank tables.
const IndexTableCache* environment_cache() {
  static const std::unique_ptr<IndexTableCache> cache = [] {
    const char* dir = std::getenv("ALDOUS_LAB_CACHE");
    if (dir == nullptr || *dir == '\0') return std::unique_ptr<IndexTableCache>();
    return std::make_unique<IndexTableCache>(dir);
  }();
  return cache.get();
}

bool relative_equal(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

std::size_t ipow(int base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

}  // namespace

double rw_gap(const RateFunction& rates, const SpectralOptions& options) {
  require(rates.size() >= 2, ErrorCode::kInvalidArgument, "RW gaps need N >= 2");
  SpectralOptions opts = options;
  opts.want_vector = false;
  SolverMethod method = opts.method;
  if (method == SolverMethod::kAuto) {
    method = rates.size() <= kDenseGapLimit ? SolverMethod::kDense : SolverMethod::kLanczos;
  }
  opts.method = method;
  const Storage storage = method == SolverMethod::kDense ? Storage::kDense : Storage::kMatrixFree;
  return spectral_gap(rw_generator(rates, storage), opts).gap;
}

SpectralResult ip_gap(const RateFunction& rates, const SpectralOptions& options) {
  const std::size_t n = rates.size();
  require(n >= 2, ErrorCode::kInvalidArgument, "IP gaps need N >= 2");
  require(n <= static_cast<std::size_t>(kMaxMatrixFreeIpSites), ErrorCode::kResourceLimit,
          "IP gaps are capped at N = 9");
  SpectralOptions opts = options;
  SolverMethod method = opts.method;
  if (method == SolverMethod::kAuto) {
    method = factorial(static_cast<int>(n)) <= kDenseCap ? SolverMethod::kDense
                                                          : SolverMethod::kLanczos;
  }
  opts.method = method;
  if (method == SolverMethod::kDense) {
    require(n <= static_cast<std::size_t>(kMaxDenseIpSites), ErrorCode::kResourceLimit,
            "dense IP gaps are capped at N = 7");
    return spectral_gap(ip_generator(rates, Storage::kDense), opts);
  }
  const Storage storage =
      factorial(static_cast<int>(n)) <= kDenseCap ? Storage::kDense : Storage::kMatrixFree;
  return spectral_gap(ip_generator(rates, storage, environment_cache()), opts);
}

AldousVerdict is_aldous(const RateFunction& rates, double tol, const SpectralOptions& ip_options) {
  require(tol >= 0.0, ErrorCode::kInvalidArgument, "tolerance must be nonnegative");
  AldousVerdict v;
  v.tol = tol;
  v.gap_rw = rw_gap(rates);
  SpectralOptions opts = ip_options;
  opts.want_vector = false;
  SpectralResult ip = ip_gap(rates, opts);
  v.gap_ip = ip.gap;
  v.ip_method = ip.method;
  v.abs_diff = std::abs(v.gap_ip - v.gap_rw);
  v.holds = v.abs_diff <= tol * std::max(1.0, v.gap_rw);
  v.one_sided = v.gap_ip <= v.gap_rw + tol;
  return v;
}

RateFunction interpolate_rate(const RateFunction& rates, int k, double t) {
  require(k >= 2 && static_cast<std::size_t>(k) == rates.size(), ErrorCode::kInvalidArgument,
          "interpolation index k must equal the rate function size");
  require(t >= 0.0 && t <= 1.0, ErrorCode::kInvalidArgument, "t must lie in [0, 1]");
  const std::size_t last = static_cast<std::size_t>(k) - 1;
  RateFunction out(rates.size());
  for (const PairRate& p : rates.pairs()) {
    out.set(p.i, p.j, p.j == last ? t * p.rate : p.rate);
  }
  return out;
}

double find_tk(const RateFunction& rates, int k, double target_gap, double tol) {
  require(tol > 0.0, ErrorCode::kInvalidArgument, "tolerance must be positive");
  require(target_gap >= 0.0, ErrorCode::kInvalidArgument, "target gap must be nonnegative");
  auto gap_at = [&](double t) { return rw_gap(interpolate_rate(rates, k, t)); };
  const double full = gap_at(1.0);
  if (std::abs(full - target_gap) <= tol) return 1.0;
  require(target_gap <= full + tol, ErrorCode::kPrecondition,
          "target gap " + std::to_string(target_gap) + " exceeds the RW gap " +
              std::to_string(full) + " at k = " + std::to_string(k));
  if (target_gap <= tol) return 0.0;
  // The gap is continuous and nondecreasing in t, and vanishes at t = 0.
  double lo = 0.0, hi = 1.0;
  double best_t = 1.0, best_err = std::abs(full - target_gap);
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap_at(mid);
    const double err = std::abs(g - target_gap);
    if (err < best_err) {
      best_err = err;
      best_t = mid;
    }
    if (g < target_gap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double limit = 0.5 * (lo + hi);
  const double limit_err = std::abs(gap_at(limit) - target_gap);
  if (limit_err <= tol) return limit;
  require(best_err <= tol, ErrorCode::kNotConverged,
          "bisection for t_" + std::to_string(k) + " ended " + std::to_string(best_err) +
              " away from the target");
  return best_t;
}

EqualizedSequence build_equalized_sequence(std::span<const RateFunction> rates, double tol) {
  require(!rates.empty(), ErrorCode::kInvalidArgument, "rate sequence is empty");
  require(sequence_is_increasing(rates), ErrorCode::kHypothesisViolation,
          "rate sequence is not increasing");
  EqualizedSequence out;
  for (std::size_t m = 0; m < rates.size(); ++m) {
    const double g = rw_gap(rates[m]);
    require(g > 0.0, ErrorCode::kHypothesisViolation,
            "RW gap vanishes at k = " + std::to_string(m + 2) + " (disconnected rates)");
    out.input_gaps.push_back(g);
  }
  const double target = out.input_gaps.back();
  const std::size_t last_k = rates.size() + 1;
  for (std::size_t m = 0; m + 1 < rates.size(); ++m) {
    require(out.input_gaps[m] >= target - tol, ErrorCode::kHypothesisViolation,
            "RW gap at k = " + std::to_string(m + 2) + " is " +
                std::to_string(out.input_gaps[m]) + ", below the final gap " +
                std::to_string(target) + " at N = " + std::to_string(last_k));
  }
  for (std::size_t m = 0; m + 1 < rates.size(); ++m) {
    const int k = static_cast<int>(m) + 2;
    const double t = find_tk(rates[m], k, target, tol);
    out.t.push_back(t);
    out.rates.push_back(interpolate_rate(rates[m], k, t));
  }
  out.t.push_back(1.0);
  out.rates.push_back(rates.back());

  for (const RateFunction& q : out.rates) out.gaps.push_back(rw_gap(q));
  for (std::size_t m = 0; m < out.rates.size(); ++m) {
    require(std::abs(out.gaps[m] - target) <= tol, ErrorCode::kNotConverged,
            "equalized gap at k = " + std::to_string(m + 2) + " misses the target");
    for (const PairRate& p : out.rates[m].pairs()) {
      require(p.rate <= rates[m].rate(p.i, p.j), ErrorCode::kNotConverged,
              "equalized rates exceed the input at k = " + std::to_string(m + 2));
    }
  }
  require(sequence_is_increasing(out.rates), ErrorCode::kNotConverged,
          "equalized sequence is not increasing");
  require(out.rates.back() == rates.back(), ErrorCode::kNotConverged,
          "equalized sequence must end with the input's last element");
  return out;
}

CorollaryReport verify_corollary(std::span<const RateFunction> rates, double tol,
                                 const SpectralOptions& ip_options) {
  EqualizedSequence eq = build_equalized_sequence(rates, tol);
  CorollaryReport r;
  r.n = rates.back().size();
  r.gap_rw = eq.input_gaps.back();
  SpectralOptions opts = ip_options;
  opts.want_vector = false;
  r.min_ip = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < rates.size(); ++m) {
    const double g = ip_gap(rates[m], opts).gap;
    r.ip_gaps.push_back(g);
    if (g < r.min_ip) {
      r.min_ip = g;
      r.argmin_ip = m + 2;
    }
  }
  r.gap_ip = r.ip_gaps.back();
  r.aldous_residual = std::abs(r.gap_ip - r.gap_rw);
  r.min_residual = std::abs(r.min_ip - r.gap_ip);
  const double scale = tol * std::max(1.0, r.gap_rw);
  r.holds = r.aldous_residual <= scale && r.min_residual <= scale;
  return r;
}

void fill_local_minima(std::vector<SequenceRow>& rows) {
  double running = std::numeric_limits<double>::infinity();
  std::size_t k_of_n = 0;
  for (SequenceRow& row : rows) {
    running = std::min(running, row.gap_rw);
    row.running_min = running;
    row.is_local_min = relative_equal(row.gap_rw, running, kLocalMinRelTol);
    // When the running minimum is unchanged, so is the last index attaining it.
    if (row.is_local_min) k_of_n = row.size;
    row.k_of_n = k_of_n;
  }
}

std::optional<std::size_t> next_local_minimum(const SequenceReport& report, std::size_t k) {
  for (const SequenceRow& row : report.rows) {
    if (row.size >= k && row.is_local_min) return row.size;
  }
  return std::nullopt;
}

SequenceReport ratio_table(int d, int n_max, int ip_cap, const RatioTableOptions& options) {
  require(d >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(n_max >= 2, ErrorCode::kInvalidArgument, "ratio tables need n_max >= 2");
  require(ip_cap >= 0 && ip_cap <= kMaxMatrixFreeIpSites, ErrorCode::kResourceLimit,
          "ip_cap must lie in [0, 9]");
  require(options.jobs >= 1, ErrorCode::kInvalidArgument, "jobs must be >= 1");
  SequenceReport report;
  report.d = d;
  report.n_max = n_max;
  report.ip_cap = ip_cap;
  report.asymptote_constant = std::numbers::pi * std::numbers::pi;
  report.exponent = 2.0 / d;

  const VertexSet order = traceable_order(d, n_max);
  const std::size_t count = order.size();
  report.rows.resize(count - 1);
  parallel_for(count - 1, options.jobs, [&](std::size_t idx) {
    SequenceRow& row = report.rows[idx];
    row.size = idx + 2;
    int side = 1;
    while (ipow(side + 1, d) <= row.size) ++side;
    row.side = side;
    const RateFunction q = induced_rates(order.prefix(row.size));
    row.gap_rw = rw_gap(q, options.spectral);
    if (row.size <= static_cast<std::size_t>(ip_cap)) {
      SpectralOptions opts = options.spectral;
      opts.want_vector = false;
      SpectralResult ip = ip_gap(q, opts);
      row.gap_ip = ip.gap;
      row.ip_method = ip.method;
    }
    GapBoundReport bounds = sandwich(d, side, row.size);
    row.lower = bounds.lower;
    row.upper = bounds.upper;
    row.ratio = row.gap_rw * std::pow(static_cast<double>(row.size), report.exponent) /
                report.asymptote_constant;
  });
  fill_local_minima(report.rows);
  return report;
}

std::vector<AldousRecord> aldous_exhaustive_z2(int max_vertices, double tol, int jobs) {
  require(max_vertices >= 2 && max_vertices <= kMaxDenseIpSites, ErrorCode::kResourceLimit,
          "exhaustive Aldous checks need 2 <= max_vertices <= 7");
  std::vector<VertexSet> sets = enumerate_connected_sets(2, max_vertices);
  std::erase_if(sets, [](const VertexSet& v) { return v.size() < 2; });
  std::vector<std::optional<AldousVerdict>> verdicts(sets.size());
  parallel_for(sets.size(), jobs, [&](std::size_t i) {
    verdicts[i] = is_aldous(induced_rates(sets[i]), tol);
  });
  std::vector<AldousRecord> out;
  out.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) out.push_back({sets[i], *verdicts[i]});
  return out;
}

}  // namespace aldous_lab
