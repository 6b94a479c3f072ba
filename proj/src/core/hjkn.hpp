#pragma once

// Interchange-vs-random-walk gap comparisons along increasing rate sequences:
// Aldous-condition checks, the interpolated rates q~_{k,t} and the search for
// t_k that equalizes RW gaps, the local-minimum bookkeeping of a gap sequence,
// and the ratio tables along the traceable hypercube sequence.

#include <optional>
#include <span>
#include <vector>

#include "core/lattice.hpp"
#include "core/spectral.hpp"
#include "core/trace_bounds.hpp"

namespace aldous_lab {

inline constexpr double kAldousDenseTol = 1e-8;
inline constexpr double kAldousLanczosTol = 1e-6;
/// Relative tolerance for "gap equals the running minimum".
inline constexpr double kLocalMinRelTol = 1e-12;
inline constexpr int kBisectionSteps = 60;

/// RW gap of the rate function: dense eigenvalues up to 4096 vertices,
/// matrix-free Lanczos above.
double rw_gap(const RateFunction& rates, const SpectralOptions& options = {});

/// IP gap: dense up to 720 states (N <= 6), matrix-free Lanczos for N = 7..9
/// unless options.method forces a solver.
SpectralResult ip_gap(const RateFunction& rates, const SpectralOptions& options = {});

struct AldousVerdict {
  double gap_rw = 0.0;
  double gap_ip = 0.0;
  double abs_diff = 0.0;
  double tol = 0.0;
  bool holds = false;       // abs_diff <= tol * max(1, gap_rw)
  bool one_sided = false;   // gap_ip <= gap_rw + tol
  SolverMethod ip_method = SolverMethod::kDense;
};

AldousVerdict is_aldous(const RateFunction& rates, double tol,
                        const SpectralOptions& ip_options = {});

/// q~_{k,t}: pairs containing the last vertex (k = |q| vertices) scaled by t.
RateFunction interpolate_rate(const RateFunction& rates, int k, double t);

/// t in [0,1] with |gamma^RW(q~_{k,t}) - target| <= tol, by bisection.
double find_tk(const RateFunction& rates, int k, double target_gap, double tol);

struct EqualizedSequence {
  std::vector<RateFunction> rates;  // q~_2 .. q~_N
  std::vector<double> t;            // t_2 .. t_{N-1}, then 1 for q~_N = q_N
  std::vector<double> gaps;         // RW gaps of the q~_k
  std::vector<double> input_gaps;   // RW gaps of the q_k
};

/// Requires an increasing sequence of connected rate functions whose last RW
/// gap is the minimum; throws kHypothesisViolation naming the offending k
/// otherwise. All output properties are checked before returning.
EqualizedSequence build_equalized_sequence(std::span<const RateFunction> rates, double tol);

struct CorollaryReport {
  std::size_t n = 0;
  double gap_rw = 0.0;        // gamma^RW_N(q_N)
  double gap_ip = 0.0;        // gamma^IP_N(q_N)
  double min_ip = 0.0;        // min_k gamma^IP_k(q_k)
  std::size_t argmin_ip = 0;  // k attaining min_ip
  std::vector<double> ip_gaps;
  double aldous_residual = 0.0;  // |gap_ip - gap_rw|
  double min_residual = 0.0;     // |min_ip - gap_ip|
  bool holds = false;
};

CorollaryReport verify_corollary(std::span<const RateFunction> rates, double tol,
                                 const SpectralOptions& ip_options = {});

struct SequenceRow {
  std::size_t size = 0;  // N
  int side = 0;          // n with n^d <= N < (n+1)^d
  double gap_rw = 0.0;
  std::optional<double> gap_ip;
  double running_min = 0.0;
  bool is_local_min = false;
  std::size_t k_of_n = 0;
  Bound lower;
  Bound upper;
  double ratio = 0.0;  // gap_rw N^{2/d} / pi^2
  std::optional<SolverMethod> ip_method;
};

struct SequenceReport {
  int d = 1;
  int n_max = 2;
  int ip_cap = 0;
  double asymptote_constant = 0.0;  // pi^2
  double exponent = 0.0;            // 2/d
  std::vector<SequenceRow> rows;    // N = 2 .. n_max^d
};

/// Running minimum, local-minimum flags and K(N) over rows with gap_rw set.
void fill_local_minima(std::vector<SequenceRow>& rows);

/// N(k): the first local minimum at or after size k, if any.
std::optional<std::size_t> next_local_minimum(const SequenceReport& report, std::size_t k);

struct RatioTableOptions {
  int jobs = 1;
  SpectralOptions spectral;
};

SequenceReport ratio_table(int d, int n_max, int ip_cap, const RatioTableOptions& options = {});

struct AldousRecord {
  VertexSet vertices;
  AldousVerdict verdict;
};

/// Every connected induced subgraph of Z^2 with 2..max_vertices vertices, up to
/// translation, with its Aldous verdict (dense IP, N <= 6).
std::vector<AldousRecord> aldous_exhaustive_z2(int max_vertices, double tol, int jobs = 1);

}  // namespace aldous_lab
