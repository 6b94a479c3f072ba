#include "core/trace_bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/spectral.hpp"

namespace aldous_lab {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

}  // namespace

TraceReport trace_1d(std::span<const double> f, int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "trace_1d needs n >= 1");
  require(f.size() == static_cast<std::size_t>(n) + 1, ErrorCode::kInvalidArgument,
          "trace_1d needs n+1 values");
  double mass = 0.0, energy = 0.0;
  for (int k = 0; k < n; ++k) {
    mass += f[k] * f[k];
    energy += (f[k + 1] - f[k]) * (f[k + 1] - f[k]);
  }
  TraceReport r;
  r.a = 2.0;
  r.b = 2.0;
  r.lhs = f[n] * f[n];
  r.rhs = (2.0 / n) * mass + 2.0 * n * energy;
  r.slack = r.rhs - r.lhs;
  return r;
}

TraceReport trace_nd_unchecked(const VertexSet& vertices, int d, int n,
                               std::span<const double> f) {
  require(vertices.dim() == d, ErrorCode::kInvalidArgument, "vertex set dimension differs from d");
  require(n >= 1, ErrorCode::kInvalidArgument, "trace_nd needs n >= 1");
  require(f.size() == vertices.size(), ErrorCode::kInvalidArgument,
          "function length must equal |V|");
  double boundary = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    mass += f[i] * f[i];
    if (face_of(vertices[i], n) != 0) boundary += f[i] * f[i];
  }
  double energy = 0.0;
  if (vertices.size() >= 2) {
    const RateFunction rates = induced_rates(vertices);
    for (const PairRate& p : rates.pairs()) {
      energy += p.rate * (f[p.i] - f[p.j]) * (f[p.i] - f[p.j]);
    }
  }
  TraceReport r;
  r.a = 2.0 * d;
  r.b = 2.0;
  r.lhs = boundary;
  r.rhs = (2.0 * d / n) * mass + 2.0 * n * energy;
  r.slack = r.rhs - r.lhs;
  return r;
}

TraceReport trace_nd(const VertexSet& vertices, int d, int n, std::span<const double> f) {
  require(is_traceable(vertices, d, n), ErrorCode::kPrecondition,
          "trace_nd requires an R^d_n-traceable vertex set");
  return trace_nd_unchecked(vertices, d, n, f);
}

Bound gap_lower_bound(int d, int n, std::size_t size_v, std::size_t size_v_prime, double gap_v) {
  require(d >= 1 && n >= 1, ErrorCode::kInvalidArgument, "need d >= 1 and n >= 1");
  require(size_v >= 1 && size_v_prime >= size_v, ErrorCode::kInvalidArgument,
          "need |V'| >= |V| >= 1");
  require(gap_v >= 0.0, ErrorCode::kInvalidArgument, "gap must be nonnegative");
  const double extra = static_cast<double>(size_v_prime - size_v) / static_cast<double>(size_v);
  const double value = (1.0 - 2.0 * d / n - extra) * gap_v / (1.0 + 2.0 * n * gap_v);
  return {value, value <= 0.0};
}

Bound gap_upper_bound(int d, int n, std::size_t /*size_v*/, double gap_next) {
  require(d >= 1 && n >= 1, ErrorCode::kInvalidArgument, "need d >= 1 and n >= 1");
  require(gap_next >= 0.0, ErrorCode::kInvalidArgument, "gap must be nonnegative");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double prefactor =
      1.0 - (2.0 * d + 2.0 * pi2 + (static_cast<double>(ipow(2, d)) - 1.0)) / n;
  return {gap_next / prefactor, prefactor <= 0.0};
}

GapBoundReport sandwich(int d, int n, std::size_t size) {
  require(d >= 1 && n >= 1, ErrorCode::kInvalidArgument, "need d >= 1 and n >= 1");
  const std::size_t lo = ipow(n, d), hi = ipow(n + 1, d);
  require(size >= lo && size <= hi, ErrorCode::kInvalidArgument,
          "N = " + std::to_string(size) + " outside [n^d, (n+1)^d]");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  GapBoundReport r;
  r.d = d;
  r.n = n;
  r.size = size;
  r.gap_cube = n >= 2 ? hypercube_gap_closed_form(d, n) : 0.0;
  r.gap_next_cube = hypercube_gap_closed_form(d, n + 1);
  const double numerator = 1.0 - (2.0 * d + static_cast<double>(ipow(2, d)) - 1.0) / n;
  const double lower = numerator / (1.0 + 2.0 * pi2 / n) * r.gap_cube;
  r.lower = {lower, lower <= 0.0};
  r.upper = gap_upper_bound(d, n, size, r.gap_next_cube);
  return r;
}

}  // namespace aldous_lab
