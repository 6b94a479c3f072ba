#pragma once

// Discrete trace inequalities on lattice sets and the gap comparison bounds
// between a traceable set and the hypercube it grows from.

#include <span>

#include "core/lattice.hpp"

namespace aldous_lab {

/// Boundary mass `lhs` against the bound `rhs = a/n ||f||^2 + b n <f,-Omega f>`.
struct TraceReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double a = 0.0;
  double b = 0.0;
};

/// f(0..n) on the path 1..n+1: |f(n+1)|^2 <= (2/n) sum_{k<=n} |f(k)|^2
/// + 2n sum_{k<=n} |f(k+1) - f(k)|^2.
TraceReport trace_1d(std::span<const double> f, int n);

/// Boundary mass over V \ R^d_n against (2d/n) ||f||^2 + 2n <f,-Omega^RW(V) f>.
/// Requires V to be R^d_n-traceable.
TraceReport trace_nd(const VertexSet& vertices, int d, int n, std::span<const double> f);

/// The same evaluation without the traceability precondition (V must still lie
/// in R^d_{n+1}); used for negative controls.
TraceReport trace_nd_unchecked(const VertexSet& vertices, int d, int n,
                               std::span<const double> f);

/// A bound value; vacuous when it carries no information (a nonpositive lower
/// bound, or an upper bound whose prefactor is nonpositive). The raw value is
/// kept either way.
struct Bound {
  double value = 0.0;
  bool vacuous = false;
};

/// Lower bound on gamma(V') for R^d_n <= V <= V' <= R^d_{n+1}, V' traceable:
/// (1 - 2d/n - |V'\V|/|V|) gamma(V) / (1 + 2n gamma(V)).
Bound gap_lower_bound(int d, int n, std::size_t size_v, std::size_t size_v_prime, double gap_v);

/// Upper bound on gamma(V_N) for R^d_n <= V_N <= R^d_{n+1}:
/// gamma(R^d_{n+1}) / (1 - (2d + 2 pi^2 + 2^d - 1)/n).
Bound gap_upper_bound(int d, int n, std::size_t size_v, double gap_next);

struct GapBoundReport {
  Bound lower;
  Bound upper;
  int d = 0;
  int n = 0;
  std::size_t size = 0;       // N = |V_N|
  double gap_cube = 0.0;      // gamma(R^d_n)
  double gap_next_cube = 0.0; // gamma(R^d_{n+1})
};

/// Both bounds for any traceable V_N with n^d <= N <= (n+1)^d, using only the
/// crude count |V_N \ R^d_n| n^{-d} <= (2^d - 1)/n and gamma(R^d_n) <= pi^2/n^2.
GapBoundReport sandwich(int d, int n, std::size_t size);

}  // namespace aldous_lab
