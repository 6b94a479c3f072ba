#pragma once

// Spectral gaps gamma(G) = min { <f,-Gf> : ||f|| = 1, <f,1> = 0 } of the
// generators in generator.hpp, full spectra, the RW-in-IP spectrum
// containment check, and the closed-form eigensystem of -Omega^RW(R^d_n).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "core/generator.hpp"
#include "core/lattice.hpp"

namespace aldous_lab {

enum class SolverMethod { kAuto, kDense, kLanczos };

std::string_view to_string(SolverMethod method);

/// Auto mode solves densely up to this many states and uses Lanczos above.
inline constexpr std::size_t kDenseGapLimit = 4096;
inline constexpr std::size_t kFullSpectrumLimit = 5040;

struct SpectralOptions {
  double tol = 1e-9;
  int max_iter = 500;
  SolverMethod method = SolverMethod::kAuto;
  bool want_vector = true;
  int basis_size = 64;
  std::uint64_t seed = 0x5eed;
};

struct SpectralResult {
  double gap = 0.0;
  SolverMethod method = SolverMethod::kDense;
  std::optional<std::vector<double>> eigenvector;
  /// ||(-G)v - gap v|| for the returned vector; without a vector, a backward
  /// error bound of the dense eigenvalue computation.
  double residual = 0.0;
  int iterations = 0;
};

SpectralResult spectral_gap(const SymmetricGenerator& generator,
                            const SpectralOptions& options = {});

/// All eigenvalues of -G in ascending order (dense, at most 5040 states).
std::vector<double> full_spectrum(const SymmetricGenerator& generator);

struct ContainmentReport {
  bool contained = false;
  std::vector<double> rw;  // spectrum of -Omega^RW, ascending
  std::vector<double> ip;  // spectrum of -Omega^IP, ascending
  /// Largest distance from an RW eigenvalue to its matched IP eigenvalue
  /// (infinity when some eigenvalue has no match).
  double worst_mismatch = 0.0;
};

/// Greedy matching of the sorted RW spectrum into the sorted IP spectrum,
/// as multisets, up to tol. N <= 7.
ContainmentReport containment_report(const RateFunction& rates, double tol);
bool spectrum_containment(const RateFunction& rates, double tol);

/// Multiset containment of sorted `inner` in sorted `outer` up to tol; returns
/// the worst matched distance or infinity when matching fails.
double sorted_multiset_mismatch(const std::vector<double>& inner,
                                const std::vector<double>& outer, double tol);

/// 4 sin^2(pi / (2n)), the RW gap of R^d_n for every d.
double hypercube_gap_closed_form(int d, int n);

struct EigenIndex {
  std::vector<int> k;  // each in [0, n-1]
};

struct Eigenpair {
  double eigenvalue = 0.0;            // eigenvalue of Omega^RW (<= 0)
  std::vector<double> eigenvector;    // over make_hypercube({d, n}) order
};

/// Product cosine eigenvector of Omega^RW(R^d_n):
/// f(x; k) = prod_i f1(x_i; k_i), f1(x; 0) = n^{-1/2},
/// f1(x; m) = (2/n)^{1/2} cos(pi m (x - 1/2) / n), with eigenvalue
/// -sum_i 4 sin^2(pi k_i / (2n)).
Eigenpair hypercube_eigenpair(int d, int n, const EigenIndex& index);

}  // namespace aldous_lab
