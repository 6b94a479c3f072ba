#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace aldous_lab {

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct LanczosOptions {
  double tol = 1e-9;       // absolute Ritz residual
  int max_iter = 500;      // operator applications
  int basis_size = 64;     // Krylov basis size before a thick restart
  double stability = 1e-12;
  int stable_steps = 3;
  std::uint64_t seed = 0x5eed;
  bool deflate_constants = true;  // work in the orthogonal complement of 1
};

struct LanczosResult {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  int iterations = 0;
};

/// Largest eigenpair of a symmetric operator by thick-restart Lanczos with
/// full (twice-iterated Gram-Schmidt) reorthogonalization. With
/// deflate_constants the operator is restricted to mean-zero vectors by
/// subtracting the mean after every application. Throws kNotConverged if the
/// budget runs out.
LanczosResult largest_eigenpair(std::size_t dimension, const LinearOperator& op,
                                const LanczosOptions& options);

}  // namespace aldous_lab
