#pragma once

// Reversible Markov generators of the random walk (RW, on N vertices) and the
// interchange process (IP, on the N! permutations), the general
// permutation-rate generators Delta_N(r) and its hat version, and the lift
// operators T_{N,i} that intertwine the two.

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core/lattice.hpp"
#include "core/permutation.hpp"

namespace aldous_lab {

enum class StateSpace { kVertices, kPermutations };
enum class Storage { kDense, kMatrixFree };

/// Full-matrix storage is used up to this many states unless dense storage is
/// requested explicitly.
inline constexpr std::size_t kDenseCap = 720;
inline constexpr int kMaxDenseIpSites = 7;
inline constexpr int kMaxMatrixFreeIpSites = 9;

/// Optional on-disk cache of transposition rank tables for the matrix-free IP.
class IndexTableCache {
 public:
  explicit IndexTableCache(std::filesystem::path directory);

  std::vector<std::uint32_t> table(int n, int i, int j) const;

 private:
  std::filesystem::path directory_;
};

class SymmetricGenerator {
 public:
  static SymmetricGenerator dense(Eigen::MatrixXd matrix, StateSpace space, int sites);
  /// Matrix-free generator sum_{i<j} q({i,j}) (P_{ij} - I), where P_{ij} is
  /// the index action of the transposition on the state space.
  static SymmetricGenerator matrix_free(StateSpace space, const RateFunction& rates,
                                        const IndexTableCache* cache = nullptr);

  std::size_t dimension() const { return dimension_; }
  StateSpace state_space() const { return space_; }
  int sites() const { return sites_; }
  Storage storage() const { return matrix_ ? Storage::kDense : Storage::kMatrixFree; }
  bool is_dense() const { return matrix_ != nullptr; }

  /// Throws unless dense.
  const Eigen::MatrixXd& matrix() const;
  /// Transposition actions; empty for generators built from a dense matrix.
  const std::vector<PairRate>& actions() const { return actions_; }

  /// out = G f.
  void apply(std::span<const double> f, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> f) const;

  /// Dense copy of the matrix; throws above `max_dimension` states.
  Eigen::MatrixXd to_dense(std::size_t max_dimension = 5040) const;

  /// max_x -G(x,x); twice this bounds the spectrum of -G (Gershgorin).
  double max_exit_rate() const { return max_exit_rate_; }

  SymmetricGenerator scaled(double factor) const;

 private:
  SymmetricGenerator() = default;

  std::size_t dimension_ = 0;
  StateSpace space_ = StateSpace::kVertices;
  int sites_ = 0;
  double max_exit_rate_ = 0.0;
  std::shared_ptr<const Eigen::MatrixXd> matrix_;
  std::vector<PairRate> actions_;
  // One rank table per action (IP only).
  std::shared_ptr<const std::vector<std::vector<std::uint32_t>>> tables_;
};

SymmetricGenerator rw_generator(const RateFunction& rates, Storage storage = Storage::kDense);

/// Dense storage requires N <= 7, matrix-free N <= 9.
SymmetricGenerator ip_generator(const RateFunction& rates, Storage storage,
                                const IndexTableCache* cache = nullptr);

/// Finitely supported nonnegative rates on S_N.
using PermutationRates = std::vector<std::pair<Permutation, double>>;

/// Delta_N(r) = sum_pi r(pi) (-I + U(pi)/2 + U(pi^{-1})/2) on the N vertices,
/// with U(pi) f(i) = f(pi^{-1}(i)).
SymmetricGenerator delta_general(const PermutationRates& rates, int n);
/// The same combination in the left regular representation on S_N (N <= 7).
SymmetricGenerator delta_hat_general(const PermutationRates& rates, int n);

/// q({i,j}) = [(T_i)^* r(j) + (T_j)^* r(i)] / 2, the transposition rates
/// whose RW generator equals Delta_N(r).
RateFunction reduce_to_pair_rates(const PermutationRates& rates, int n);

struct LiftOperator {
  int size = 0;
  int slot = 0;  // 0-based
};

/// (T f)(rank(pi)) = f(pi(slot)).
std::vector<double> lift_apply(const LiftOperator& lift, std::span<const double> f);

using LiftFunction = std::function<std::vector<double>(std::span<const double>)>;

/// max over random f of ||IP(q) L f - L RW(q) f|| / ||f||, for any candidate
/// lift L. Uses dense IP storage up to 720 states, matrix-free above.
double intertwining_defect(const RateFunction& rates, const LiftFunction& lift, int trials,
                           std::uint64_t seed);

bool verify_intertwining(const RateFunction& rates, int slot, int trials, double tol,
                         std::uint64_t seed = 1);

/// G 1 = 0, nonnegative off-diagonal entries and symmetry, all within
/// tol * max(1, max exit rate). Matrix-free generators are probed with the
/// constant vector, basis vectors and random vectors.
bool is_markov_generator(const SymmetricGenerator& generator, double tol);

}  // namespace aldous_lab
