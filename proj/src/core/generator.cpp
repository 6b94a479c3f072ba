#include "core/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string>

#include "core/error.hpp"

namespace aldous_lab {

IndexTableCache::IndexTableCache(std::filesystem::path directory)
    : directory_(std::move(directory)) {}

std::vector<std::uint32_t> IndexTableCache::table(int n, int i, int j) const {
  const std::uint64_t count = factorial(n);
  auto path = directory_ / ("ip_n" + std::to_string(n) + "_" + std::to_string(i) + "_" +
                            std::to_string(j) + ".u32");
  std::error_code ec;
  if (std::filesystem::file_size(path, ec) == count * sizeof(std::uint32_t) && !ec) {
    std::vector<std::uint32_t> table(count);
    std::ifstream in(path, std::ios::binary);
    in.read(reinterpret_cast<char*>(table.data()),
            static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
    if (in) return table;
  }
  std::vector<std::uint32_t> table = transposition_rank_table(n, i, j);
  std::filesystem::create_directories(directory_, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) {
    out.write(reinterpret_cast<const char*>(table.data()),
              static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
  }
  return table;
}

SymmetricGenerator SymmetricGenerator::dense(Eigen::MatrixXd matrix, StateSpace space,
                                             int sites) {
  require(matrix.rows() == matrix.cols() && matrix.rows() > 0, ErrorCode::kInvalidArgument,
          "generator matrix must be square and nonempty");
  SymmetricGenerator g;
  g.dimension_ = static_cast<std::size_t>(matrix.rows());
  g.space_ = space;
  g.sites_ = sites;
  g.max_exit_rate_ = std::max(0.0, (-matrix.diagonal()).maxCoeff());
  g.matrix_ = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
  return g;
}

SymmetricGenerator SymmetricGenerator::matrix_free(StateSpace space, const RateFunction& rates,
                                                   const IndexTableCache* cache) {
  require(rates.size() >= 2, ErrorCode::kInvalidArgument, "generators need N >= 2");
  SymmetricGenerator g;
  g.space_ = space;
  g.sites_ = static_cast<int>(rates.size());
  g.actions_ = rates.pairs();
  if (space == StateSpace::kVertices) {
    g.dimension_ = rates.size();
    g.max_exit_rate_ = rates.max_total_rate_at_vertex();
    return g;
  }
  require(g.sites_ <= kMaxMatrixFreeIpSites, ErrorCode::kResourceLimit,
          "matrix-free interchange generators are capped at N = 9");
  g.dimension_ = factorial(g.sites_);
  g.max_exit_rate_ = rates.total_rate();
  auto tables = std::make_shared<std::vector<std::vector<std::uint32_t>>>();
  tables->reserve(g.actions_.size());
  for (const PairRate& p : g.actions_) {
    int i = static_cast<int>(p.i), j = static_cast<int>(p.j);
    tables->push_back(cache ? cache->table(g.sites_, i, j)
                            : transposition_rank_table(g.sites_, i, j));
  }
  g.tables_ = std::move(tables);
  return g;
}

const Eigen::MatrixXd& SymmetricGenerator::matrix() const {
  require(matrix_ != nullptr, ErrorCode::kPrecondition, "generator is matrix-free");
  return *matrix_;
}

void SymmetricGenerator::apply(std::span<const double> f, std::span<double> out) const {
  require(f.size() == dimension_ && out.size() == dimension_, ErrorCode::kInvalidArgument,
          "vector length does not match the generator dimension");
  if (matrix_) {
    Eigen::Map<const Eigen::VectorXd> in(f.data(), static_cast<Eigen::Index>(f.size()));
    Eigen::Map<Eigen::VectorXd> res(out.data(), static_cast<Eigen::Index>(out.size()));
    res.noalias() = (*matrix_) * in;
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  if (space_ == StateSpace::kVertices) {
    for (const PairRate& p : actions_) {
      double flow = p.rate * (f[p.j] - f[p.i]);
      out[p.i] += flow;
      out[p.j] -= flow;
    }
    return;
  }
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    const double rate = actions_[a].rate;
    const std::uint32_t* table = (*tables_)[a].data();
    for (std::size_t s = 0; s < dimension_; ++s) out[s] += rate * (f[table[s]] - f[s]);
  }
}

std::vector<double> SymmetricGenerator::apply(std::span<const double> f) const {
  std::vector<double> out(dimension_);
  apply(f, out);
  return out;
}

Eigen::MatrixXd SymmetricGenerator::to_dense(std::size_t max_dimension) const {
  require(dimension_ <= max_dimension, ErrorCode::kResourceLimit,
          "dense materialization capped at " + std::to_string(max_dimension) + " states");
  if (matrix_) return *matrix_;
  const auto dim = static_cast<Eigen::Index>(dimension_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  if (space_ == StateSpace::kVertices) {
    for (const PairRate& p : actions_) {
      auto i = static_cast<Eigen::Index>(p.i), j = static_cast<Eigen::Index>(p.j);
      m(i, j) += p.rate;
      m(j, i) += p.rate;
      m(i, i) -= p.rate;
      m(j, j) -= p.rate;
    }
    return m;
  }
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    const auto& table = (*tables_)[a];
    for (Eigen::Index s = 0; s < dim; ++s) {
      m(s, table[s]) += actions_[a].rate;
      m(s, s) -= actions_[a].rate;
    }
  }
  return m;
}

SymmetricGenerator SymmetricGenerator::scaled(double factor) const {
  require(factor >= 0.0, ErrorCode::kInvalidArgument, "scale factor must be nonnegative");
  SymmetricGenerator g = *this;
  g.max_exit_rate_ *= factor;
  if (matrix_) g.matrix_ = std::make_shared<const Eigen::MatrixXd>(factor * (*matrix_));
  for (PairRate& p : g.actions_) p.rate *= factor;
  return g;
}

SymmetricGenerator rw_generator(const RateFunction& rates, Storage storage) {
  require(rates.size() >= 2, ErrorCode::kInvalidArgument, "RW generator needs N >= 2");
  SymmetricGenerator free = SymmetricGenerator::matrix_free(StateSpace::kVertices, rates);
  if (storage == Storage::kMatrixFree) return free;
  return SymmetricGenerator::dense(free.to_dense(rates.size()), StateSpace::kVertices,
                                   static_cast<int>(rates.size()));
}

SymmetricGenerator ip_generator(const RateFunction& rates, Storage storage,
                                const IndexTableCache* cache) {
  require(rates.size() >= 2, ErrorCode::kInvalidArgument, "IP generator needs N >= 2");
  const int n = static_cast<int>(rates.size());
  if (storage == Storage::kDense) {
    require(n <= kMaxDenseIpSites, ErrorCode::kResourceLimit,
            "dense interchange generators are capped at N = 7");
  } else {
    require(n <= kMaxMatrixFreeIpSites, ErrorCode::kResourceLimit,
            "matrix-free interchange generators are capped at N = 9");
  }
  SymmetricGenerator free = SymmetricGenerator::matrix_free(StateSpace::kPermutations, rates, cache);
  if (storage == Storage::kMatrixFree) return free;
  return SymmetricGenerator::dense(free.to_dense(), StateSpace::kPermutations, n);
}

namespace {

void check_permutation_rates(const PermutationRates& rates, int n) {
  require(n >= 2, ErrorCode::kInvalidArgument, "permutation-rate generators need N >= 2");
  for (const auto& [pi, r] : rates) {
    require(pi.size() == n, ErrorCode::kInvalidArgument, "permutation size differs from N");
    require(std::isfinite(r) && r >= 0.0, ErrorCode::kInvalidArgument,
            "permutation rates must be finite and nonnegative");
  }
}

}  // namespace

SymmetricGenerator delta_general(const PermutationRates& rates, int n) {
  check_permutation_rates(rates, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [pi, r] : rates) {
    for (int b = 0; b < n; ++b) {
      // U(pi) has a 1 at (pi(b), b); U(pi^{-1}) has a 1 at (b, pi(b)).
      m(pi[b], b) += 0.5 * r;
      m(b, pi[b]) += 0.5 * r;
      m(b, b) -= r;
    }
  }
  return SymmetricGenerator::dense(std::move(m), StateSpace::kVertices, n);
}

SymmetricGenerator delta_hat_general(const PermutationRates& rates, int n) {
  check_permutation_rates(rates, n);
  require(n <= kMaxDenseIpSites, ErrorCode::kResourceLimit,
          "dense permutation-space generators are capped at N = 7");
  const auto dim = static_cast<Eigen::Index>(factorial(n));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [pi, r] : rates) {
    Permutation inv = invert(pi);
    for (Eigen::Index s = 0; s < dim; ++s) {
      Permutation p = unrank({static_cast<std::uint64_t>(s), n});
      // V(pi) f(p) = f(pi^{-1} p) and V(pi^{-1}) f(p) = f(pi p).
      auto left = static_cast<Eigen::Index>(rank(compose(inv, p)).value);
      auto right = static_cast<Eigen::Index>(rank(compose(pi, p)).value);
      m(s, left) += 0.5 * r;
      m(s, right) += 0.5 * r;
      m(s, s) -= r;
    }
  }
  return SymmetricGenerator::dense(std::move(m), StateSpace::kPermutations, n);
}

RateFunction reduce_to_pair_rates(const PermutationRates& rates, int n) {
  check_permutation_rates(rates, n);
  std::vector<double> weight(static_cast<std::size_t>(n) * n, 0.0);
  // (T_i)^* r(j) = sum of r(pi) over pi with pi(i) = j.
  for (const auto& [pi, r] : rates) {
    for (int i = 0; i < n; ++i) weight[static_cast<std::size_t>(i) * n + pi[i]] += r;
  }
  RateFunction q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double value = 0.5 * (weight[static_cast<std::size_t>(i) * n + j] +
                            weight[static_cast<std::size_t>(j) * n + i]);
      if (value > 0.0) q.set(i, j, value);
    }
  }
  return q;
}

std::vector<double> lift_apply(const LiftOperator& lift, std::span<const double> f) {
  require(lift.size >= 1 && lift.size <= kMaxRankedSize, ErrorCode::kResourceLimit,
          "lift size out of range");
  require(lift.slot >= 0 && lift.slot < lift.size, ErrorCode::kInvalidArgument,
          "lift slot out of range");
  require(f.size() == static_cast<std::size_t>(lift.size), ErrorCode::kInvalidArgument,
          "lift input length must equal N");
  const std::uint64_t count = factorial(lift.size);
  std::vector<double> out(count);
  std::vector<int> p(lift.size);
  std::iota(p.begin(), p.end(), 0);
  for (std::uint64_t r = 0; r < count; ++r) {
    out[r] = f[p[lift.slot]];
    std::next_permutation(p.begin(), p.end());
  }
  return out;
}

double intertwining_defect(const RateFunction& rates, const LiftFunction& lift, int trials,
                           std::uint64_t seed) {
  const int n = static_cast<int>(rates.size());
  SymmetricGenerator rw = rw_generator(rates);
  SymmetricGenerator ip =
      ip_generator(rates, factorial(n) <= kDenseCap ? Storage::kDense : Storage::kMatrixFree);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> f(n);
    for (double& v : f) v = normal(rng);
    std::vector<double> lhs = ip.apply(lift(f));
    std::vector<double> rhs = lift(rw.apply(f));
    require(lhs.size() == rhs.size(), ErrorCode::kInvalidArgument,
            "lift output length must equal N!");
    double diff = 0.0, norm = 0.0;
    for (std::size_t s = 0; s < lhs.size(); ++s) diff += (lhs[s] - rhs[s]) * (lhs[s] - rhs[s]);
    for (double v : f) norm += v * v;
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300));
  }
  return worst;
}

bool verify_intertwining(const RateFunction& rates, int slot, int trials, double tol,
                         std::uint64_t seed) {
  const int n = static_cast<int>(rates.size());
  require(n <= kMaxDenseIpSites, ErrorCode::kResourceLimit,
          "intertwining verification is capped at N = 7");
  LiftOperator lift{n, slot};
  auto apply_lift = [lift](std::span<const double> f) { return lift_apply(lift, f); };
  return intertwining_defect(rates, apply_lift, trials, seed) <= tol;
}

bool is_markov_generator(const SymmetricGenerator& generator, double tol) {
  const double scaled_tol = tol * std::max(1.0, generator.max_exit_rate());
  const std::size_t dim = generator.dimension();
  if (generator.is_dense()) {
    const Eigen::MatrixXd& m = generator.matrix();
    if ((m.rowwise().sum().cwiseAbs().array() > scaled_tol).any()) return false;
    if (((m - m.transpose()).cwiseAbs().array() > scaled_tol).any()) return false;
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      for (Eigen::Index b = 0; b < m.cols(); ++b) {
        if (a != b && m(a, b) < -scaled_tol) return false;
      }
    }
    return true;
  }
  std::vector<double> ones(dim, 1.0);
  for (double v : generator.apply(ones)) {
    if (std::abs(v) > scaled_tol) return false;
  }
  // Off-diagonal signs on a spread of basis vectors.
  const std::size_t probes = std::min<std::size_t>(dim, 16);
  std::vector<double> basis(dim, 0.0);
  for (std::size_t t = 0; t < probes; ++t) {
    std::size_t x = t * (dim / probes);
    basis[x] = 1.0;
    std::vector<double> column = generator.apply(basis);
    basis[x] = 0.0;
    for (std::size_t y = 0; y < dim; ++y) {
      if (y != x && column[y] < -scaled_tol) return false;
    }
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<double> u(dim), v(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    u[s] = normal(rng);
    v[s] = normal(rng);
  }
  std::vector<double> gu = generator.apply(u), gv = generator.apply(v);
  double uv = std::inner_product(u.begin(), u.end(), gv.begin(), 0.0);
  double vu = std::inner_product(v.begin(), v.end(), gu.begin(), 0.0);
  return std::abs(uv - vu) <= scaled_tol * static_cast<double>(dim);
}

}  // namespace aldous_lab
