#include "core/lanczos.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "core/error.hpp"

namespace aldous_lab {

namespace {

void subtract_mean(Eigen::Ref<Eigen::VectorXd> v) { v.array() -= v.mean(); }

}  // namespace

LanczosResult largest_eigenpair(std::size_t dimension, const LinearOperator& op,
                                const LanczosOptions& options) {
  require(dimension >= 1, ErrorCode::kInvalidArgument, "empty operator");
  const auto dim = static_cast<Eigen::Index>(dimension);
  const Eigen::Index space = options.deflate_constants ? dim - 1 : dim;
  require(space >= 1, ErrorCode::kInvalidArgument,
          "the mean-zero subspace of a 1-state operator is empty");
  const Eigen::Index basis = std::min<Eigen::Index>(std::max(options.basis_size, 2), space);
  const Eigen::Index keep = std::max<Eigen::Index>(1, basis / 2);

  auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    op(std::span<const double>(in.data(), dimension), std::span<double>(out.data(), dimension));
    if (options.deflate_constants) subtract_mean(out);
  };

  Eigen::MatrixXd v(dim, basis + 1);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(basis, basis);
  {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd start(dim);
    for (Eigen::Index s = 0; s < dim; ++s) start(s) = normal(rng);
    if (options.deflate_constants) subtract_mean(start);
    v.col(0) = start / start.norm();
  }

  Eigen::VectorXd w(dim);
  Eigen::Index j = 0;  // index of the newest basis vector
  int iterations = 0;
  int stable = 0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  double scale = 0.0;

  while (true) {
    apply(v.col(j), w);
    ++iterations;
    // Orthogonalize against the whole basis, twice.
    Eigen::VectorXd h = v.leftCols(j + 1).transpose() * w;
    w.noalias() -= v.leftCols(j + 1) * h;
    // The constant vector is the top eigenvector of the shifted operator, so
    // rounding along it grows geometrically unless removed at every pass.
    if (options.deflate_constants) subtract_mean(w);
    Eigen::VectorXd h2 = v.leftCols(j + 1).transpose() * w;
    w.noalias() -= v.leftCols(j + 1) * h2;
    if (options.deflate_constants) subtract_mean(w);
    h += h2;
    t.block(0, j, j + 1, 1) = h;
    t.block(j, 0, 1, j + 1) = h.transpose();
    const double beta = w.norm();
    scale = std::max(scale, std::abs(h(j)) + beta);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(t.topLeftCorner(j + 1, j + 1));
    const double theta = ritz.eigenvalues()(j);
    const double estimate = beta * std::abs(ritz.eigenvectors()(j, j));
    if (std::abs(theta - previous) <= options.stability * std::max(1.0, std::abs(theta))) {
      ++stable;
    } else {
      stable = 0;
    }
    previous = theta;

    const bool exhausted = (j + 1 == space) || beta <= 1e-14 * std::max(1.0, scale);
    if (exhausted || (estimate <= options.tol && stable >= options.stable_steps)) {
      Eigen::VectorXd y = v.leftCols(j + 1) * ritz.eigenvectors().col(j);
      if (options.deflate_constants) subtract_mean(y);
      y /= y.norm();
      Eigen::VectorXd ay(dim);
      apply(y, ay);
      ++iterations;
      const double value = y.dot(ay);
      const double residual = (ay - value * y).norm();
      if (residual <= options.tol || exhausted) {
        LanczosResult result;
        result.value = value;
        result.vector.assign(y.data(), y.data() + dim);
        result.residual = residual;
        result.iterations = iterations;
        return result;
      }
      stable = 0;
    }

    if (iterations >= options.max_iter) {
      std::ostringstream msg;
      msg << "Lanczos did not converge after " << iterations
          << " operator applications (Ritz value " << theta << ", residual estimate "
          << estimate << ", tol " << options.tol << ")";
      fail(ErrorCode::kNotConverged, msg.str());
    }

    if (j + 1 < basis) {
      v.col(j + 1) = w / beta;
      ++j;
      continue;
    }

    // Thick restart: keep the top Ritz vectors and the residual direction.
    const Eigen::MatrixXd& s = ritz.eigenvectors();
    Eigen::MatrixXd kept = v.leftCols(basis) * s.rightCols(keep);
    v.leftCols(keep) = kept;
    v.col(keep) = w / beta;
    t.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      const Eigen::Index idx = basis - keep + i;
      t(i, i) = ritz.eigenvalues()(idx);
      t(i, keep) = t(keep, i) = beta * s(basis - 1, idx);
    }
    j = keep;
  }
}

}  // namespace aldous_lab
