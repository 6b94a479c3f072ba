#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/lanczos.hpp"

namespace aldous_lab {

std::string_view to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::kAuto:
      return "auto";
    case SolverMethod::kDense:
      return "dense";
    case SolverMethod::kLanczos:
      return "lanczos";
  }
  return "unknown";
}

namespace {

// Eigen's tridiagonal QR solver. LAPACK was dropped here: the OpenBLAS
// 0.3.20 AVX-512 kernels return wrong eigenvectors above ~128 rows.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> symmetric_eigen(const Eigen::MatrixXd& a,
                                                               bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorCode::kNotConverged,
          "dense symmetric eigensolver did not converge");
  return es;
}

double residual_norm(const SymmetricGenerator& g, const std::vector<double>& v, double value) {
  std::vector<double> gv = g.apply(v);
  double sum = 0.0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    double r = -gv[s] - value * v[s];
    sum += r * r;
  }
  return std::sqrt(sum);
}

SpectralResult dense_gap(const SymmetricGenerator& g, const SpectralOptions& options) {
  Eigen::MatrixXd a = -g.to_dense(std::max(kDenseGapLimit, kFullSpectrumLimit));
  const double n = static_cast<double>(a.rows());
  // Lift the constant mode above the spectrum: the smallest eigenvalue of
  // -G + (alpha / D) J is then the gap, with an eigenvector orthogonal to 1.
  const double alpha = 2.0 * g.max_exit_rate() + 1.0;
  a.array() += alpha / n;
  const auto eig = symmetric_eigen(a, options.want_vector);
  SpectralResult result;
  result.method = SolverMethod::kDense;
  result.gap = std::max(0.0, eig.eigenvalues()(0));
  result.iterations = 1;
  if (options.want_vector) {
    const Eigen::VectorXd first = eig.eigenvectors().col(0);
    std::vector<double> v(first.data(), first.data() + first.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double norm = 0.0;
    for (double& x : v) {
      x -= mean;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    result.residual = residual_norm(g, v, result.gap);
    result.eigenvector = std::move(v);
  } else {
    result.residual = std::numeric_limits<double>::epsilon() * n * 2.0 * g.max_exit_rate();
  }
  return result;
}

SpectralResult lanczos_gap(const SymmetricGenerator& g, const SpectralOptions& options) {
  const std::size_t dim = g.dimension();
  SpectralResult result;
  result.method = SolverMethod::kLanczos;
  const double shift = 2.0 * g.max_exit_rate();
  if (shift == 0.0) {
    // G = 0: every mean-zero vector is a null vector.
    std::vector<double> v(dim, 0.0);
    v[0] = std::sqrt(0.5);
    v[1] = -std::sqrt(0.5);
    result.gap = 0.0;
    if (options.want_vector) result.eigenvector = std::move(v);
    return result;
  }
  LanczosOptions lo;
  lo.tol = options.tol;
  lo.max_iter = options.max_iter;
  lo.basis_size = options.basis_size;
  lo.seed = options.seed;
  // A f = shift f + G f = (shift I - (-G)) f is PSD; the gap maps to its top.
  LinearOperator op = [&g, shift](std::span<const double> in, std::span<double> out) {
    g.apply(in, out);
    for (std::size_t s = 0; s < in.size(); ++s) out[s] += shift * in[s];
  };
  LanczosResult top = largest_eigenpair(dim, op, lo);
  result.gap = std::max(0.0, shift - top.value);
  result.residual = residual_norm(g, top.vector, result.gap);
  result.iterations = top.iterations;
  if (options.want_vector) result.eigenvector = std::move(top.vector);
  return result;
}

}  // namespace

SpectralResult spectral_gap(const SymmetricGenerator& generator, const SpectralOptions& options) {
  require(generator.dimension() >= 2, ErrorCode::kInvalidArgument,
          "spectral gaps need at least two states");
  require(options.tol > 0.0, ErrorCode::kInvalidArgument, "tolerance must be positive");
  SolverMethod method = options.method;
  if (method == SolverMethod::kAuto) {
    method = generator.dimension() <= kDenseGapLimit ? SolverMethod::kDense
                                                     : SolverMethod::kLanczos;
  }
  if (method == SolverMethod::kDense) {
    require(generator.dimension() <= kFullSpectrumLimit, ErrorCode::kResourceLimit,
            "dense gaps are capped at 5040 states");
    return dense_gap(generator, options);
  }
  return lanczos_gap(generator, options);
}

std::vector<double> full_spectrum(const SymmetricGenerator& generator) {
  require(generator.dimension() <= kFullSpectrumLimit, ErrorCode::kResourceLimit,
          "full spectra are capped at 5040 states");
  Eigen::MatrixXd a = -generator.to_dense(kFullSpectrumLimit);
  const auto eig = symmetric_eigen(a, false);
  std::vector<double> values(eig.eigenvalues().data(),
                             eig.eigenvalues().data() + eig.eigenvalues().size());
  std::sort(values.begin(), values.end());
  return values;
}

double sorted_multiset_mismatch(const std::vector<double>& inner,
                                const std::vector<double>& outer, double tol) {
  double worst = 0.0;
  std::size_t j = 0;
  for (double value : inner) {
    while (j < outer.size() && outer[j] < value - tol) ++j;
    if (j == outer.size() || std::abs(outer[j] - value) > tol) {
      return std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, std::abs(outer[j] - value));
    ++j;
  }
  return worst;
}

ContainmentReport containment_report(const RateFunction& rates, double tol) {
  require(rates.size() >= 2 && rates.size() <= static_cast<std::size_t>(kMaxDenseIpSites),
          ErrorCode::kResourceLimit, "spectrum containment needs 2 <= N <= 7");
  ContainmentReport report;
  report.rw = full_spectrum(rw_generator(rates));
  report.ip = full_spectrum(ip_generator(rates, Storage::kDense));
  report.worst_mismatch = sorted_multiset_mismatch(report.rw, report.ip, tol);
  report.contained = std::isfinite(report.worst_mismatch);
  return report;
}

bool spectrum_containment(const RateFunction& rates, double tol) {
  return containment_report(rates, tol).contained;
}

double hypercube_gap_closed_form(int d, int n) {
  require(d >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(n >= 2, ErrorCode::kInvalidArgument, "closed-form gap needs n >= 2");
  const double s = std::sin(std::numbers::pi / (2.0 * n));
  return 4.0 * s * s;
}

Eigenpair hypercube_eigenpair(int d, int n, const EigenIndex& index) {
  require(d >= 1 && n >= 1, ErrorCode::kInvalidArgument, "need d >= 1 and n >= 1");
  require(index.k.size() == static_cast<std::size_t>(d), ErrorCode::kInvalidArgument,
          "eigen index must have d components");
  for (int m : index.k) {
    require(m >= 0 && m < n, ErrorCode::kInvalidArgument, "eigen index component outside [0, n-1]");
  }
  const double pi = std::numbers::pi;
  Eigenpair out;
  for (int m : index.k) {
    const double s = std::sin(pi * m / (2.0 * n));
    out.eigenvalue -= 4.0 * s * s;
  }
  auto one_dim = [&](int x, int m) {
    if (m == 0) return 1.0 / std::sqrt(static_cast<double>(n));
    return std::sqrt(2.0 / n) * std::cos(pi * m * (x - 0.5) / n);
  };
  VertexSet cube = make_hypercube({d, n});
  out.eigenvector.reserve(cube.size());
  for (const LatticePoint& x : cube.points()) {
    double value = 1.0;
    for (int i = 0; i < d; ++i) value *= one_dim(x[i], index.k[i]);
    out.eigenvector.push_back(value);
  }
  return out;
}

}  // namespace aldous_lab
