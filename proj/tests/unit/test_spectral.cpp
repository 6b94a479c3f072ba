#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/campaigns.hpp"
#include "core/error.hpp"
#include "core/generator.hpp"
#include "core/spectral.hpp"

using namespace aldous_lab;

namespace {

RateFunction path(std::size_t n) {
  RateFunction q(n);
  for (std::size_t i = 0; i + 1 < n; ++i) q.set(i, i + 1, 1.0);
  return q;
}

RateFunction complete_graph(std::size_t n) {
  RateFunction q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) q.set(i, j, 1.0);
  }
  return q;
}

double rayleigh(const SymmetricGenerator& g, const std::vector<double>& f) {
  const std::vector<double> gf = g.apply(f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num -= f[i] * gf[i];
    den += f[i] * f[i];
  }
  return num / den;
}

}  // namespace

TEST_CASE("spectral gap of small graphs") {
  CHECK(spectral_gap(rw_generator(path(3))).gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_gap(rw_generator(RateFunction(2, {{0, 1, 5.0}}))).gap ==
        doctest::Approx(10.0).epsilon(1e-12));
  CHECK(spectral_gap(ip_generator(complete_graph(3), Storage::kDense)).gap ==
        doctest::Approx(3.0).epsilon(1e-12));
  // Two components: the gap closes.
  const RateFunction split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK(std::abs(spectral_gap(rw_generator(split)).gap) <= 1e-12);
}

TEST_CASE("full spectrum") {
  const std::vector<double> p3 = full_spectrum(rw_generator(path(3)));
  CHECK(p3[0] == doctest::Approx(0.0));
  CHECK(p3[1] == doctest::Approx(1.0));
  CHECK(p3[2] == doctest::Approx(3.0));
  const std::vector<double> k3 = full_spectrum(rw_generator(complete_graph(3)));
  CHECK(k3[1] == doctest::Approx(3.0));
  CHECK(k3[2] == doctest::Approx(3.0));
  const std::vector<double> sq = full_spectrum(rw_generator(induced_rates(make_hypercube({2, 2}))));
  const std::vector<double> expected{0, 2, 2, 4};
  for (std::size_t i = 0; i < 4; ++i) CHECK(sq[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("RW spectrum is contained in the IP spectrum") {
  std::mt19937_64 rng(31);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const ContainmentReport report = containment_report(random_rate_function(n, rng), 1e-8);
      CHECK(report.contained);
      CHECK(report.worst_mismatch <= 1e-8);
      CHECK(report.rw.size() == n);
      CHECK(report.ip.size() == factorial(static_cast<int>(n)));
    }
  }
  CHECK(sorted_multiset_mismatch({0, 1}, {0, 0.5, 2}, 1e-8) == std::numeric_limits<double>::infinity());
  CHECK(sorted_multiset_mismatch({1, 1}, {0, 1, 2}, 1e-8) == std::numeric_limits<double>::infinity());
  CHECK(sorted_multiset_mismatch({1, 1}, {1, 1, 2}, 1e-8) == 0.0);
  CHECK_THROWS_AS(containment_report(complete_graph(8), 1e-8), Error);
}

TEST_CASE("hypercube closed form") {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 2; n <= (d == 3 ? 5 : 8); ++n) {
      const double gap = spectral_gap(rw_generator(induced_rates(make_hypercube({d, n})))).gap;
      CHECK(gap == doctest::Approx(hypercube_gap_closed_form(d, n)).epsilon(1e-10));
    }
  }
  CHECK(hypercube_gap_closed_form(1, 6) ==
        doctest::Approx(4.0 * std::pow(std::sin(std::numbers::pi / 12.0), 2)).epsilon(1e-15));
  CHECK_THROWS_AS(hypercube_gap_closed_form(2, 1), Error);
}

TEST_CASE("hypercube eigenpairs") {
  const int d = 2, n = 4;
  const SymmetricGenerator g = rw_generator(induced_rates(make_hypercube({d, n})));
  std::vector<Eigenpair> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Eigenpair p = hypercube_eigenpair(d, n, {{a, b}});
      const std::vector<double> gf = g.apply(p.eigenvector);
      for (std::size_t x = 0; x < gf.size(); ++x) {
        CHECK(gf[x] == doctest::Approx(p.eigenvalue * p.eigenvector[x]).epsilon(1e-12).scale(1.0));
      }
      pairs.push_back(p);
    }
  }
  // Orthonormal basis.
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      double s = 0.0;
      for (std::size_t x = 0; x < pairs[i].eigenvector.size(); ++x) {
        s += pairs[i].eigenvector[x] * pairs[j].eigenvector[x];
      }
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
    }
  }
  CHECK(-hypercube_eigenpair(d, n, {{1, 0}}).eigenvalue ==
        doctest::Approx(hypercube_gap_closed_form(d, n)));
  CHECK_THROWS_AS(hypercube_eigenpair(d, n, {{4, 0}}), Error);
}

TEST_CASE("Lanczos agrees with the dense solver") {
  std::mt19937_64 rng(77);
  SpectralOptions lanczos;
  lanczos.method = SolverMethod::kLanczos;
  lanczos.tol = 1e-10;
  for (std::size_t n = 3; n <= 6; ++n) {
    const RateFunction q = random_rate_function(n, rng);
    const SymmetricGenerator ip = ip_generator(q, Storage::kDense);
    const SpectralResult dense = spectral_gap(ip);
    const SpectralResult iterative = spectral_gap(ip_generator(q, Storage::kMatrixFree), lanczos);
    CHECK(iterative.method == SolverMethod::kLanczos);
    CHECK(iterative.gap == doctest::Approx(dense.gap).epsilon(1e-8));
    REQUIRE(iterative.eigenvector.has_value());
    CHECK(iterative.residual <= 1e-8 * std::max(1.0, ip.max_exit_rate()));
    // The returned vector certifies the gap from above.
    CHECK(rayleigh(ip, *iterative.eigenvector) >= dense.gap - 1e-10);
    CHECK(rayleigh(ip, *iterative.eigenvector) == doctest::Approx(dense.gap).epsilon(1e-8));
  }
  const SymmetricGenerator big = rw_generator(induced_rates(make_hypercube({2, 40})),
                                              Storage::kMatrixFree);
  const SpectralResult r = spectral_gap(big, lanczos);
  CHECK(r.gap == doctest::Approx(hypercube_gap_closed_form(2, 40)).epsilon(1e-8));
}

TEST_CASE("dense eigenvector and variational bound") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (std::size_t n = 3; n <= 6; ++n) {
    const SymmetricGenerator g = rw_generator(random_rate_function(n, rng));
    const SpectralResult r = spectral_gap(g);
    REQUIRE(r.eigenvector.has_value());
    double sum = 0.0, norm = 0.0;
    for (double x : *r.eigenvector) {
      sum += x;
      norm += x * x;
    }
    CHECK(std::abs(sum) <= 1e-10);
    CHECK(norm == doctest::Approx(1.0));
    CHECK(r.residual <= 1e-10);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> f(n);
      double mean = 0.0;
      for (double& x : f) mean += (x = normal(rng));
      for (double& x : f) x -= mean / static_cast<double>(n);
      CHECK(rayleigh(g, f) >= r.gap - 1e-10);
    }
  }
}

TEST_CASE("gap scales linearly with the rates") {
  std::mt19937_64 rng(15);
  const RateFunction q = random_rate_function(5, rng);
  const double base = spectral_gap(rw_generator(q)).gap;
  for (double c : {0.5, 2.0, 7.0}) {
    CHECK(spectral_gap(rw_generator(q).scaled(c)).gap == doctest::Approx(c * base).epsilon(1e-12));
  }
  SpectralOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(spectral_gap(rw_generator(q), bad), Error);
}

TEST_CASE("Lanczos stays certified when the Krylov space fills up") {
  // Small dense-ish graphs exhaust the mean-zero subspace before converging.
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> rate(0.05, 2.0);
  SpectralOptions lanczos;
  lanczos.method = SolverMethod::kLanczos;
  lanczos.tol = 1e-10;
  for (std::size_t n = 20; n <= 60; n += 5) {
    RateFunction q(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) q.set(i, i + 1, rate(rng));
    for (std::size_t e = 0; e < 2 * n; ++e) {
      const std::size_t a = pick(rng), b = pick(rng);
      if (a != b) q.set(a, b, rate(rng));
    }
    const SpectralResult r = spectral_gap(rw_generator(q, Storage::kMatrixFree), lanczos);
    CHECK(r.residual <= 1e-10);
    CHECK(r.gap == doctest::Approx(spectral_gap(rw_generator(q)).gap).epsilon(1e-10));
  }
}
