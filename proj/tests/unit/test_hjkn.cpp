#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/campaigns.hpp"
#include "core/error.hpp"
#include "core/hjkn.hpp"

using namespace aldous_lab;

namespace {

RateFunction path(std::size_t n) {
  RateFunction q(n);
  for (std::size_t i = 0; i + 1 < n; ++i) q.set(i, i + 1, 1.0);
  return q;
}

std::vector<RateFunction> path_sequence(std::size_t n_max) {
  std::vector<RateFunction> out;
  for (std::size_t n = 2; n <= n_max; ++n) out.push_back(path(n));
  return out;
}

std::vector<RateFunction> lattice_sequence(int d, std::size_t n_max) {
  const VertexSet order = traceable_order(d, 3);
  std::vector<RateFunction> out;
  for (std::size_t n = 2; n <= n_max; ++n) out.push_back(induced_rates(order.prefix(n)));
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("Aldous verdicts") {
  const AldousVerdict two = is_aldous(RateFunction(2, {{0, 1, 5.0}}), 1e-10);
  CHECK(two.gap_rw == doctest::Approx(10.0));
  CHECK(two.gap_ip == doctest::Approx(10.0));
  CHECK(two.holds);
  CHECK(two.one_sided);
  const AldousVerdict p3 = is_aldous(path(3), 1e-10);
  CHECK(p3.gap_rw == doctest::Approx(1.0));
  CHECK(p3.holds);
  const RateFunction star(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  const AldousVerdict s = is_aldous(star, 1e-10);
  CHECK(s.gap_rw == doctest::Approx(1.0));
  CHECK(s.holds);
  std::mt19937_64 rng(44);
  for (std::size_t n = 2; n <= 6; ++n) {
    const AldousVerdict v = is_aldous(random_rate_function(n, rng), 1e-8);
    CHECK(v.holds);
    CHECK(v.abs_diff <= 1e-8 * std::max(1.0, v.gap_rw));
  }
}

TEST_CASE("interpolated rates") {
  const RateFunction q(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}});
  const RateFunction half = interpolate_rate(q, 3, 0.5);
  CHECK(half.rate(0, 1) == 1.0);
  CHECK(half.rate(0, 2) == 1.0);
  CHECK(half.rate(1, 2) == 1.5);
  CHECK(interpolate_rate(q, 3, 1.0) == q);
  const RateFunction zero = interpolate_rate(q, 3, 0.0);
  CHECK(zero.rate(0, 2) == 0.0);
  // The last vertex is isolated: a null vector of the generator.
  const std::vector<double> e{0, 0, 1};
  for (double x : rw_generator(zero).apply(e)) CHECK(x == 0.0);
  CHECK(code_of([&] { interpolate_rate(q, 3, 1.5); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { interpolate_rate(q, 4, 0.5); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("gap is monotone along the interpolation") {
  std::mt19937_64 rng(6);
  for (std::size_t n = 3; n <= 6; ++n) {
    const RateFunction q = random_rate_function(n, rng);
    double previous = -1.0;
    for (int s = 0; s <= 20; ++s) {
      const double g = rw_gap(interpolate_rate(q, static_cast<int>(n), s / 20.0));
      CHECK(g >= previous - 1e-12);
      previous = g;
    }
  }
}

TEST_CASE("find_tk") {
  const RateFunction two(2, {{0, 1, 1.0}});
  CHECK(find_tk(two, 2, 1.0, 1e-12) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(find_tk(two, 2, 2.0, 1e-12) == 1.0);
  CHECK(find_tk(two, 2, 0.0, 1e-12) == 0.0);
  CHECK(code_of([&] { find_tk(two, 2, 3.0, 1e-12); }) == ErrorCode::kPrecondition);
  const RateFunction p4 = path(4);
  const double target = 0.3;
  const double t = find_tk(p4, 4, target, 1e-10);
  CHECK(rw_gap(interpolate_rate(p4, 4, t)) == doctest::Approx(target).epsilon(1e-9));
}

TEST_CASE("equalized sequence") {
  const std::vector<RateFunction> seq = path_sequence(5);
  const EqualizedSequence eq = build_equalized_sequence(seq, 1e-10);
  const double target = 4.0 * std::pow(std::sin(std::numbers::pi / 10.0), 2);
  REQUIRE(eq.rates.size() == 4);
  REQUIRE(eq.t.size() == 4);
  CHECK(eq.t.back() == 1.0);
  CHECK(eq.rates.back() == seq.back());
  for (std::size_t m = 0; m < eq.gaps.size(); ++m) {
    CHECK(eq.gaps[m] == doctest::Approx(target).epsilon(1e-9));
    CHECK(eq.t[m] >= 0.0);
    CHECK(eq.t[m] <= 1.0);
  }
  CHECK(sequence_is_increasing(eq.rates));

  // Gaps that are already equal need no scaling.
  const std::vector<RateFunction> flat{RateFunction(2, {{0, 1, 0.75}}),
                                       RateFunction(3, {{0, 1, 1.0}, {0, 2, 0.5}, {1, 2, 0.5}})};
  CHECK(rw_gap(flat[0]) == doctest::Approx(1.5));
  CHECK(rw_gap(flat[1]) == doctest::Approx(1.5));
  const EqualizedSequence e2 = build_equalized_sequence(flat, 1e-10);
  CHECK(e2.t == std::vector<double>{1.0, 1.0});
  CHECK(e2.rates[0] == flat[0]);

  // d = 2: the gap at N = 7 lies below the final gap at N = 8.
  try {
    build_equalized_sequence(lattice_sequence(2, 8), 1e-8);
    FAIL("expected a hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHypothesisViolation);
    CHECK(std::string(e.what()).find("k = 7") != std::string::npos);
  }
  std::vector<RateFunction> shrinking{RateFunction(2, {{0, 1, 2.0}}),
                                      RateFunction(3, {{0, 1, 1.0}, {1, 2, 1.0}})};
  CHECK(code_of([&] { build_equalized_sequence(shrinking, 1e-8); }) ==
        ErrorCode::kHypothesisViolation);
}

TEST_CASE("corollary on paths and lattice sets") {
  const CorollaryReport p6 = verify_corollary(path_sequence(6), 1e-8);
  CHECK(p6.holds);
  CHECK(p6.gap_rw == doctest::Approx(0.26794919243112264).epsilon(1e-12));
  CHECK(p6.min_ip == doctest::Approx(p6.gap_rw).epsilon(1e-8));
  CHECK(p6.argmin_ip == 6);

  const CorollaryReport z7 = verify_corollary(lattice_sequence(2, 7), 1e-8);
  CHECK(z7.holds);
  CHECK(z7.gap_rw == doctest::Approx(0.6086176193690999).epsilon(1e-12));
  CHECK(z7.ip_gaps.size() == 6);

  const CorollaryReport two = verify_corollary(path_sequence(2), 1e-10);
  CHECK(two.holds);
  CHECK(two.gap_ip == doctest::Approx(2.0));
}

TEST_CASE("local minima bookkeeping") {
  std::vector<SequenceRow> rows;
  const std::vector<double> gaps{2.0, 1.0, 2.0, 1.0, 0.5, 0.7};
  for (std::size_t m = 0; m < gaps.size(); ++m) {
    SequenceRow r;
    r.size = m + 2;
    r.gap_rw = gaps[m];
    rows.push_back(r);
  }
  fill_local_minima(rows);
  const std::vector<bool> local{true, true, false, true, true, false};
  const std::vector<std::size_t> k{2, 3, 3, 5, 6, 6};
  for (std::size_t m = 0; m < rows.size(); ++m) {
    CHECK(rows[m].is_local_min == local[m]);
    CHECK(rows[m].k_of_n == k[m]);
  }
  SequenceReport report;
  report.rows = rows;
  CHECK(next_local_minimum(report, 4) == std::optional<std::size_t>(5));
  CHECK_FALSE(next_local_minimum(report, 7).has_value());
}

TEST_CASE("ratio table in one dimension") {
  const SequenceReport r = ratio_table(1, 12, 5);
  REQUIRE(r.rows.size() == 11);
  for (const SequenceRow& row : r.rows) {
    const double closed = hypercube_gap_closed_form(1, static_cast<int>(row.size));
    CHECK(row.gap_rw == doctest::Approx(closed).epsilon(1e-10));
    CHECK(row.side == static_cast<int>(row.size));
    CHECK(row.ratio == doctest::Approx(closed * row.size * row.size /
                                       (std::numbers::pi * std::numbers::pi)));
    CHECK(row.is_local_min);
    CHECK(row.k_of_n == row.size);
    CHECK(row.gap_ip.has_value() == (row.size <= 5));
    if (row.gap_ip) CHECK(*row.gap_ip == doctest::Approx(row.gap_rw).epsilon(1e-8));
  }
}

TEST_CASE("ratio table in two dimensions") {
  RatioTableOptions options;
  options.jobs = 2;
  const SequenceReport r = ratio_table(2, 3, 9, options);
  REQUIRE(r.rows.size() == 8);
  const std::vector<double> oracle{2, 1, 2, 0.8299135133739667, 1, 0.6086176193690999,
                                   0.7530203962825329, 1};
  for (std::size_t m = 0; m < r.rows.size(); ++m) {
    CHECK(r.rows[m].gap_rw == doctest::Approx(oracle[m]).epsilon(1e-10));
    REQUIRE(r.rows[m].gap_ip.has_value());
  }
  CHECK(*r.rows[2].gap_ip == doctest::Approx(r.rows[2].gap_rw).epsilon(1e-6));
  CHECK(*r.rows[7].gap_ip == doctest::Approx(r.rows[7].gap_rw).epsilon(1e-6));
  CHECK(r.rows[7].ip_method == SolverMethod::kLanczos);
  CHECK(r.rows[4].ip_method == SolverMethod::kDense);
  CHECK(r.rows[5].k_of_n == 7);
  CHECK(code_of([] { ratio_table(2, 3, 10); }) == ErrorCode::kResourceLimit);
}

TEST_CASE("K(N) tracks N on the square lattice") {
  RatioTableOptions options;
  options.jobs = 4;
  const SequenceReport r = ratio_table(2, 21, 0, options);
  for (const SequenceRow& row : r.rows) {
    if (row.size >= 400) CHECK(static_cast<double>(row.k_of_n) / row.size >= 0.9);
    CHECK(row.k_of_n <= row.size);
    CHECK(row.running_min <= row.gap_rw);
  }
}

TEST_CASE("exhaustive Z^2 campaign") {
  const std::vector<AldousRecord> records = aldous_exhaustive_z2(5, 1e-8, 2);
  CHECK(records.size() == 2 + 6 + 19 + 63);
  for (const AldousRecord& rec : records) CHECK(rec.verdict.holds);
  CHECK(code_of([] { aldous_exhaustive_z2(8, 1e-8); }) == ErrorCode::kResourceLimit);
}
