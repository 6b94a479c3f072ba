#include "aldous_lab/aldous_lab.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <cstring>
#include <new>
#include <string>

#include "core/campaigns.hpp"
#include "core/error.hpp"
#include "core/hjkn.hpp"
#include "core/io.hpp"
#include "core/spectral.hpp"
#include "core/trace_bounds.hpp"

using namespace aldous_lab;

struct alab_rates {
  RateFunction rates;
};

struct alab_report {
  Json json;
  std::string csv;
  std::size_t violations = 0;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
alab_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return ALAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<alab_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ALAB_ERR_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ALAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return ALAB_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require_out(const void* p, const char* name) {
  require(p != nullptr, ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
}

alab_options options_or_default(const alab_options* options) {
  alab_options o;
  alab_options_init(&o);
  if (options != nullptr) o = *options;
  require(o.solver_tol > 0.0, ErrorCode::kInvalidArgument, "solver tolerance must be positive");
  require(o.check_tol >= 0.0, ErrorCode::kInvalidArgument, "check tolerance must be >= 0");
  require(o.max_iter >= 1, ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  require(o.jobs >= 1, ErrorCode::kInvalidArgument, "jobs must be >= 1");
  require(o.method >= ALAB_METHOD_AUTO && o.method <= ALAB_METHOD_LANCZOS,
          ErrorCode::kInvalidArgument, "unknown solver method");
  return o;
}

SpectralOptions spectral_options(const alab_options& o) {
  SpectralOptions s;
  s.tol = o.solver_tol;
  s.max_iter = o.max_iter;
  s.method = static_cast<SolverMethod>(o.method);
  return s;
}

StateSpace process_space(int process) {
  require(process == ALAB_PROCESS_RW || process == ALAB_PROCESS_IP, ErrorCode::kInvalidArgument,
          "process must be ALAB_PROCESS_RW or ALAB_PROCESS_IP");
  return process == ALAB_PROCESS_RW ? StateSpace::kVertices : StateSpace::kPermutations;
}

const char* process_name(int process) { return process == ALAB_PROCESS_RW ? "rw" : "ip"; }

Json violation(const char* module, const char* operation, Json inputs, double residual) {
  return {{"module", module},
          {"operation", operation},
          {"inputs", std::move(inputs)},
          {"residual", residual}};
}

void finish(alab_report& report, Json violations) {
  report.violations = violations.size();
  report.json["violation_count"] = report.violations;
  report.json["violations"] = std::move(violations);
  report.json["tolerances"] = tolerance_json();
}

alab_report* publish(alab_report report, alab_report** out) {
  *out = new alab_report(std::move(report));
  return *out;
}

std::string bool_cell(bool b) { return b ? "1" : "0"; }

}  // namespace

extern "C" {

const char* alab_version(void) { return "1.0.0"; }

const char* alab_last_error(void) { return last_error.c_str(); }

void alab_free_string(char* s) { std::free(s); }

void alab_options_init(alab_options* options) {
  if (options == nullptr) return;
  const SpectralOptions defaults;
  options->solver_tol = defaults.tol;
  options->check_tol = 0.0;
  options->max_iter = defaults.max_iter;
  options->method = ALAB_METHOD_AUTO;
  options->jobs = 1;
  options->seed = 1;
}

alab_status alab_rates_create(size_t size, alab_rates** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new alab_rates{RateFunction(size)};
  });
}

alab_status alab_rates_set(alab_rates* rates, size_t i, size_t j, double rate) {
  return guarded([&] {
    require_out(rates, "rates");
    rates->rates.set(i, j, rate);
  });
}

alab_status alab_rates_get(const alab_rates* rates, size_t i, size_t j, double* out) {
  return guarded([&] {
    require_out(rates, "rates");
    require_out(out, "out");
    require(i < rates->rates.size() && j < rates->rates.size(), ErrorCode::kInvalidArgument,
            "index out of range");
    *out = rates->rates.rate(i, j);
  });
}

size_t alab_rates_size(const alab_rates* rates) { return rates ? rates->rates.size() : 0; }

alab_status alab_rates_from_json(const char* json, alab_rates** out) {
  return guarded([&] {
    require_out(json, "json");
    require_out(out, "out");
    Json parsed = Json::parse(json, nullptr, false);
    require(!parsed.is_discarded() && parsed.is_object(), ErrorCode::kInvalidArgument,
            "input is not a JSON object");
    if (parsed.contains("points")) {
      *out = new alab_rates{induced_rates(vertex_set_from_json(parsed))};
    } else {
      *out = new alab_rates{rate_function_from_json(parsed)};
    }
  });
}

alab_status alab_rates_to_json(const alab_rates* rates, char** out) {
  return guarded([&] {
    require_out(rates, "rates");
    require_out(out, "out");
    *out = copy_string(rate_function_to_json(rates->rates).dump());
  });
}

alab_status alab_rates_hypercube(int d, int n, alab_rates** out) {
  return guarded([&] {
    require_out(out, "out");
    const VertexSet cube = make_hypercube({d, n});
    require(cube.size() >= 2, ErrorCode::kInvalidArgument, "hypercube needs at least two vertices");
    *out = new alab_rates{induced_rates(cube)};
  });
}

alab_status alab_rates_traceable(int d, size_t size, alab_rates** out) {
  return guarded([&] {
    require_out(out, "out");
    require(d >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
    require(size >= 2 && size <= 1000000, ErrorCode::kInvalidArgument,
            "traceable set size must lie in [2, 10^6]");
    int n_max = 1;
    auto volume = [d](int n) {
      std::size_t v = 1;
      for (int i = 0; i < d; ++i) v *= static_cast<std::size_t>(n);
      return v;
    };
    while (volume(n_max) < size) ++n_max;
    *out = new alab_rates{induced_rates(traceable_order(d, std::max(n_max, 2)).prefix(size))};
  });
}

void alab_rates_destroy(alab_rates* rates) { delete rates; }

alab_status alab_gap(const alab_rates* rates, int process, const alab_options* options,
                     double* gap_out, char** json_out, const char* eigenvector_path) {
  return guarded([&] {
    require_out(rates, "rates");
    const alab_options o = options_or_default(options);
    SpectralOptions s = spectral_options(o);
    s.want_vector = eigenvector_path != nullptr;
    const RateFunction& q = rates->rates;
    SpectralResult result;
    if (process_space(process) == StateSpace::kVertices) {
      require(q.size() >= 2, ErrorCode::kInvalidArgument, "gaps need N >= 2");
      SolverMethod method = s.method;
      if (method == SolverMethod::kAuto) {
        method = q.size() <= kDenseGapLimit ? SolverMethod::kDense : SolverMethod::kLanczos;
      }
      const Storage storage =
          method == SolverMethod::kDense ? Storage::kDense : Storage::kMatrixFree;
      result = spectral_gap(rw_generator(q, storage), s);
    } else {
      result = ip_gap(q, s);
    }
    if (eigenvector_path != nullptr) write_eigenvector(eigenvector_path, *result.eigenvector);
    if (gap_out != nullptr) *gap_out = result.gap;
    if (json_out != nullptr) {
      Json j = spectral_result_to_json(result);
      j["process"] = process_name(process);
      j["N"] = q.size();
      *json_out = copy_string(j.dump());
    }
  });
}

alab_status alab_closed_form_gap(int d, int n, double* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = hypercube_gap_closed_form(d, n);
  });
}

alab_status alab_spectrum(const alab_rates* rates, int process, char** json_out) {
  return guarded([&] {
    require_out(rates, "rates");
    require_out(json_out, "json_out");
    const RateFunction& q = rates->rates;
    const SymmetricGenerator g = process_space(process) == StateSpace::kVertices
                                     ? rw_generator(q)
                                     : ip_generator(q, Storage::kDense);
    Json j = {{"process", process_name(process)},
              {"N", q.size()},
              {"dimension", g.dimension()},
              {"eigenvalues", full_spectrum(g)}};
    *json_out = copy_string(j.dump());
  });
}

alab_status alab_generator_export(const alab_rates* rates, int process, int format, char** out) {
  return guarded([&] {
    require_out(rates, "rates");
    require_out(out, "out");
    const RateFunction& q = rates->rates;
    const bool rw = process_space(process) == StateSpace::kVertices;
    if (format == ALAB_EXPORT_DENSE_CSV) {
      const SymmetricGenerator g = rw ? rw_generator(q) : ip_generator(q, Storage::kDense);
      *out = copy_string(dense_generator_csv(g));
    } else if (format == ALAB_EXPORT_ACTIONS_JSON) {
      const SymmetricGenerator g = rw ? rw_generator(q, Storage::kMatrixFree)
                                      : ip_generator(q, Storage::kMatrixFree);
      *out = copy_string(action_list_to_json(g).dump());
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown export format");
    }
  });
}

alab_status alab_aldous_check(const alab_rates* rates, const alab_options* options,
                              alab_report** out) {
  return guarded([&] {
    require_out(rates, "rates");
    require_out(out, "out");
    const alab_options o = options_or_default(options);
    const RateFunction& q = rates->rates;
    const SpectralOptions s = spectral_options(o);
    // The default tolerance follows the IP solver in use.
    const bool dense_ip =
        s.method == SolverMethod::kDense ||
        (s.method == SolverMethod::kAuto && q.size() <= static_cast<std::size_t>(kMaxDenseIpSites) - 1);
    const double tol = o.check_tol > 0.0 ? o.check_tol
                                         : (dense_ip ? kAldousDenseTol : kAldousLanczosTol);
    const AldousVerdict v = is_aldous(q, tol, s);
    alab_report report;
    report.json = aldous_verdict_to_json(v);
    report.json["N"] = q.size();
    report.json["rates"] = rate_function_to_json(q);
    report.csv = tolerance_csv_header() + "N,gap_rw,gap_ip,abs_diff,holds,one_sided\n" +
                 std::to_string(q.size()) + ',' + format_double(v.gap_rw) + ',' +
                 format_double(v.gap_ip) + ',' + format_double(v.abs_diff) + ',' +
                 bool_cell(v.holds) + ',' + bool_cell(v.one_sided) + '\n';
    Json violations = Json::array();
    if (!v.holds || !v.one_sided) {
      violations.push_back(violation("hjkn", "is_aldous",
                                     {{"rates", rate_function_to_json(q)}, {"tol", tol}},
                                     v.abs_diff));
    }
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

alab_status alab_aldous_exhaustive_z2(int max_vertices, const alab_options* options,
                                      alab_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const alab_options o = options_or_default(options);
    const double tol = o.check_tol > 0.0 ? o.check_tol : kAldousDenseTol;
    const std::vector<AldousRecord> records = aldous_exhaustive_z2(max_vertices, tol, o.jobs);
    alab_report report;
    Json rows = Json::array();
    Json violations = Json::array();
    for (const AldousRecord& r : records) {
      Json row = aldous_verdict_to_json(r.verdict);
      row["vertices"] = vertex_set_to_json(r.vertices);
      rows.push_back(row);
      if (!r.verdict.holds || !r.verdict.one_sided) {
        violations.push_back(violation("hjkn", "is_aldous",
                                       {{"vertices", vertex_set_to_json(r.vertices)},
                                        {"tol", tol}},
                                       r.verdict.abs_diff));
      }
    }
    report.json = {{"max_vertices", max_vertices}, {"count", records.size()}, {"records", rows}};
    report.csv = tolerance_csv_header() + aldous_records_csv(records);
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

alab_status alab_trace_fuzz(int d, int n, size_t trials, const alab_options* options,
                            alab_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const alab_options o = options_or_default(options);
    require(d >= 1 && d <= 4, ErrorCode::kResourceLimit, "trace fuzzing supports 1 <= d <= 4");
    require(n >= 1 && n <= 64, ErrorCode::kResourceLimit, "trace fuzzing supports 1 <= n <= 64");
    require(trials <= 10000000, ErrorCode::kResourceLimit, "at most 10^7 trials");
    const double tol = o.check_tol > 0.0 ? o.check_tol : kTraceSlackTol;
    const std::vector<TraceTrial> log =
        d == 1 ? trace_fuzz_1d(n, trials, o.seed) : trace_fuzz_nd(d, n, trials, o.seed);
    alab_report report;
    Json violations = Json::array();
    double worst = std::numeric_limits<double>::infinity();
    for (const TraceTrial& t : log) {
      worst = std::min(worst, t.report.slack);
      if (t.report.slack < -tol) {
        violations.push_back(violation(
            "trace_bounds", d == 1 ? "trace_1d" : "trace_nd",
            {{"seed", t.seed}, {"d", t.d}, {"n", t.n}, {"V", t.size}}, t.report.slack));
      }
    }
    report.json = {{"d", d},
                   {"n", n},
                   {"trials", trials},
                   {"seed", o.seed},
                   {"min_slack", log.empty() ? Json(nullptr) : Json(worst)}};
    report.csv = tolerance_csv_header() + trace_trials_csv(log);
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

alab_status alab_trace_negative_control(alab_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const TraceTrial t = trace_negative_control();
    alab_report report;
    report.json = trace_trial_to_json(t);
    report.json["traceable"] = false;
    report.csv = tolerance_csv_header() + trace_trials_csv(std::span(&t, 1));
    Json violations = Json::array();
    if (t.report.slack < -kTraceSlackTol) {
      violations.push_back(violation("trace_bounds", "trace_nd",
                                     {{"d", 2}, {"n", 5}, {"V", "R^2_5 + (6,6)"}},
                                     t.report.slack));
    }
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

alab_status alab_sequence(int d, size_t size, const alab_options* options, alab_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const alab_options o = options_or_default(options);
    require(d >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
    require(size >= 2 && size <= static_cast<std::size_t>(kMaxMatrixFreeIpSites),
            ErrorCode::kResourceLimit, "sequence checks need 2 <= N <= 9");
    const SpectralOptions s = spectral_options(o);
    const bool dense_ip = factorial(static_cast<int>(size)) <= kDenseCap;
    const double tol = o.check_tol > 0.0 ? o.check_tol
                                         : (dense_ip ? kAldousDenseTol : kAldousLanczosTol);
    const VertexSet order = traceable_order(d, static_cast<int>(size));
    std::vector<RateFunction> rates;
    for (std::size_t k = 2; k <= size; ++k) rates.push_back(induced_rates(order.prefix(k)));
    const EqualizedSequence eq = build_equalized_sequence(rates, tol);
    const CorollaryReport c = verify_corollary(rates, tol, s);
    alab_report report;
    report.json = {{"d", d},
                   {"N", size},
                   {"tol", tol},
                   {"equalized", equalized_sequence_to_json(eq)},
                   {"corollary", corollary_report_to_json(c)}};
    report.csv = tolerance_csv_header() + "k,t,gap_rw,equalized_gap_rw,gap_ip\n";
    for (std::size_t m = 0; m < rates.size(); ++m) {
      report.csv += std::to_string(m + 2) + ',' + format_double(eq.t[m]) + ',' +
                    format_double(eq.input_gaps[m]) + ',' + format_double(eq.gaps[m]) + ',' +
                    format_double(c.ip_gaps[m]) + '\n';
    }
    Json violations = Json::array();
    if (!c.holds) {
      violations.push_back(violation("hjkn", "verify_corollary",
                                     {{"d", d}, {"N", size}, {"tol", tol}},
                                     std::max(c.aldous_residual, c.min_residual)));
    }
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

alab_status alab_ratio_table(int d, int n_max, int ip_cap, const alab_options* options,
                             alab_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const alab_options o = options_or_default(options);
    RatioTableOptions rt;
    rt.jobs = o.jobs;
    rt.spectral = spectral_options(o);
    const SequenceReport table = ratio_table(d, n_max, ip_cap, rt);
    Json violations = Json::array();
    for (const SequenceRow& row : table.rows) {
      const Json inputs = {{"d", d}, {"N", row.size}, {"n", row.side}};
      if (!row.lower.vacuous && row.gap_rw < row.lower.value - kTraceSlackTol) {
        violations.push_back(
            violation("trace_bounds", "sandwich_lower", inputs, row.lower.value - row.gap_rw));
      }
      if (!row.upper.vacuous && row.gap_rw > row.upper.value + kTraceSlackTol) {
        violations.push_back(
            violation("trace_bounds", "sandwich_upper", inputs, row.gap_rw - row.upper.value));
      }
      if (row.gap_ip) {
        const bool dense = row.ip_method == SolverMethod::kDense;
        const double tol = o.check_tol > 0.0 ? o.check_tol
                                             : (dense ? kAldousDenseTol : kAldousLanczosTol);
        const double diff = std::abs(*row.gap_ip - row.gap_rw);
        if (diff > tol * std::max(1.0, row.gap_rw)) {
          violations.push_back(violation("hjkn", "is_aldous", inputs, diff));
        }
      }
    }
    alab_report report;
    report.json = sequence_report_to_json(table);
    report.csv = sequence_report_csv(table);
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

alab_status alab_containment(size_t size, size_t trials, const alab_options* options,
                             alab_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const alab_options o = options_or_default(options);
    require(trials <= 100000, ErrorCode::kResourceLimit, "at most 10^5 containment trials");
    const double tol = o.check_tol > 0.0 ? o.check_tol : kContainmentTol;
    const std::vector<ContainmentTrial> log = containment_campaign(size, trials, o.seed, tol);
    alab_report report;
    Json rows = Json::array();
    Json violations = Json::array();
    report.csv = tolerance_csv_header() + "seed,N,contained,worst_mismatch\n";
    for (const ContainmentTrial& t : log) {
      rows.push_back({{"seed", t.seed},
                      {"contained", t.report.contained},
                      {"worst_mismatch", t.report.worst_mismatch},
                      {"rates", rate_function_to_json(t.rates)}});
      report.csv += std::to_string(t.seed) + ',' + std::to_string(size) + ',' +
                    bool_cell(t.report.contained) + ',' +
                    format_double(t.report.worst_mismatch) + '\n';
      if (!t.report.contained) {
        violations.push_back(violation("spectral", "spectrum_containment",
                                       {{"seed", t.seed}, {"N", size}, {"tol", tol}},
                                       t.report.worst_mismatch));
      }
    }
    report.json = {{"N", size}, {"trials", trials}, {"seed", o.seed}, {"tol", tol},
                   {"records", std::move(rows)}};
    finish(report, std::move(violations));
    publish(std::move(report), out);
  });
}

size_t alab_report_violations(const alab_report* report) {
  return report ? report->violations : 0;
}

alab_status alab_report_json(const alab_report* report, char** out) {
  return guarded([&] {
    require_out(report, "report");
    require_out(out, "out");
    *out = copy_string(report->json.dump(2) + "\n");
  });
}

alab_status alab_report_csv(const alab_report* report, char** out) {
  return guarded([&] {
    require_out(report, "report");
    require_out(out, "out");
    *out = copy_string(report->csv);
  });
}

void alab_report_destroy(alab_report* report) { delete report; }

}  // extern "C"
