#include "core/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "core/error.hpp"

namespace aldous_lab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  require(static_cast<bool>(out), ErrorCode::kIo, "write failed for " + path.string());
}

Json vertex_set_to_json(const VertexSet& vertices) {
  Json points = Json::array();
  for (const LatticePoint& p : vertices.points()) points.push_back(p.coords);
  return {{"dim", vertices.dim()}, {"points", std::move(points)}};
}

VertexSet vertex_set_from_json(const Json& json) {
  try {
    const int dim = json.at("dim").get<int>();
    std::vector<LatticePoint> points;
    for (const Json& p : json.at("points")) points.emplace_back(p.get<std::vector<int>>());
    return VertexSet(dim, std::move(points));
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed vertex set: ") + e.what());
  }
}

Json rate_function_to_json(const RateFunction& rates) {
  Json pairs = Json::array();
  for (const PairRate& p : rates.pairs()) pairs.push_back({p.i + 1, p.j + 1, p.rate});
  return {{"size", rates.size()}, {"pairs", std::move(pairs)}};
}

RateFunction rate_function_from_json(const Json& json) {
  try {
    const auto size = json.at("size").get<std::size_t>();
    RateFunction q(size);
    for (const Json& p : json.at("pairs")) {
      require(p.is_array() && p.size() == 3, ErrorCode::kInvalidArgument,
              "rate pairs must be [i, j, rate]");
      const auto i = p[0].get<std::size_t>(), j = p[1].get<std::size_t>();
      require(i >= 1 && j >= 1, ErrorCode::kInvalidArgument, "rate indices are 1-based");
      require(q.rate(i - 1, j - 1) == 0.0, ErrorCode::kInvalidArgument,
              "pair {" + std::to_string(i) + "," + std::to_string(j) + "} listed twice");
      q.set(i - 1, j - 1, p[2].get<double>());
    }
    return q;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed rate function: ") + e.what());
  }
}

Json spectral_result_to_json(const SpectralResult& result) {
  return {{"gap", result.gap},
          {"method", std::string(to_string(result.method))},
          {"residual", result.residual},
          {"iterations", result.iterations}};
}

void write_eigenvector(const std::filesystem::path& path, std::span<const double> values) {
  static_assert(std::endian::native == std::endian::little, "little-endian host expected");
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  const std::uint64_t length = values.size();
  out.write(reinterpret_cast<const char*>(&length), sizeof length);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  require(static_cast<bool>(out), ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<double> read_eigenvector(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::uint64_t length = 0;
  in.read(reinterpret_cast<char*>(&length), sizeof length);
  require(static_cast<bool>(in), ErrorCode::kIo, "truncated eigenvector header");
  require(length <= (std::uint64_t{1} << 32), ErrorCode::kIo, "implausible eigenvector length");
  std::vector<double> values(length);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(length * sizeof(double)));
  require(static_cast<bool>(in), ErrorCode::kIo, "truncated eigenvector data");
  return values;
}

std::string dense_generator_csv(const SymmetricGenerator& generator) {
  const Eigen::MatrixXd m = generator.to_dense();
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

Json action_list_to_json(const SymmetricGenerator& generator) {
  Json actions = Json::array();
  for (const PairRate& p : generator.actions()) actions.push_back({p.i + 1, p.j + 1, p.rate});
  return {{"state_space",
           generator.state_space() == StateSpace::kVertices ? "vertices" : "permutations"},
          {"sites", generator.sites()},
          {"dimension", generator.dimension()},
          {"actions", std::move(actions)}};
}

Json bound_to_json(const Bound& bound) {
  if (bound.vacuous) return nullptr;
  return bound.value;
}

Json trace_report_to_json(const TraceReport& report) {
  return {{"lhs", report.lhs}, {"rhs", report.rhs}, {"slack", report.slack},
          {"a", report.a},     {"b", report.b}};
}

Json gap_bound_report_to_json(const GapBoundReport& report) {
  return {{"d", report.d},
          {"n", report.n},
          {"N", report.size},
          {"gap_cube", report.gap_cube},
          {"gap_next_cube", report.gap_next_cube},
          {"lower_bound", bound_to_json(report.lower)},
          {"upper_bound", bound_to_json(report.upper)},
          {"lower_raw", report.lower.value},
          {"upper_raw", report.upper.value}};
}

std::vector<std::pair<std::string, double>> tolerance_table() {
  const SpectralOptions spectral;
  return {{"lanczos_residual", spectral.tol},
          {"aldous_dense", kAldousDenseTol},
          {"aldous_lanczos", kAldousLanczosTol},
          {"containment", kContainmentTol},
          {"trace_slack", kTraceSlackTol},
          {"local_min_relative", kLocalMinRelTol},
          {"bisection_steps", static_cast<double>(kBisectionSteps)},
          {"lanczos_max_iter", static_cast<double>(spectral.max_iter)}};
}

Json tolerance_json() {
  Json out = Json::object();
  for (const auto& [name, value] : tolerance_table()) out[name] = value;
  return out;
}

std::string tolerance_csv_header() {
  std::string out;
  for (const auto& [name, value] : tolerance_table()) {
    out += "# " + name + "=" + format_double(value) + "\n";
  }
  return out;
}

std::string trace_trials_csv(std::span<const TraceTrial> trials) {
  std::string out = "seed,d,n,V,lhs,rhs,slack\n";
  for (const TraceTrial& t : trials) {
    out += std::to_string(t.seed) + ',' + std::to_string(t.d) + ',' + std::to_string(t.n) + ',' +
           std::to_string(t.size) + ',' + format_double(t.report.lhs) + ',' +
           format_double(t.report.rhs) + ',' + format_double(t.report.slack) + '\n';
  }
  return out;
}

Json trace_trial_to_json(const TraceTrial& trial) {
  Json out = trace_report_to_json(trial.report);
  out["seed"] = trial.seed;
  out["d"] = trial.d;
  out["n"] = trial.n;
  out["V"] = trial.size;
  return out;
}

Json aldous_verdict_to_json(const AldousVerdict& verdict) {
  return {{"gap_rw", verdict.gap_rw},
          {"gap_ip", verdict.gap_ip},
          {"abs_diff", verdict.abs_diff},
          {"tol", verdict.tol},
          {"holds", verdict.holds},
          {"one_sided", verdict.one_sided},
          {"ip_method", std::string(to_string(verdict.ip_method))}};
}

std::string aldous_records_csv(std::span<const AldousRecord> records) {
  std::string out = "N,points,gap_rw,gap_ip,abs_diff,holds,one_sided\n";
  for (const AldousRecord& r : records) {
    std::string points;
    for (const LatticePoint& p : r.vertices.points()) {
      if (!points.empty()) points += ' ';
      for (std::size_t i = 0; i < p.dim(); ++i) {
        points += (i == 0 ? "" : ":") + std::to_string(p[i]);
      }
    }
    out += std::to_string(r.vertices.size()) + ',' + points + ',' +
           format_double(r.verdict.gap_rw) + ',' + format_double(r.verdict.gap_ip) + ',' +
           format_double(r.verdict.abs_diff) + ',' + (r.verdict.holds ? "1" : "0") + ',' +
           (r.verdict.one_sided ? "1" : "0") + '\n';
  }
  return out;
}

namespace {

std::optional<double> ip_rw_ratio(const SequenceRow& row) {
  if (!row.gap_ip || row.gap_rw == 0.0) return std::nullopt;
  return *row.gap_ip / row.gap_rw;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }
std::string cell(const Bound& b) { return b.vacuous ? "" : format_double(b.value); }

template <typename T>
Json nullable(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::string sequence_report_csv(const SequenceReport& report) {
  std::string out = "# d=" + std::to_string(report.d) + "\n# n_max=" +
                    std::to_string(report.n_max) + "\n# ip_cap=" + std::to_string(report.ip_cap) +
                    "\n# asymptote_constant=" + format_double(report.asymptote_constant) +
                    "\n# exponent=" + format_double(report.exponent) + "\n";
  out += tolerance_csv_header();
  out += "N,n,gap_rw,gap_ip,running_min,is_local_min,K_of_N,lower_bound,upper_bound,ratio,"
         "ip_rw_ratio\n";
  for (const SequenceRow& row : report.rows) {
    out += std::to_string(row.size) + ',' + std::to_string(row.side) + ',' +
           format_double(row.gap_rw) + ',' + cell(row.gap_ip) + ',' +
           format_double(row.running_min) + ',' + (row.is_local_min ? "1" : "0") + ',' +
           std::to_string(row.k_of_n) + ',' + cell(row.lower) + ',' + cell(row.upper) + ',' +
           format_double(row.ratio) + ',' + cell(ip_rw_ratio(row)) + '\n';
  }
  return out;
}

Json sequence_report_to_json(const SequenceReport& report) {
  Json rows = Json::array();
  for (const SequenceRow& row : report.rows) {
    Json method = nullptr;
    if (row.ip_method) method = std::string(to_string(*row.ip_method));
    rows.push_back({{"N", row.size},
                    {"n", row.side},
                    {"gap_rw", row.gap_rw},
                    {"gap_ip", nullable(row.gap_ip)},
                    {"running_min", row.running_min},
                    {"is_local_min", row.is_local_min},
                    {"K_of_N", row.k_of_n},
                    {"lower_bound", bound_to_json(row.lower)},
                    {"upper_bound", bound_to_json(row.upper)},
                    {"ratio", row.ratio},
                    {"ip_rw_ratio", nullable(ip_rw_ratio(row))},
                    {"ip_method", method}});
  }
  return {{"d", report.d},
          {"n_max", report.n_max},
          {"ip_cap", report.ip_cap},
          {"asymptote_constant", report.asymptote_constant},
          {"exponent", report.exponent},
          {"tolerances", tolerance_json()},
          {"rows", std::move(rows)}};
}

Json corollary_report_to_json(const CorollaryReport& report) {
  return {{"N", report.n},
          {"gap_rw", report.gap_rw},
          {"gap_ip", report.gap_ip},
          {"min_ip", report.min_ip},
          {"argmin_ip", report.argmin_ip},
          {"ip_gaps", report.ip_gaps},
          {"aldous_residual", report.aldous_residual},
          {"min_residual", report.min_residual},
          {"holds", report.holds}};
}

Json equalized_sequence_to_json(const EqualizedSequence& sequence) {
  Json rates = Json::array();
  for (const RateFunction& q : sequence.rates) rates.push_back(rate_function_to_json(q));
  return {{"t", sequence.t},
          {"gaps", sequence.gaps},
          {"input_gaps", sequence.input_gaps},
          {"rates", std::move(rates)}};
}

}  // namespace aldous_lab
