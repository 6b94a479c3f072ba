// aldous-lab: command-line front end over the C interface.
//
// Exit status: 0 when every asserted inequality holds, 1 when a violation was
// recorded (the report is still written), 2 on usage, input or resource errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aldous_lab/aldous_lab.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kSchemaVersion = 1;

const std::vector<std::string> kCommands = {"gap",        "spectrum",    "aldous-check",
                                            "trace-fuzz", "sequence",    "ratio-table",
                                            "containment"};

struct Params {
  int d = 2;
  int n = 3;
  std::size_t size = 0;
  double tol = 0.0;
  double solver_tol = 1e-9;
  int max_iter = 500;
  std::string method = "auto";
  std::uint64_t seed = 1;
  int jobs = 1;
  int ip_cap = 8;
  int n_max = 10;
  int max_vertices = 6;
  std::size_t trials = 0;
  std::string format;
  std::string out;
  std::string graph = "hypercube";
  std::string process = "rw";
  std::string eigenvector;
  std::string export_generator;
  bool exhaustive_z2 = false;
  bool negative_control = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  LibraryError(alab_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  alab_status status;
};

void check(alab_status status) {
  if (status != ALAB_OK) throw LibraryError(status, alab_last_error());
}

struct RatesDeleter {
  void operator()(alab_rates* r) const { alab_rates_destroy(r); }
};
struct ReportDeleter {
  void operator()(alab_report* r) const { alab_report_destroy(r); }
};
using RatesPtr = std::unique_ptr<alab_rates, RatesDeleter>;
using ReportPtr = std::unique_ptr<alab_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  alab_free_string(s);
  return out;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Params& p, const std::string& text) {
  if (p.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(p.out, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + p.out);
}

alab_options library_options(const Params& p) {
  alab_options o;
  alab_options_init(&o);
  o.solver_tol = p.solver_tol;
  o.check_tol = p.tol;
  o.max_iter = p.max_iter;
  o.jobs = p.jobs;
  o.seed = p.seed;
  if (p.method == "auto") {
    o.method = ALAB_METHOD_AUTO;
  } else if (p.method == "dense") {
    o.method = ALAB_METHOD_DENSE;
  } else if (p.method == "lanczos") {
    o.method = ALAB_METHOD_LANCZOS;
  } else {
    throw UsageError("--method must be auto, dense or lanczos");
  }
  return o;
}

int process_code(const Params& p) {
  if (p.process == "rw") return ALAB_PROCESS_RW;
  if (p.process == "ip") return ALAB_PROCESS_IP;
  throw UsageError("--process must be rw or ip");
}

RatesPtr load_graph(const Params& p) {
  alab_rates* raw = nullptr;
  if (p.graph == "hypercube") {
    check(alab_rates_hypercube(p.d, p.n, &raw));
  } else if (p.graph == "traceable" || p.graph == "path") {
    if (p.size < 2) throw UsageError("--graph " + p.graph + " needs --N >= 2");
    check(alab_rates_traceable(p.graph == "path" ? 1 : p.d, p.size, &raw));
  } else {
    check(alab_rates_from_json(read_file(p.graph).c_str(), &raw));
  }
  return RatesPtr(raw);
}

std::string format_or(const Params& p, const std::string& fallback) {
  const std::string f = p.format.empty() ? fallback : p.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

int emit_report(const Params& p, alab_report* raw, const std::string& default_format,
                const std::string& command) {
  ReportPtr report(raw);
  char* text = nullptr;
  if (format_or(p, default_format) == "json") {
    check(alab_report_json(report.get(), &text));
  } else {
    check(alab_report_csv(report.get(), &text));
  }
  emit(p, take_string(text));
  const std::size_t violations = alab_report_violations(report.get());
  if (violations == 0) return kExitOk;
  std::cerr << command << ": " << violations << " violation(s) recorded\n";
  if (format_or(p, default_format) == "csv") {
    char* json = nullptr;
    check(alab_report_json(report.get(), &json));
    Json parsed = Json::parse(take_string(json));
    std::cerr << parsed["violations"].dump() << "\n";
  }
  return kExitViolation;
}

int run_gap(const Params& p) {
  RatesPtr rates = load_graph(p);
  const int process = process_code(p);
  if (!p.export_generator.empty()) {
    char* text = nullptr;
    if (p.export_generator == "csv") {
      check(alab_generator_export(rates.get(), process, ALAB_EXPORT_DENSE_CSV, &text));
    } else if (p.export_generator == "json") {
      check(alab_generator_export(rates.get(), process, ALAB_EXPORT_ACTIONS_JSON, &text));
    } else {
      throw UsageError("--export-generator must be csv or json");
    }
    std::string body = take_string(text);
    if (body.empty() || body.back() != '\n') body += '\n';
    emit(p, body);
    return kExitOk;
  }
  const alab_options o = library_options(p);
  char* json = nullptr;
  check(alab_gap(rates.get(), process, &o, nullptr, &json,
                 p.eigenvector.empty() ? nullptr : p.eigenvector.c_str()));
  Json result = Json::parse(take_string(json));
  if (format_or(p, "json") == "json") {
    emit(p, result.dump(2) + "\n");
  } else {
    emit(p, "process,N,gap,method,residual,iterations\n" + result["process"].get<std::string>() +
                "," + std::to_string(result["N"].get<std::size_t>()) + "," +
                format_double(result["gap"].get<double>()) + "," +
                result["method"].get<std::string>() + "," +
                format_double(result["residual"].get<double>()) + "," +
                std::to_string(result["iterations"].get<int>()) + "\n");
  }
  return kExitOk;
}

int run_spectrum(const Params& p) {
  RatesPtr rates = load_graph(p);
  char* json = nullptr;
  check(alab_spectrum(rates.get(), process_code(p), &json));
  Json result = Json::parse(take_string(json));
  if (format_or(p, "json") == "json") {
    emit(p, result.dump(2) + "\n");
  } else {
    std::string text = "index,eigenvalue\n";
    std::size_t i = 0;
    for (const Json& v : result["eigenvalues"]) {
      text += std::to_string(i++) + "," + format_double(v.get<double>()) + "\n";
    }
    emit(p, text);
  }
  return kExitOk;
}

int run_aldous_check(const Params& p) {
  const alab_options o = library_options(p);
  alab_report* report = nullptr;
  if (p.exhaustive_z2) {
    check(alab_aldous_exhaustive_z2(p.max_vertices, &o, &report));
    return emit_report(p, report, "csv", "aldous-check");
  }
  RatesPtr rates = load_graph(p);
  check(alab_aldous_check(rates.get(), &o, &report));
  return emit_report(p, report, "json", "aldous-check");
}

int run_trace_fuzz(const Params& p) {
  alab_report* report = nullptr;
  if (p.negative_control) {
    check(alab_trace_negative_control(&report));
  } else {
    const alab_options o = library_options(p);
    check(alab_trace_fuzz(p.d, p.n, p.trials == 0 ? 1000 : p.trials, &o, &report));
  }
  return emit_report(p, report, "csv", "trace-fuzz");
}

int run_sequence(const Params& p) {
  const alab_options o = library_options(p);
  alab_report* report = nullptr;
  check(alab_sequence(p.d, p.size == 0 ? 6 : p.size, &o, &report));
  return emit_report(p, report, "json", "sequence");
}

int run_ratio_table(const Params& p) {
  const alab_options o = library_options(p);
  alab_report* report = nullptr;
  check(alab_ratio_table(p.d, p.n_max, p.ip_cap, &o, &report));
  return emit_report(p, report, "csv", "ratio-table");
}

int run_containment(const Params& p) {
  const alab_options o = library_options(p);
  alab_report* report = nullptr;
  check(alab_containment(p.size == 0 ? 5 : p.size, p.trials == 0 ? 50 : p.trials, &o, &report));
  return emit_report(p, report, "json", "containment");
}

// Turns {"schema_version": 1, "command": ..., "params": {...}} into arguments
// placed before the command-line flags, so explicit flags take precedence.
struct ConfigArgs {
  std::optional<std::string> command;
  std::vector<std::string> args;
};

ConfigArgs config_arguments(const std::string& path) {
  Json config = Json::parse(read_file(path), nullptr, false);
  if (config.is_discarded() || !config.is_object()) throw UsageError(path + " is not a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (key != "schema_version" && key != "command" && key != "params") {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  if (!config.contains("schema_version") || !config["schema_version"].is_number_integer() ||
      config["schema_version"].get<int>() != kSchemaVersion) {
    throw UsageError("config schema_version must be " + std::to_string(kSchemaVersion));
  }
  ConfigArgs out;
  if (config.contains("command")) {
    if (!config["command"].is_string()) throw UsageError("config command must be a string");
    out.command = config["command"].get<std::string>();
  }
  if (!config.contains("params")) return out;
  if (!config["params"].is_object()) throw UsageError("config params must be an object");
  for (const auto& [key, value] : config["params"].items()) {
    std::string flag = "--" + key;
    for (char& c : flag) {
      if (c == '_') c = '-';
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) out.args.push_back(flag);
    } else if (value.is_string()) {
      out.args.push_back(flag);
      out.args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      out.args.push_back(flag);
      out.args.push_back(value.is_number_float() ? format_double(value.get<double>())
                                                 : value.dump());
    } else {
      throw UsageError("config param '" + key + "' must be a boolean, number or string");
    }
  }
  return out;
}

bool is_command(const std::string& s) {
  for (const std::string& c : kCommands) {
    if (c == s) return true;
  }
  return false;
}

std::vector<std::string> expand_arguments(int argc, char** argv) {
  std::vector<std::string> user(argv + 1, argv + argc);
  std::optional<std::string> config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (user[i] == "--config") {
      if (i + 1 >= user.size()) throw UsageError("--config needs a path");
      config_path = user[++i];
    } else if (user[i].rfind("--config=", 0) == 0) {
      config_path = user[i].substr(9);
    } else {
      rest.push_back(user[i]);
    }
  }
  if (!config_path) return rest;
  ConfigArgs config = config_arguments(*config_path);
  std::vector<std::string> out;
  if (!rest.empty() && is_command(rest.front())) {
    out.push_back(rest.front());
    rest.erase(rest.begin());
  } else if (config.command) {
    out.push_back(*config.command);
  }
  out.insert(out.end(), config.args.begin(), config.args.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void add_output_options(CLI::App* sub, Params& p) {
  sub->add_option("--format", p.format, "json or csv");
  sub->add_option("--out", p.out, "Output file (default: stdout)");
}

void add_solver_options(CLI::App* sub, Params& p) {
  sub->add_option("--solver-tol", p.solver_tol, "Lanczos residual target");
  sub->add_option("--max-iter", p.max_iter, "Lanczos operator applications");
  sub->add_option("--method", p.method, "auto, dense or lanczos");
}

void add_graph_options(CLI::App* sub, Params& p) {
  sub->add_option("--graph", p.graph,
                  "hypercube, traceable, path, or a JSON file (vertex set or rates)");
  sub->add_option("--d", p.d, "Lattice dimension");
  sub->add_option("--n", p.n, "Hypercube side");
  sub->add_option("--N", p.size, "Number of vertices (traceable, path)");
}

}  // namespace

int main(int argc, char** argv) {
  Params p;
  CLI::App app{"Spectral gaps of the random walk and the interchange process on lattice graphs",
               "aldous-lab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", alab_version());
  app.add_option("--config", "JSON job file with schema_version, command and params");

  CLI::App* gap = app.add_subcommand("gap", "Spectral gap of the RW or IP generator");
  add_graph_options(gap, p);
  add_solver_options(gap, p);
  add_output_options(gap, p);
  gap->add_option("--process", p.process, "rw or ip");
  gap->add_option("--eigenvector", p.eigenvector, "Write the gap eigenvector (binary)");
  gap->add_option("--export-generator", p.export_generator,
                  "Export the generator instead: csv (dense) or json (action list)");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Full spectrum of -Omega");
  add_graph_options(spectrum, p);
  add_output_options(spectrum, p);
  spectrum->add_option("--process", p.process, "rw or ip");

  CLI::App* aldous = app.add_subcommand("aldous-check", "Compare IP and RW gaps");
  add_graph_options(aldous, p);
  add_solver_options(aldous, p);
  add_output_options(aldous, p);
  aldous->add_option("--tol", p.tol, "Equality tolerance (relative to max(1, gap))");
  aldous->add_flag("--exhaustive-z2", p.exhaustive_z2,
                   "All connected subsets of Z^2 up to translation");
  aldous->add_option("--max-vertices", p.max_vertices, "Largest subset size (<= 7)");
  aldous->add_option("--jobs", p.jobs, "Worker threads");

  CLI::App* trace = app.add_subcommand("trace-fuzz", "Randomized trace inequality trials");
  add_output_options(trace, p);
  trace->add_option("--d", p.d, "Dimension (1: path inequality)");
  trace->add_option("--n", p.n, "Side n (d = 1: largest n)");
  trace->add_option("--trials", p.trials, "Number of trials (default 1000)");
  trace->add_option("--seed", p.seed, "Campaign seed");
  trace->add_option("--tol", p.tol, "Allowed negative slack");
  trace->add_flag("--negative-control", p.negative_control,
                  "Evaluate the non-traceable control set instead");

  CLI::App* sequence = app.add_subcommand("sequence", "Equalized sequence and gap checks");
  add_solver_options(sequence, p);
  add_output_options(sequence, p);
  sequence->add_option("--d", p.d, "Dimension");
  sequence->add_option("--N", p.size, "Last sequence size (<= 9, default 6)");
  sequence->add_option("--tol", p.tol, "Equality tolerance");

  CLI::App* ratio = app.add_subcommand("ratio-table", "Gap table along the traceable sequence");
  add_solver_options(ratio, p);
  add_output_options(ratio, p);
  ratio->add_option("--d", p.d, "Dimension");
  ratio->add_option("--n-max", p.n_max, "Largest hypercube side");
  ratio->add_option("--ip-cap", p.ip_cap, "Largest N with an IP gap (<= 9)");
  ratio->add_option("--tol", p.tol, "IP/RW equality tolerance");
  ratio->add_option("--jobs", p.jobs, "Worker threads");

  CLI::App* containment = app.add_subcommand("containment", "RW spectrum inside IP spectrum");
  add_output_options(containment, p);
  containment->add_option("--N", p.size, "Number of vertices (default 5)");
  containment->add_option("--trials", p.trials, "Random rate functions (default 50)");
  containment->add_option("--seed", p.seed, "Campaign seed");
  containment->add_option("--tol", p.tol, "Eigenvalue matching tolerance");

  try {
    std::vector<std::string> args = expand_arguments(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gap) return run_gap(p);
    if (*spectrum) return run_spectrum(p);
    if (*aldous) return run_aldous_check(p);
    if (*trace) return run_trace_fuzz(p);
    if (*sequence) return run_sequence(p);
    if (*ratio) return run_ratio_table(p);
    if (*containment) return run_containment(p);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "error (status " << static_cast<int>(e.status) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
