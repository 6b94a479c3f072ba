#pragma once

// File formats. JSON uses 1-based vertex indices; CSV numbers are printed with
// 17 significant digits. Vacuous bounds and absent values are JSON null and
// empty CSV cells.

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "core/campaigns.hpp"
#include "core/generator.hpp"
#include "core/hjkn.hpp"
#include "core/lattice.hpp"
#include "core/spectral.hpp"
#include "core/trace_bounds.hpp"

namespace aldous_lab {

using Json = nlohmann::json;

/// "%.17g"; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"dim": d, "points": [[x1, ..., xd], ...]}
Json vertex_set_to_json(const VertexSet& vertices);
VertexSet vertex_set_from_json(const Json& json);

/// {"size": N, "pairs": [[i, j, rate], ...]} with 1-based i < j.
Json rate_function_to_json(const RateFunction& rates);
RateFunction rate_function_from_json(const Json& json);

/// {"gap", "method", "residual", "iterations"}
Json spectral_result_to_json(const SpectralResult& result);

/// 8-byte little-endian length, then little-endian IEEE doubles.
void write_eigenvector(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_eigenvector(const std::filesystem::path& path);

/// Row-major dense matrix, one row per line.
std::string dense_generator_csv(const SymmetricGenerator& generator);
/// {"state_space", "sites", "dimension", "actions": [[i, j, rate], ...]} (1-based).
Json action_list_to_json(const SymmetricGenerator& generator);

Json bound_to_json(const Bound& bound);
Json trace_report_to_json(const TraceReport& report);
Json gap_bound_report_to_json(const GapBoundReport& report);

/// Name/value pairs of every default tolerance, in a fixed order.
std::vector<std::pair<std::string, double>> tolerance_table();
Json tolerance_json();
/// "# name=value" lines.
std::string tolerance_csv_header();

/// seed, d, n, |V|, lhs, rhs, slack
std::string trace_trials_csv(std::span<const TraceTrial> trials);
Json trace_trial_to_json(const TraceTrial& trial);

Json aldous_verdict_to_json(const AldousVerdict& verdict);
std::string aldous_records_csv(std::span<const AldousRecord> records);

/// N, n, gap_rw, gap_ip, running_min, is_local_min, K_of_N, lower_bound,
/// upper_bound, ratio, ip_rw_ratio
std::string sequence_report_csv(const SequenceReport& report);
Json sequence_report_to_json(const SequenceReport& report);

Json corollary_report_to_json(const CorollaryReport& report);
Json equalized_sequence_to_json(const EqualizedSequence& sequence);

}  // namespace aldous_lab
