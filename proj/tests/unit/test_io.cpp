#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/io.hpp"

using namespace aldous_lab;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("aldous_lab_test_" + name);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 2.0, -7.25e-300, 0.6086176193690999}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("vertex set JSON") {
  const VertexSet v(2, {{1, 1}, {2, 1}, {1, 2}});
  const Json j = vertex_set_to_json(v);
  CHECK(j.dump() == R"({"dim":2,"points":[[1,1],[2,1],[1,2]]})");
  CHECK(vertex_set_from_json(j) == v);
  CHECK_THROWS_AS(vertex_set_from_json(Json::parse(R"({"dim":2,"points":[[1,1],[1,1]]})")), Error);
  CHECK_THROWS_AS(vertex_set_from_json(Json::parse(R"({"points":[]})")), Error);
}

TEST_CASE("rate function JSON") {
  const RateFunction q(3, {{0, 1, 0.5}, {1, 2, 2.0}});
  const Json j = rate_function_to_json(q);
  CHECK(j.dump() == R"({"pairs":[[1,2,0.5],[2,3,2.0]],"size":3})");
  CHECK(rate_function_from_json(j) == q);
  CHECK_THROWS_AS(rate_function_from_json(Json::parse(R"({"size":3,"pairs":[[1,2,1],[2,1,1]]})")),
                  Error);
  CHECK_THROWS_AS(rate_function_from_json(Json::parse(R"({"size":3,"pairs":[[0,1,1]]})")), Error);
  CHECK_THROWS_AS(rate_function_from_json(Json::parse(R"({"size":3,"pairs":[[1,4,1]]})")), Error);
  CHECK_THROWS_AS(rate_function_from_json(Json::parse(R"({"size":3,"pairs":[[1,2,-1]]})")), Error);
}

TEST_CASE("eigenvector files") {
  const auto path = temp_file("eigvec.bin");
  const std::vector<double> v{0.5, -0.25, 1e-300, 3.0};
  write_eigenvector(path, v);
  CHECK(std::filesystem::file_size(path) == 8 + 8 * v.size());
  CHECK(read_eigenvector(path) == v);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "abc";
  }
  CHECK_THROWS_AS(read_eigenvector(path), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_eigenvector(temp_file("missing.bin")), Error);
}

TEST_CASE("generator exports") {
  const SymmetricGenerator g = rw_generator(RateFunction(2, {{0, 1, 1.5}}));
  CHECK(dense_generator_csv(g) == "-1.5,1.5\n1.5,-1.5\n");
  const SymmetricGenerator ip = ip_generator(RateFunction(3, {{0, 2, 1.0}}), Storage::kMatrixFree);
  const Json a = action_list_to_json(ip);
  CHECK(a["state_space"] == "permutations");
  CHECK(a["dimension"] == 6);
  CHECK(a["actions"].dump() == "[[1,3,1.0]]");
}

TEST_CASE("bounds and tolerances") {
  CHECK(bound_to_json({0.5, false}) == Json(0.5));
  CHECK(bound_to_json({-0.5, true}).is_null());
  const Json t = tolerance_json();
  for (const auto& [name, value] : tolerance_table()) CHECK(t.at(name) == value);
  const std::vector<std::string> header = lines_of(tolerance_csv_header());
  CHECK(header.size() == tolerance_table().size());
  for (const std::string& line : header) CHECK(line.rfind("# ", 0) == 0);
}

TEST_CASE("campaign CSV layouts") {
  const std::vector<TraceTrial> trials = trace_fuzz_1d(5, 3, 1);
  const std::vector<std::string> t = lines_of(trace_trials_csv(trials));
  REQUIRE(t.size() == 4);
  CHECK(t[0] == "seed,d,n,V,lhs,rhs,slack");

  const SequenceReport report = ratio_table(1, 4, 3);
  const std::vector<std::string> s = lines_of(sequence_report_csv(report));
  std::size_t first = 0;
  while (first < s.size() && s[first].rfind("#", 0) == 0) ++first;
  CHECK(first > 0);
  REQUIRE(s.size() == first + 1 + report.rows.size());
  CHECK(s[first] ==
        "N,n,gap_rw,gap_ip,running_min,is_local_min,K_of_N,lower_bound,upper_bound,ratio,"
        "ip_rw_ratio");
  // N = 4 carries no IP gap and a vacuous upper bound: empty cells.
  const std::string& last = s.back();
  CHECK(last.rfind("4,4,", 0) == 0);
  CHECK(last.find(",,") != std::string::npos);

  const Json j = sequence_report_to_json(report);
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][2]["gap_ip"].is_null());
  CHECK(j["rows"][2]["upper_bound"].is_null());
}
