#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "aldous_lab/aldous_lab.h"

using Json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  alab_free_string(s);
  return out;
}

Json report_json(alab_report* r) {
  char* s = nullptr;
  REQUIRE(alab_report_json(r, &s) == ALAB_OK);
  return Json::parse(take(s));
}

}  // namespace

TEST_CASE("rates handles") {
  alab_rates* q = nullptr;
  REQUIRE(alab_rates_create(3, &q) == ALAB_OK);
  CHECK(alab_rates_size(q) == 3);
  CHECK(alab_rates_set(q, 0, 1, 2.0) == ALAB_OK);
  CHECK(alab_rates_set(q, 2, 1, 0.5) == ALAB_OK);
  double r = 0.0;
  CHECK(alab_rates_get(q, 1, 2, &r) == ALAB_OK);
  CHECK(r == 0.5);
  CHECK(alab_rates_set(q, 0, 0, 1.0) == ALAB_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(alab_last_error()) > 0);
  CHECK(alab_rates_set(q, 0, 3, 1.0) == ALAB_ERR_INVALID_ARGUMENT);
  char* json = nullptr;
  REQUIRE(alab_rates_to_json(q, &json) == ALAB_OK);
  const std::string text = take(json);
  CHECK(Json::parse(text)["pairs"].size() == 2);
  alab_rates* copy = nullptr;
  REQUIRE(alab_rates_from_json(text.c_str(), &copy) == ALAB_OK);
  CHECK(alab_rates_get(copy, 0, 1, &r) == ALAB_OK);
  CHECK(r == 2.0);
  alab_rates_destroy(copy);
  alab_rates_destroy(q);

  alab_rates* sq = nullptr;
  REQUIRE(alab_rates_from_json(R"({"dim":2,"points":[[1,1],[2,1],[1,2],[2,2]]})", &sq) == ALAB_OK);
  CHECK(alab_rates_size(sq) == 4);
  alab_rates_destroy(sq);
  CHECK(alab_rates_from_json("{not json", &sq) == ALAB_ERR_INVALID_ARGUMENT);
  CHECK(alab_rates_create(3, nullptr) == ALAB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(alab_version()).size() > 0);
}

TEST_CASE("gaps through the C interface") {
  alab_options o;
  alab_options_init(&o);
  alab_rates* cube = nullptr;
  REQUIRE(alab_rates_hypercube(2, 3, &cube) == ALAB_OK);
  double gap = 0.0, closed = 0.0;
  const auto path = std::filesystem::temp_directory_path() / "aldous_lab_capi_vec.bin";
  char* json = nullptr;
  REQUIRE(alab_gap(cube, ALAB_PROCESS_RW, &o, &gap, &json, path.string().c_str()) == ALAB_OK);
  REQUIRE(alab_closed_form_gap(2, 3, &closed) == ALAB_OK);
  CHECK(gap == doctest::Approx(closed).epsilon(1e-12));
  CHECK(Json::parse(take(json))["gap"].get<double>() == gap);
  CHECK(std::filesystem::file_size(path) == 8 + 8 * 9);
  std::filesystem::remove(path);

  double ip = 0.0;
  alab_rates* v6 = nullptr;
  REQUIRE(alab_rates_traceable(2, 6, &v6) == ALAB_OK);
  REQUIRE(alab_gap(v6, ALAB_PROCESS_IP, &o, &ip, nullptr, nullptr) == ALAB_OK);
  CHECK(ip == doctest::Approx(1.0).epsilon(1e-10));
  char* spec = nullptr;
  REQUIRE(alab_spectrum(v6, ALAB_PROCESS_RW, &spec) == ALAB_OK);
  CHECK(Json::parse(take(spec))["eigenvalues"].size() == 6);
  char* csv = nullptr;
  REQUIRE(alab_generator_export(v6, ALAB_PROCESS_RW, ALAB_EXPORT_DENSE_CSV, &csv) == ALAB_OK);
  CHECK(std::count(csv, csv + std::strlen(csv), '\n') == 6);
  alab_free_string(csv);
  alab_rates_destroy(v6);
  alab_rates_destroy(cube);

  alab_rates* big = nullptr;
  REQUIRE(alab_rates_create(10, &big) == ALAB_OK);
  for (size_t i = 0; i + 1 < 10; ++i) alab_rates_set(big, i, i + 1, 1.0);
  CHECK(alab_gap(big, ALAB_PROCESS_IP, &o, &ip, nullptr, nullptr) == ALAB_ERR_RESOURCE_LIMIT);
  alab_rates_destroy(big);
}

TEST_CASE("campaign reports") {
  alab_options o;
  alab_options_init(&o);
  alab_report* r = nullptr;

  REQUIRE(alab_trace_negative_control(&r) == ALAB_OK);
  CHECK(alab_report_violations(r) == 1);
  const Json neg = report_json(r);
  CHECK(neg["violation_count"] == 1);
  CHECK(neg["violations"][0].contains("residual"));
  CHECK(neg.contains("tolerances"));
  alab_report_destroy(r);

  REQUIRE(alab_trace_fuzz(2, 3, 20, &o, &r) == ALAB_OK);
  CHECK(alab_report_violations(r) == 0);
  char* csv = nullptr;
  REQUIRE(alab_report_csv(r, &csv) == ALAB_OK);
  CHECK(take(csv).rfind("# ", 0) == 0);
  alab_report_destroy(r);

  REQUIRE(alab_sequence(2, 7, &o, &r) == ALAB_OK);
  CHECK(alab_report_violations(r) == 0);
  alab_report_destroy(r);
  CHECK(alab_sequence(2, 8, &o, &r) == ALAB_ERR_HYPOTHESIS);
  CHECK(std::string(alab_last_error()).find("k = 7") != std::string::npos);

  REQUIRE(alab_containment(4, 5, &o, &r) == ALAB_OK);
  CHECK(alab_report_violations(r) == 0);
  alab_report_destroy(r);

  REQUIRE(alab_ratio_table(1, 6, 4, &o, &r) == ALAB_OK);
  CHECK(alab_report_violations(r) == 0);
  alab_report_destroy(r);

  REQUIRE(alab_aldous_exhaustive_z2(4, &o, &r) == ALAB_OK);
  CHECK(alab_report_violations(r) == 0);
  alab_report_destroy(r);
}
