#include "iwasawa/data_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "test_util.hpp"

using iwasawa::AbelianPGroupShape;
using iwasawa::SurveyRecord;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("ingest parses, deduplicates, and flags inadmissible layers") {
  std::string path = write_temp("ingest_basic.csv",
                                "# externally computed records\n"
                                "d,a0,a1\n"
                                "-9748,1,2\n"
                                "-3321,1,1.1   # order 9 but wrong shape\n"
                                "-4027,1,2.1\n"
                                "-9748,1,3\n"
                                "-5000,2,3\n"
                                "-6000,1.1,2\n"
                                "-7000,1,1\n");
  iwasawa::IngestReport report = iwasawa::ingest_csv(path, 3);
  REQUIRE(report.records.size() == 6);  // the duplicate -9748 line is dropped
  CHECK(report.warnings.size() == 1);
  CHECK(report.warnings[0].find("-9748") != std::string::npos);
  CHECK(report.warnings[0].find(":6") != std::string::npos);

  // [1,1] has order p^2 but is not a possible first layer over Z/3, and a
  // first layer can never have order <= the base order
  REQUIRE(report.anomalies.size() == 2);
  CHECK(report.anomalies[0].find("-3321") != std::string::npos);
  CHECK(report.anomalies[1].find("-7000") != std::string::npos);
  CHECK(report.records[1].anomalous);
  CHECK_FALSE(report.records[0].anomalous);
  CHECK_FALSE(report.records[2].anomalous);  // [2,1] is admissible at r = 2
  CHECK_FALSE(report.records[3].anomalous);  // cyclic 27 over base 9
  CHECK_FALSE(report.records[4].anomalous);  // non-cyclic base: no constraint

  CHECK(report.records[0].d == "-9748");
  CHECK(report.records[0].a0 == AbelianPGroupShape({1}));
  CHECK(report.records[0].a1 == AbelianPGroupShape({2}));
  std::remove(path.c_str());
}

TEST_CASE("ingest rejects malformed input with the line number") {
  auto error_of = [](const std::string& path) {
    try {
      iwasawa::ingest_csv(path, 3);
    } catch (const std::runtime_error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  std::string bad_shape = write_temp("ingest_bad_shape.csv", "d,a0,a1\n-5,1,2\n-7,1,zz\n");
  CHECK(error_of(bad_shape).find(":3:") != std::string::npos);
  std::string bad_d = write_temp("ingest_bad_d.csv", "d,a0,a1\n-xyz,1,2\n");
  CHECK(error_of(bad_d).find(":2:") != std::string::npos);
  std::string bad_fields = write_temp("ingest_bad_fields.csv", "d,a0,a1\n-5,1\n");
  CHECK(error_of(bad_fields).find(":2:") != std::string::npos);
  std::string bad_header = write_temp("ingest_bad_header.csv", "disc,a0,a1\n-5,1,2\n");
  CHECK(error_of(bad_header).find("header") != std::string::npos);
  std::string no_header = write_temp("ingest_no_header.csv", "# only a comment\n");
  CHECK(error_of(no_header).find("header") != std::string::npos);
  CHECK_THROWS_AS(iwasawa::ingest_csv("/nonexistent/nowhere.csv", 3), std::runtime_error);
  for (const std::string& p : {bad_shape, bad_d, bad_fields, bad_header, no_header})
    std::remove(p.c_str());
}

TEST_CASE("render and ingest round-trip, and tabulation is idempotent under it") {
  std::vector<SurveyRecord> records = iwasawa::synthetic_records(3, 1, 4);
  records.push_back({"-900001", AbelianPGroupShape({2}), AbelianPGroupShape({3}), "", false});
  std::string path = write_temp("roundtrip.csv", iwasawa::render_csv(records));
  iwasawa::IngestReport report = iwasawa::ingest_csv(path, 3);
  REQUIRE(report.records.size() == records.size());
  CHECK(report.anomalies.empty());
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(report.records[i].d == records[i].d);
    CHECK(report.records[i].a0 == records[i].a0);
    CHECK(report.records[i].a1 == records[i].a1);
  }
  iwasawa::Tabulation before = iwasawa::tabulate(records, 3, 1);
  iwasawa::Tabulation after = iwasawa::tabulate(report.records, 3, 1);
  REQUIRE(before.rows.size() == after.rows.size());
  CHECK(before.matching == after.matching);
  CHECK(before.excluded == after.excluded);
  for (size_t i = 0; i < before.rows.size(); ++i) {
    CHECK(before.rows[i].shape == after.rows[i].shape);
    CHECK(before.rows[i].count == after.rows[i].count);
    CHECK(before.rows[i].empirical == after.rows[i].empirical);
  }
  std::remove(path.c_str());
}

TEST_CASE("synthetic data tabulates with exactly zero deviation") {
  std::vector<SurveyRecord> synth = iwasawa::synthetic_records(3, 1, 10);
  CHECK(synth.size() == 59048);  // 3^10 - 1: everything except the tail
  iwasawa::Tabulation table = iwasawa::tabulate(synth, 3, 1);
  CHECK(table.matching == 59048);
  CHECK(table.excluded == 0);
  CHECK(table.anomalous == 0);
  CHECK(table.max_r == 10);
  CHECK(table.rows.size() == 11);
  CHECK(table.max_abs_deviation == 0);
  CHECK(table.mean_abs_deviation == 0);

  // a deeper base, same exact fixed point
  std::vector<SurveyRecord> synth2 = iwasawa::synthetic_records(3, 2, 10);
  iwasawa::Tabulation table2 = iwasawa::tabulate(synth2, 3, 2);
  CHECK(table2.matching == 59048);
  CHECK(table2.max_abs_deviation == 0);
}

TEST_CASE("re-expanded aggregate counts reproduce the published survey row") {
  // fractions of the 18315-discriminant aggregate, in predicted shape order
  const std::vector<double> computed{0.6669, 0.1118, 0.1104, 0.0728, 0.0267, 0.0079,
                                     0.0023, 0.0008, 0.0003, 0.0001, 0.0001};
  const std::vector<std::string> predicted4{"0.6667", "0.1111", "0.1111", "0.0741",
                                            "0.0247", "0.0082", "0.0027", "0.0009",
                                            "0.0003", "0.0001", "0.0000"};
  iwasawa::PredictedDistribution dist = iwasawa::predicted_a1_distribution(3, 1, 10);
  REQUIRE(dist.shares.size() == 11);
  std::vector<SurveyRecord> records;
  long next = 1;
  for (size_t i = 0; i < dist.shares.size(); ++i) {
    long count = std::lround(computed[i] * 18315);
    for (long k = 0; k < count; ++k)
      records.push_back({"-" + std::to_string(next++), AbelianPGroupShape({1}),
                         dist.shares[i].shape, "", false});
  }
  iwasawa::Tabulation table = iwasawa::tabulate(records, 3, 1);
  REQUIRE(table.rows.size() == 11);
  for (size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(std::abs(table.rows[i].empirical.get_d() - computed[i]) <= 1e-4);
    CHECK(iwasawa::format_fixed(table.rows[i].predicted, 4) == predicted4[i]);
  }
  // empirical agreement with the prediction at the survey's own resolution
  CHECK(table.max_abs_deviation.get_d() < 0.005);

  // text and JSON carry the identical numeric content
  std::string text = iwasawa::render_text(table);
  nlohmann::json j = nlohmann::json::parse(iwasawa::render_json(table));
  REQUIRE(j["rows"].size() == 11);
  CHECK(j["matching"].get<long long>() == table.matching);
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const nlohmann::json& row = j["rows"][i];
    CHECK(row["shape"].get<std::string>() == table.rows[i].shape.str());
    CHECK(row["count"].get<long long>() == table.rows[i].count);
    CHECK(row["empirical"].get<std::string>() ==
          iwasawa::format_fixed(table.rows[i].empirical, 4));
    CHECK(row["predicted"].get<std::string>() == predicted4[i]);
    CHECK(text.find(row["empirical"].get<std::string>()) != std::string::npos);
    CHECK(text.find(row["predicted"].get<std::string>()) != std::string::npos);
    CHECK(text.find(row["group"].get<std::string>()) != std::string::npos);
  }
  CHECK(text.find("matching=18317") != std::string::npos);
}

TEST_CASE("records outside the base filter are excluded with a count") {
  std::vector<SurveyRecord> records = iwasawa::synthetic_records(3, 2, 10);
  size_t deep = records.size();
  for (SurveyRecord& extra : iwasawa::synthetic_records(3, 1, 3)) {
    extra.d += "000000";  // keep keys distinct from the m=2 block
    records.push_back(extra);
  }
  iwasawa::Tabulation table = iwasawa::tabulate(records, 3, 2);
  CHECK(table.matching == static_cast<long long>(deep));
  CHECK(table.excluded == static_cast<long long>(records.size() - deep));
  CHECK(table.max_abs_deviation == 0);

  iwasawa::Tabulation empty = iwasawa::tabulate({}, 3, 1);
  CHECK(empty.matching == 0);
  CHECK_FALSE(empty.note.empty());
  CHECK(iwasawa::render_text(empty).find("note") != std::string::npos);
}

TEST_CASE("anomalous records are reported but kept out of the rows") {
  std::vector<SurveyRecord> records = iwasawa::synthetic_records(3, 1, 10);
  SurveyRecord bad{"-999999", AbelianPGroupShape({1}), AbelianPGroupShape({1, 1}),
                   "synthetic", true};
  records.push_back(bad);
  iwasawa::Tabulation table = iwasawa::tabulate(records, 3, 1);
  CHECK(table.matching == static_cast<long long>(records.size()));
  CHECK(table.anomalous == 1);
  long long tabulated = 0;
  for (const auto& row : table.rows) tabulated += row.count;
  CHECK(tabulated == static_cast<long long>(records.size()) - 1);
  CHECK(table.max_abs_deviation == 0);  // denominator excludes the anomaly
}

TEST_CASE("function-field renderers expose the records and the comparison") {
  iwasawa::FFSurvey survey = iwasawa::survey_ff(3, 7, 12, 1);
  std::string text = iwasawa::render_ff_text(survey);
  CHECK(text.find("family=189") != std::string::npos);
  CHECK(text.find("surveyed=12") != std::string::npos);
  // every record appears as a TSV row: c0..c7, h0, e0, h1, e1, class
  for (const iwasawa::FirstLayerRecord& rec : survey.records) {
    std::string row = "0";
    for (int i = 1; i <= 7; ++i) row += "," + std::to_string(rec.h.coeff(i));
    row += "\t" + rec.h0.get_str() + "\t" + std::to_string(rec.e0) + "\t" +
           rec.h1.get_str() + "\t" + std::to_string(rec.e1) + "\t" + rec.label;
    CHECK(text.find(row) != std::string::npos);
  }
  nlohmann::json j = nlohmann::json::parse(iwasawa::render_ff_json(survey));
  CHECK(j["family_size"].get<long long>() == 189);
  REQUIRE(j["records"].size() == survey.records.size());
  long long hist_total = 0;
  for (const auto& [key, value] : j["e0_histogram"].items()) {
    (void)key;
    hist_total += value.get<long long>();
  }
  CHECK(hist_total == 12);
  for (size_t i = 0; i < survey.records.size(); ++i) {
    CHECK(j["records"][i]["h0"].get<std::string>() == survey.records[i].h0.get_str());
    CHECK(j["records"][i]["e1"].get<int>() == survey.records[i].e1);
    CHECK(j["records"][i]["class"].get<std::string>() == survey.records[i].label);
    REQUIRE(j["records"][i]["h"].size() == 8);
    CHECK(j["records"][i]["h"][7].get<long>() == 1);
  }
  // the e0 = 1 comparison block lists every order class with its prediction
  if (j.contains("order_classes") && !j["order_classes"].empty()) {
    CHECK(j["order_classes"][0]["class"].get<std::string>() == "9");
    CHECK(j["order_classes"][0]["predicted"].get<std::string>() == "0.6667");
    CHECK(text.find("0.6667") != std::string::npos);
  }
}
