#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rvss/comparator.hpp"
#include "rvss/errors.hpp"

using namespace rvss;

namespace {

constexpr const char* kRow1Rvss = "RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:E";
constexpr const char* kRow1Cvss = "CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:H/A:H";

LoadResult load(const std::string& text, InputFormat format) {
  std::istringstream in(text);
  return load_records(in, format);
}

std::string jsonl_line(const std::string& id, const std::string& cvss, const std::string& rvss) {
  Json j = {{"id", id}, {"description", "d " + id}, {"cvss_vector", cvss}, {"rvss_vector", rvss}};
  return j.dump() + "\n";
}

}  // namespace

TEST_CASE("input format from extension") {
  CHECK(input_format_from_path("a.jsonl") == InputFormat::JsonLines);
  CHECK(input_format_from_path("a.csv") == InputFormat::Csv);
  CHECK_FALSE(input_format_from_path("a.txt").has_value());
}

TEST_CASE("JSONL loading isolates bad lines") {
  const std::string text = jsonl_line("a", kRow1Cvss, kRow1Rvss) + "{not json\n" +
                           jsonl_line("b", "CVSS:3.0/AV:Q", kRow1Rvss) +
                           jsonl_line("c", kRow1Rvss, kRow1Rvss) + "\n" +
                           R"({"id":"d","description":"only rvss","rvss_vector":")" + kRow1Rvss +
                           "\",\"tags\":[\"x\",\"y\"]}\n" + R"({"id":"e","description":"none"})" + "\n";
  const auto r = load(text, InputFormat::JsonLines);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].id == "a");
  CHECK(r.records[1].id == "d");
  CHECK_FALSE(r.records[1].cvss_vector.has_value());
  CHECK(r.records[1].tags == std::vector<std::string>{"x", "y"});
  REQUIRE(r.diagnostics.size() == 4);
  CHECK(r.diagnostics[0].line == 2);
  CHECK(r.diagnostics[0].code == "InvalidJson");
  CHECK(r.diagnostics[1].code == "UnknownValue");
  CHECK(r.diagnostics[1].id == "b");
  CHECK(r.diagnostics[2].code == "SchemeMismatch");
  CHECK(r.diagnostics[3].code == "MissingVector");
  CHECK(r.diagnostics[3].line == 7);
}

TEST_CASE("CSV loading") {
  const std::string text =
      "id,description,cvss_vector,rvss_vector,tags\r\n"
      "1,\"quoted, description\"," + std::string(kRow1Cvss) + "," + kRow1Rvss + ",a;b\r\n"
      "2,short row\r\n"
      "3,bad vector,CVSS:3.0/AV:N,,\r\n"
      "4,cvss only," + kRow1Cvss + ",,\r\n";
  const auto r = load(text, InputFormat::Csv);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].description == "quoted, description");
  CHECK(r.records[0].tags == std::vector<std::string>{"a", "b"});
  CHECK(r.records[1].id == "4");
  CHECK_FALSE(r.records[1].rvss_vector.has_value());
  REQUIRE(r.diagnostics.size() == 2);
  CHECK(r.diagnostics[0].code == "InvalidRow");
  CHECK(r.diagnostics[0].line == 3);
  CHECK(r.diagnostics[1].code == "MissingMandatory");
}

TEST_CASE("CSV header must carry the required columns") {
  try {
    load("id,description\n1,x\n", InputFormat::Csv);
    FAIL("expected EmptyCorpusError");
  } catch (const EmptyCorpusError& e) {
    REQUIRE(e.diagnostics().size() == 1);
    CHECK(e.diagnostics()[0].code == "BadHeader");
  }
}

TEST_CASE("empty corpus") {
  CHECK_THROWS_AS(load("", InputFormat::JsonLines), EmptyCorpusError);
  CHECK_THROWS_AS(load("id,description,cvss_vector,rvss_vector\n", InputFormat::Csv),
                  EmptyCorpusError);
  CHECK_THROWS_AS(load("{}\n", InputFormat::JsonLines), EmptyCorpusError);
}

TEST_CASE("missing file is an IoError") {
  CHECK_THROWS_AS(load_records(std::filesystem::path("/nonexistent/corpus.jsonl"),
                               InputFormat::JsonLines),
                  IoError);
}

TEST_CASE("builtin corpus matches its expected triples") {
  const auto corpus = builtin_corpus();
  REQUIRE(corpus.size() == 4);
  const auto result = compare(corpus);
  CHECK(result.diagnostics.empty());
  REQUIRE(result.rows.size() == 4);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(i);
    REQUIRE(corpus[i].expected_rvss);
    REQUIRE(corpus[i].expected_cvss);
    CHECK(*result.rows[i].rvss == *corpus[i].expected_rvss);
    CHECK(*result.rows[i].cvss == *corpus[i].expected_cvss);
  }
  CHECK(*result.rows[0].delta_base == doctest::Approx(-1.4));
  CHECK(*result.rows[1].delta_base == doctest::Approx(1.2));
  CHECK(*result.rows[2].delta_base == 0.0);
  CHECK(*result.rows[3].delta_base == doctest::Approx(5.9));
}

TEST_CASE("one-sided rows have no delta") {
  VulnRecord r{"x", "cvss only", std::string(kRow1Cvss), std::nullopt, {}, {}, {}};
  const auto result = compare(std::vector<VulnRecord>{r});
  REQUIRE(result.rows.size() == 1);
  CHECK_FALSE(result.rows[0].rvss.has_value());
  CHECK_FALSE(result.rows[0].delta_base.has_value());
  CHECK(emit_report(result.rows, ReportFormat::Markdown).find("| n/a |") != std::string::npos);
}

TEST_CASE("compare reports unparsable records as diagnostics") {
  std::vector<VulnRecord> records{
      {"ok", "", std::string(kRow1Cvss), std::string(kRow1Rvss), {}, {}, {}},
      {"bad", "", std::string("CVSS:3.0/AV:Q"), std::nullopt, {}, {}, {}},
  };
  const auto result = compare(records);
  CHECK(result.rows.size() == 1);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 2);
  CHECK(result.diagnostics[0].id == "bad");
}

TEST_CASE("report formats") {
  const auto rows = compare(builtin_corpus()).rows;

  const auto md = emit_report(rows, ReportFormat::Markdown);
  CHECK(md.rfind("| # | Vulnerability description | RVSSv1.0 | CVSSv3.0 |", 0) == 0);
  CHECK(md.find("(7.7, 7.7, 7.7)") != std::string::npos);
  CHECK(md.find("(10.0, 10.0, 10.0)") != std::string::npos);
  CHECK(md.find("-1.4") != std::string::npos);
  CHECK(md.find("+5.9") != std::string::npos);

  const auto csv = emit_report(rows, ReportFormat::Csv);
  CHECK(csv.rfind("id,description,rvss_vector,rvss_base,rvss_temporal,rvss_environmental,"
                  "rvss_severity,cvss_vector,cvss_base,cvss_temporal,cvss_environmental,"
                  "cvss_severity,delta_base\r\n",
                  0) == 0);
  std::size_t lines = 0;
  for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) {
    ++lines;
  }
  CHECK(lines == 5);

  const auto json = Json::parse(emit_report(rows, ReportFormat::Json));
  REQUIRE(json.is_array());
  REQUIRE(json.size() == 4);
  CHECK(json[0]["rvss"]["base"] == 7.7);
  CHECK(json[3]["cvss"]["base"] == 0.0);
  CHECK(json[3]["deltaBase"] == 5.9);
}

TEST_CASE("empty input gives header-only CSV") {
  const auto csv = emit_report({}, ReportFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
  CHECK(emit_report({}, ReportFormat::Json) == "[]\n");
}

TEST_CASE("large corpora keep input order and are deterministic") {
  std::vector<VulnRecord> records;
  for (int i = 0; i < 2000; ++i) {
    const auto* rvss = i % 2 ? kRow1Rvss : "RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:N/I:N/A:N/H:H";
    records.push_back({std::to_string(i), "", std::string(kRow1Cvss), std::string(rvss), {}, {}, {}});
  }
  const auto a = compare(records);
  const auto b = compare(records);
  REQUIRE(a.rows.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(a.rows[i].id == records[i].id);
  CHECK(emit_report(a.rows, ReportFormat::Csv) == emit_report(b.rows, ReportFormat::Csv));
}
