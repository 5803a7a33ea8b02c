#include <stdexcept>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "banditsim/errors.hpp"
#include "banditsim/ingest.hpp"
#include "doctest.h"
#include "testutil.hpp"

using banditsim::ColumnMapping;
using banditsim::Dataset;
using banditsim::MissingPolicy;
using banditsim::SchemaError;
using banditsim::ValueError;
using banditsim::encode_arm;
using banditsim::encode_outcome;
using banditsim::load_csv;

namespace {

ColumnMapping fixture_mapping() {
  ColumnMapping mapping;
  mapping.aspirin_col = "RXASP";
  mapping.heparin_col = "RXHEP";
  mapping.outcome_col = "ID14";
  mapping.context_cols = {"AF"};
  mapping.value_maps["RXASP"] = {{"Y", 1}, {"N", 0}};
  mapping.value_maps["RXHEP"] = {{"M", 1}, {"L", 1}, {"N", 0}};
  mapping.value_maps["ID14"] = {{"Y", 1}, {"N", 0}};
  mapping.value_maps["AF"] = {{"Y", 1}, {"N", 0}};
  return mapping;
}

struct AuditRow {
  std::uint64_t sequence;
  std::size_t arm;
  int context;
  int outcome;
};

std::vector<AuditRow> load_audit() {
  std::ifstream file(testutil::data_dir() / "ist_fixture_audit.csv");
  REQUIRE(file.good());
  std::vector<AuditRow> rows;
  std::string line;
  std::getline(file, line);  // header
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    AuditRow row{};
    char comma;
    std::istringstream fields(line);
    fields >> row.sequence >> comma >> row.arm >> comma >> row.context >> comma >> row.outcome;
    REQUIRE_FALSE(fields.fail());
    rows.push_back(row);
  }
  return rows;
}

std::string fixture_text() { return testutil::read_file(testutil::data_dir() / "ist_fixture.csv"); }

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("arm encoding is the 2x2 treatment cell") {
    CHECK(encode_arm(0, 0) == 0);
    CHECK(encode_arm(1, 0) == 1);
    CHECK(encode_arm(0, 1) == 2);
    CHECK(encode_arm(1, 1) == 3);
    CHECK_THROWS_AS(encode_arm(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(encode_arm(0, -1), std::invalid_argument);
  }

  TEST_CASE("outcome encoding negates the death indicator") {
    CHECK(encode_outcome(1) == 0);
    CHECK(encode_outcome(0) == 1);
    CHECK_THROWS_AS(encode_outcome(2), std::invalid_argument);
  }

  TEST_CASE("the bundled fixture loads completely and matches its audit") {
    const Dataset dataset = load_csv((testutil::data_dir() / "ist_fixture.csv").string(),
                                     fixture_mapping());
    CHECK(dataset.records.size() == 40);
    CHECK(dataset.excluded == 0);
    CHECK(dataset.d == 1);
    CHECK(dataset.k == 4);

    const std::vector<AuditRow> audit = load_audit();
    REQUIRE(audit.size() == 40);
    for (std::size_t i = 0; i < 40; ++i) {
      CAPTURE(i);
      CHECK(dataset.records[i].sequence == audit[i].sequence);
      CHECK(dataset.records[i].arm == audit[i].arm);
      REQUIRE(dataset.records[i].context.size() == 1);
      CHECK(dataset.records[i].context[0] == audit[i].context);
      CHECK(dataset.records[i].outcome == audit[i].outcome);
    }
  }

  TEST_CASE("either heparin dose code collapses to heparin given") {
    const Dataset dataset = load_csv((testutil::data_dir() / "ist_fixture.csv").string(),
                                     fixture_mapping());
    // row 1 carries dose code M, row 9 dose code L, both with aspirin
    CHECK(dataset.records[1].arm == 3);
    CHECK(dataset.records[9].arm == 3);
    // row 11 is heparin-only at dose L
    CHECK(dataset.records[11].arm == 2);
  }

  TEST_CASE("a blank consulted cell follows the drop policy and is counted") {
    testutil::TempDir tmp("ingest_blank");
    std::string text = fixture_text();
    // blank out the ID14 value of the first data row (ends ...,N,N)
    const std::size_t first_newline = text.find('\n');
    std::size_t second_newline = text.find('\n', first_newline + 1);
    std::string first_row = text.substr(first_newline + 1, second_newline - first_newline - 1);
    REQUIRE(first_row.back() == 'N');
    first_row.back() = ' ';
    text = text.substr(0, first_newline + 1) + first_row + text.substr(second_newline);
    testutil::write_file(tmp.path() / "blank.csv", text);

    const Dataset dropped = load_csv((tmp.path() / "blank.csv").string(), fixture_mapping());
    CHECK(dropped.records.size() == 39);
    CHECK(dropped.excluded == 1);
    // dropped rows do not leave gaps in the sequence numbering
    CHECK(dropped.records.front().sequence == 0);
    CHECK(dropped.records.back().sequence == 38);

    ColumnMapping strict = fixture_mapping();
    strict.missing_policy = MissingPolicy::Error;
    CHECK_THROWS_AS(load_csv((tmp.path() / "blank.csv").string(), strict), ValueError);
  }

  TEST_CASE("an unmapped value is an error naming column, value, and row") {
    testutil::TempDir tmp("ingest_unmapped");
    testutil::write_file(tmp.path() / "bad.csv",
                         "RXASP,RXHEP,AF,ID14\nY,N,N,N\nQ,N,Y,N\n");
    ColumnMapping mapping = fixture_mapping();
    mapping.context_cols = {"AF"};
    try {
      load_csv((tmp.path() / "bad.csv").string(), mapping);
      FAIL("expected ValueError");
    } catch (const ValueError& e) {
      const std::string what = e.what();
      CHECK(what.find("RXASP") != std::string::npos);
      CHECK(what.find("'Q'") != std::string::npos);
      CHECK(what.find("row 2") != std::string::npos);
    }
  }

  TEST_CASE("schema problems are named") {
    testutil::TempDir tmp("ingest_schema");
    testutil::write_file(tmp.path() / "data.csv", "RXASP,RXHEP,ID14\nY,N,N\n");
    ColumnMapping mapping = fixture_mapping();
    CHECK_THROWS_WITH_AS(load_csv((tmp.path() / "data.csv").string(), mapping),
                         doctest::Contains("AF"), SchemaError);

    ColumnMapping no_map = fixture_mapping();
    no_map.value_maps.erase("RXHEP");
    CHECK_THROWS_AS(load_csv((tmp.path() / "data.csv").string(), no_map), SchemaError);

    ColumnMapping duplicate = fixture_mapping();
    duplicate.context_cols = {"RXASP"};
    CHECK_THROWS_AS(banditsim::validate_mapping(duplicate), SchemaError);

    ColumnMapping bad_target = fixture_mapping();
    bad_target.value_maps["AF"] = {{"Y", 2}};
    CHECK_THROWS_AS(banditsim::validate_mapping(bad_target), SchemaError);
  }

  TEST_CASE("ragged rows and duplicate headers are rejected") {
    testutil::TempDir tmp("ingest_ragged");
    testutil::write_file(tmp.path() / "ragged.csv", "RXASP,RXHEP,AF,ID14\nY,N,N\n");
    CHECK_THROWS_AS(load_csv((tmp.path() / "ragged.csv").string(), fixture_mapping()),
                    SchemaError);
    testutil::write_file(tmp.path() / "dup.csv", "RXASP,RXASP,RXHEP,AF,ID14\nY,Y,N,N,N\n");
    CHECK_THROWS_AS(load_csv((tmp.path() / "dup.csv").string(), fixture_mapping()), SchemaError);
  }

  TEST_CASE("quoting, surrounding whitespace, and CRLF endings are tolerated") {
    testutil::TempDir tmp("ingest_quotes");
    testutil::write_file(tmp.path() / "quoted.csv",
                         "NAME,RXASP,RXHEP,AF,ID14\r\n"
                         "\"Smith, John\",Y , \"N\",N,\"N\"\r\n"
                         "\"say \"\"hi\"\"\",N,M,Y,Y\r\n");
    const Dataset dataset = load_csv((tmp.path() / "quoted.csv").string(), fixture_mapping());
    REQUIRE(dataset.records.size() == 2);
    CHECK(dataset.records[0].arm == 1);
    CHECK(dataset.records[0].outcome == 1);
    CHECK(dataset.records[0].context[0] == 0);
    CHECK(dataset.records[1].arm == 2);
    CHECK(dataset.records[1].outcome == 0);
    CHECK(dataset.records[1].context[0] == 1);
  }

  TEST_CASE("a mapped empty string is a value, not a missing cell") {
    testutil::TempDir tmp("ingest_empty_mapped");
    testutil::write_file(tmp.path() / "empty.csv", "RXASP,RXHEP,AF,ID14\n,N,N,N\n");
    ColumnMapping mapping = fixture_mapping();
    mapping.value_maps["RXASP"] = {{"Y", 1}, {"N", 0}, {"", 0}};
    const Dataset dataset = load_csv((tmp.path() / "empty.csv").string(), mapping);
    CHECK(dataset.records.size() == 1);
    CHECK(dataset.excluded == 0);
    CHECK(dataset.records[0].arm == 0);
  }

  TEST_CASE("a nonexistent file is reported") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv", fixture_mapping()),
                    std::runtime_error);
  }
}
