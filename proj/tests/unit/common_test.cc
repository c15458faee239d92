// Copyright 2026 The Moralmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "moralmap/common/checksum.h"
#include "moralmap/common/csv.h"
#include "moralmap/common/dates.h"
#include "moralmap/common/error.h"
#include "moralmap/common/fips.h"
#include "moralmap/common/numbers.h"
#include "test_util.h"

using namespace moralmap;

TEST_CASE("csv: quoted fields keep delimiters and doubled quotes") {
  const auto cells = SplitRecord(R"(a,"b,c","say ""hi""",)");
  REQUIRE(cells);
  CHECK(*cells == std::vector<std::string>{"a", "b,c", "say \"hi\"", ""});
  CHECK_FALSE(SplitRecord(R"(a,"open)"));
}

TEST_CASE("csv: escape and join round-trip") {
  const std::vector<std::string> fields = {"plain", "with,comma", "quote\"d", " pad "};
  const auto parsed = SplitRecord(JoinRecord(fields));
  REQUIRE(parsed);
  CHECK(*parsed == fields);
}

TEST_CASE("csv: table keeps source line numbers and flags malformed rows") {
  const CsvTable t = ParseCsv("a,b\r\n1,2\n3\n4,5\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].line_no == 2);
  CHECK(t.rows[1].line_no == 4);
  CHECK(t.malformed_lines == std::vector<std::size_t>{3});
  CHECK(t.Column("b") == 1);
  CHECK_FALSE(t.Column("c"));
  CHECK_THROWS_AS(ParseCsv(""), DataError);
}

TEST_CASE("dates: parse, format and floor") {
  CHECK(FormatDate(testutil::D("2020-02-29")) == "2020-02-29");
  CHECK_FALSE(ParseDate("2021-02-29"));
  CHECK_FALSE(ParseDate("2020-13-01"));
  const Timestamp ts = testutil::T("2020-05-01T23:59:59Z");
  CHECK(FormatTimestamp(ts) == "2020-05-01T23:59:59Z");
  CHECK(DateOf(ts) == testutil::D("2020-05-01"));
  const DateRange r{testutil::D("2020-03-01"), testutil::D("2020-03-31")};
  CHECK(r.days() == 31);
  CHECK(r.Contains(testutil::D("2020-03-15")));
  CHECK_FALSE(r.Contains(testutil::D("2020-04-01")));
}

TEST_CASE("fips: padding, validation and state lookup") {
  CHECK(Fips::Parse("1001")->str() == "01001");
  CHECK(Fips::Parse("17031")->state_prefix() == "17");
  CHECK_FALSE(Fips::Parse("abcde"));
  CHECK_FALSE(Fips::Parse("123"));
  CHECK(StateAbbrevForPrefix("17") == "IL");
  CHECK(StatePrefixForAbbrev("AK") == "02");
  CHECK(IsValidStateAbbrev("TX"));
  CHECK_FALSE(IsValidStateAbbrev("XX"));
}

TEST_CASE("numbers: strict parsing and significant-digit rounding") {
  CHECK(ParseDouble("1.5e3") == 1500.0);
  CHECK_FALSE(ParseDouble("1.5x"));
  CHECK_FALSE(ParseDouble(""));
  CHECK(ParseInt("-42") == -42);
  CHECK_FALSE(ParseInt("4.2"));
  CHECK(RoundSignificant(123456789.0, 6) == 123457000.0);
  CHECK(RoundSignificant(0.000123456789, 3) == doctest::Approx(0.000123).epsilon(1e-12));
  CHECK(ParseDouble(FormatDouble(0.1)) == 0.1);
}

TEST_CASE("checksum: sha256 known vectors") {
  CHECK(Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  testutil::TempDir dir;
  WriteFile(dir.file("x.txt"), "abc");
  CHECK(Sha256File(dir.file("x.txt")) == Sha256Hex("abc"));
  CHECK_THROWS_AS(Sha256File(dir.file("missing")), IoError);
}
