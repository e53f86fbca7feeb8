#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ap3/io.hpp"

using namespace ap3;

TEST_CASE("set documents round trip") {
  const AnySet r = parse_set_document(R"({"modulus": 7, "elements": [5, 1, 3]})");
  CHECK(std::get<ResidueSet>(r) == ResidueSet(7, {1, 3, 5}));
  CHECK(set_to_json(r).dump() == R"({"modulus":7,"elements":[1,3,5]})");

  const AnySet z = parse_set_document(R"({"modulus": null, "elements": [-3, 0, 2]})");
  CHECK(std::get<IntegerSet>(z) == IntegerSet({-3, 0, 2}));
  CHECK(set_to_json(z).dump() == R"({"modulus":null,"elements":[-3,0,2]})");
  CHECK(set_from_json(set_to_json(z)) == z);
}

TEST_CASE("malformed set documents") {
  CHECK_THROWS_AS(parse_set_document("{"), InputError);
  CHECK_THROWS_AS(parse_set_document("[]"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"elements": [1]})"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"modulus": 5})"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"modulus": 5, "elements": [7]})"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"modulus": 5, "elements": [1, 1]})"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"modulus": 0, "elements": []})"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"modulus": 5, "elements": [1.5]})"), InputError);
  CHECK_THROWS_AS(parse_set_document(R"({"modulus": "5", "elements": [1]})"), InputError);
}

TEST_CASE("count report document") {
  CountReport r;
  r.t3 = 12;
  r.trivial = 4;
  r.combinatorial = 4;
  CHECK(to_json(r).dump() == R"({"t3":12,"trivial":4,"combinatorial":4})");
}

TEST_CASE("ledger round trip") {
  Ledger l = seed_ledger();
  submultiplicative_closure(l, 2);
  const Json doc = ledger_to_json(l);
  const Ledger back = ledger_from_json(Json::parse(doc.dump()));
  CHECK(back.records().size() == l.records().size());
  for (const auto& a : l.grid()) {
    CHECK(back.best_upper(Target::m3, a) == l.best_upper(Target::m3, a));
    CHECK(back.best_lower(Target::M3, a) == l.best_lower(Target::M3, a));
  }
  CHECK(ledger_to_json(back) == doc);

  const std::string csv = ledger_csv(l);
  CHECK(csv.rfind("target,alpha,side,value,provenance\n", 0) == 0);
  CHECK(csv.find("m3,1/2,upper,5/48,") != std::string::npos);
}

TEST_CASE("corrupt ledger documents") {
  CHECK_THROWS_AS(ledger_from_json(Json::parse("{}")), InputError);
  CHECK_THROWS_AS(ledger_from_json(Json::parse(R"({"records": [{"target": "x"}]})")), InputError);
  const auto bad = Json::parse(R"({"records": [
    {"target": "m3", "alpha": "1/2", "side": "upper", "value": "1/10", "provenance": {"kind": "closed-form"}},
    {"target": "m3", "alpha": "1/2", "side": "lower", "value": "1/5", "provenance": {"kind": "closed-form"}}]})");
  CHECK_THROWS_AS(ledger_from_json(bad), InputError);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
}

TEST_CASE("threshold csv") {
  ThresholdScan s;
  s.modulus = 5;
  s.rows = {{1, 1, true, true}, {4, 12, false, false}};
  CHECK(threshold_csv(s) == "n,M3,half_n2_match,all_EF_witnesses\n1,1,true,true\n4,12,false,false\n");
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "ap3_io_test.json").string();
  write_text_file(path, "{\"modulus\": 3, \"elements\": [0]}");
  CHECK(std::get<ResidueSet>(parse_set_document(read_text_file(path))) == ResidueSet(3, {0}));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file(path), InputError);
}
