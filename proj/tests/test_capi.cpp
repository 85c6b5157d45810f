#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "nckdv.h"

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { nckdv_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

}  // namespace

TEST_CASE("defaults are the documented ones") {
  nckdv_numeric_opts opts = nckdv_numeric_opts_default();
  CHECK(opts.dim == 2);
  CHECK(opts.seed == 1);
  CHECK(opts.num_times == 2);
  CHECK(opts.points == 10);
  CHECK(opts.tol == 1e-8);
}

TEST_CASE("parse and print round trip through the C surface") {
  nckdv_poly* p = nullptr;
  REQUIRE(nckdv_poly_parse("Q_xxx - 3*Q_xx*inv(Q)*Q_x", &p) == NCKDV_OK);
  Str printed;
  REQUIRE(nckdv_poly_print(p, &printed.s) == NCKDV_OK);
  nckdv_poly* p2 = nullptr;
  REQUIRE(nckdv_poly_parse(printed.s, &p2) == NCKDV_OK);
  Str printed2;
  REQUIRE(nckdv_poly_print(p2, &printed2.s) == NCKDV_OK);
  CHECK(printed.str() == printed2.str());
  nckdv_poly_free(p);
  nckdv_poly_free(p2);
}

TEST_CASE("parse errors set the status and message") {
  nckdv_poly* p = nullptr;
  CHECK(nckdv_poly_parse("Q *", &p) == NCKDV_EPARSE);
  CHECK(std::string(nckdv_last_error()).find("offset 3") != std::string::npos);
  CHECK(nckdv_poly_parse(nullptr, &p) == NCKDV_EINVAL);
}

TEST_CASE("hierarchy through the C surface") {
  nckdv_poly* p = nullptr;
  REQUIRE(nckdv_hierarchy("meta", 2, &p) == NCKDV_OK);
  Str printed;
  REQUIRE(nckdv_poly_print(p, &printed.s) == NCKDV_OK);
  CHECK(printed.str() == "-3*Q_xx*inv(Q)*Q_x + Q_xxx");
  nckdv_poly_free(p);
  CHECK(nckdv_hierarchy("meta", 0, &p) == NCKDV_EINVAL);
  CHECK(nckdv_hierarchy("kdv", 1, &p) == NCKDV_EINVAL);
}

TEST_CASE("claim id list") {
  Str ids;
  REQUIRE(nckdv_claim_ids(&ids.s) == NCKDV_OK);
  std::string s = ids.str();
  for (const char* id : {"thm1a", "miura", "num_meta", "mutation_thm1a"})
    CHECK(s.find(id) != std::string::npos);
}

TEST_CASE("verify emits schema-conforming JSON and the right status") {
  Str json;
  REQUIRE(nckdv_verify("thm1a,num_meta", nullptr, &json.s) == NCKDV_OK);
  auto arr = nlohmann::json::parse(json.str());
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  for (const auto& rec : arr) {
    CHECK(rec["claim"].is_string());
    CHECK(rec["paper_ref"].is_string());
    CHECK(rec["status"].is_string());
    CHECK((rec["residual"].is_number() || rec["residual"].is_null()));
    CHECK((rec["witness"].is_string() || rec["witness"].is_null()));
    CHECK((rec["trials"].is_number_integer() || rec["trials"].is_null()));
    CHECK((rec["points"].is_number_integer() || rec["points"].is_null()));
    CHECK((rec["tolerance"].is_number() || rec["tolerance"].is_null()));
    CHECK(rec["status"] == "pass");
  }

  Str json2;
  CHECK(nckdv_verify("mutation_thm1a", nullptr, &json2.s) == NCKDV_FAIL);
  Str json3;
  CHECK(nckdv_verify("nosuch", nullptr, &json3.s) == NCKDV_EINVAL);
  CHECK(std::strlen(nckdv_last_error()) > 0);

  nckdv_numeric_opts bad = nckdv_numeric_opts_default();
  bad.points = 0;
  Str json4;
  CHECK(nckdv_verify("num_meta", &bad, &json4.s) == NCKDV_EINVAL);
}

TEST_CASE("soliton run returns CSV and reports") {
  nckdv_numeric_opts opts = nckdv_numeric_opts_default();
  opts.points = 4;
  Str csv, json;
  REQUIRE(nckdv_soliton(&opts, &csv.s, &json.s) == NCKDV_OK);
  std::string table = csv.str();
  CHECK(table.rfind("t1,t3,", 0) == 0);
  std::size_t rows = 0;
  for (char ch : table)
    if (ch == '\n') ++rows;
  CHECK(rows == 5);
  auto arr = nlohmann::json::parse(json.str());
  CHECK(arr.size() == 8);
}
