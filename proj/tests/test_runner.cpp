#include <doctest.h>

#include <algorithm>

#include "nckdv/runner.hpp"
#include "nckdv/errors.hpp"

using namespace nckdv;

TEST_CASE("claim catalogue") {
  auto all = known_claims();
  auto def = default_claims();
  CHECK(all.size() == def.size() + 1);
  CHECK(std::find(all.begin(), all.end(), "mutation_thm1a") != all.end());
  CHECK(std::find(def.begin(), def.end(), "mutation_thm1a") == def.end());
  for (const char* id : {"thm1a", "miura", "lemma_identity", "num_meta", "num_hier_e5"})
    CHECK(std::find(def.begin(), def.end(), id) != def.end());
}

TEST_CASE("default claim set passes with defaults") {
  auto reports = run_claims(default_claims(), RunOptions{});
  CHECK(reports.size() == default_claims().size());
  for (const auto& rep : reports) {
    INFO(rep.claim << ": " << rep.notes);
    CHECK(rep.passed());
    CHECK(!rep.paper_ref.empty());
  }
}

TEST_CASE("the mutation diagnostic fails by design") {
  auto reports = run_claims({"mutation_thm1a"}, RunOptions{});
  REQUIRE(reports.size() == 1);
  CHECK(!reports[0].passed());
  CHECK(reports[0].witness.has_value());
}

TEST_CASE("unknown claims are rejected") {
  CHECK_THROWS_AS(run_claims({"nosuch"}, RunOptions{}), UnknownEquationError);
}

TEST_CASE("numeric reports carry points and tolerance; runs are deterministic") {
  RunOptions opts;
  opts.seed = 7;
  auto a = run_claims({"num_meta"}, opts);
  auto b = run_claims({"num_meta"}, opts);
  REQUIRE(a.size() == 1);
  CHECK(a[0].points == opts.points);
  CHECK(a[0].tolerance == opts.tol);
  CHECK(a[0].residual == b[0].residual);
}

TEST_CASE("reports serialize to the fixed JSON schema") {
  auto reports = run_claims({"thm1a", "num_meta", "lemma_identity"}, RunOptions{});
  std::string json = reports_to_json(reports);
  for (const char* key : {"\"claim\"", "\"paper_ref\"", "\"status\"", "\"residual\"",
                          "\"witness\"", "\"trials\"", "\"points\"", "\"tolerance\""})
    CHECK(json.find(key) != std::string::npos);
}
