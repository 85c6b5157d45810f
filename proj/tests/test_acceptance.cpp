// End-to-end acceptance gate: one test case per release criterion, each with a
// pinned tolerance and a wall-clock budget.
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "nckdv/chart.hpp"
#include "nckdv/opcalc.hpp"
#include "nckdv/parser.hpp"
#include "nckdv/runner.hpp"
#include "nckdv/solitonlab.hpp"

using namespace nckdv;

namespace {

struct Budget {
  const char* name;
  double limit_s;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ~Budget() {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[acceptance] %-28s %7.2fs (budget %.0fs)\n", name, s, limit_s);
    CHECK(s < limit_s);
  }
};

}  // namespace

TEST_CASE("criterion 1: both transformation theorems cancel exactly") {
  Budget b{"links thm1a/thm1b", 5.0};
  Registry reg = Registry::standard();
  for (const char* id : {"thm1a", "thm1b"}) {
    VerificationReport rep = reg.verify_link(id);
    INFO(id);
    CHECK(rep.passed());
    CHECK(rep.residual == 0.0);
  }
}

TEST_CASE("criterion 2: inversion and mirror links cancel exactly") {
  Budget b{"links prop2/prop3a/prop3b", 5.0};
  Registry reg = Registry::standard();
  for (const char* id : {"prop2", "prop3a", "prop3b"}) {
    VerificationReport rep = reg.verify_link(id);
    INFO(id);
    CHECK(rep.passed());
  }
  // the proof identity behind the inversion link
  Bindings bind{{"tQ", Binding{parse_expr("inv(Q)"), std::nullopt}}};
  Poly inner = substitute(parse_expr("tQ_xxx - 3*tQ_xx*inv(tQ)*tQ_x"), bind);
  Poly q = Poly::letter("Q");
  CHECK(q * inner * q == parse_expr("-(Q_xxx - 3*Q_x*inv(Q)*Q_xx)"));
}

TEST_CASE("criterion 3: operator identities over 20 randomized trials each") {
  Budget b{"operator identities", 10.0};
  for (const auto& spec : standard_identity_suite()) {
    VerificationReport rep = check_operator_identity(spec);
    INFO(rep.claim);
    CHECK(rep.passed());
    CHECK(rep.trials == 20);
  }
}

TEST_CASE("criterion 4: hierarchy generation and cross-route consistency") {
  Budget b{"hierarchy generation", 30.0};
  CHECK(hierarchy_rhs("meta", 2) == parse_expr("Q_xxx - 3*Q_xx*inv(Q)*Q_x"));
  // intermediate chain assertions
  Poly v = Poly::letter("V");
  OpPtr inner = op_sub(op_d(), op_compose({op_anti(v), op_dinv(), op_anti(v)}));
  CHECK(nckdv::apply(inner, Poly::letter("V", 1)) == parse_expr("V_xx - 2*V*V*V"));
  CHECK(nckdv::apply(op_dinv(), parse_expr("{V, V_x}")) == parse_expr("V*V"));
  CHECK(hierarchy_consistency(2).passed());
  CHECK(hierarchy_consistency(3).passed());
}

TEST_CASE("criterion 5: scalar chart links cancel exactly") {
  Budget b{"links miura/b1/b2", 5.0};
  Registry reg = Registry::standard();
  for (const char* id : {"miura", "b1", "b2"}) {
    VerificationReport rep = reg.verify_link(id);
    INFO(id);
    CHECK(rep.passed());
    CHECK(rep.residual == 0.0);
  }
}

TEST_CASE("criterion 6: closed-form solutions across dimensions and seeds") {
  Budget b{"numeric solitons", 10.0};
  Registry reg = Registry::standard();
  for (int dim : {1, 2, 3}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SolitonParams p = random_params(dim, 2, seed);
      auto pts = sample_points(p, 10, seed + 500);
      REQUIRE(pts.size() == 10);
      for (const auto& pt : pts) {
        FieldJets f = soliton_fields(p, pt, 3);
        INFO("dim=" << dim << " seed=" << seed);
        CHECK(pde_residual(reg.rule("meta"), f.Q, 1) <= 1e-8);
        CHECK(pde_residual(reg.rule("mirror_meta"), f.tQ, 1) <= 1e-8);
        CHECK(pde_residual(reg.rule("mkdv"), f.V, 1) <= 1e-8);
        CHECK(pde_residual(reg.rule("amkdv"), f.tV, 1) <= 1e-8);
        CHECK(pde_residual(reg.rule("pkdv"), f.W, 1) <= 1e-8);
        LemmaResiduals lr = check_lemmas(p, pt);
        CHECK(lr.riccati <= 1e-8);
        CHECK(lr.pkdv_shift <= 1e-8);
      }
    }
  }
}

TEST_CASE("criterion 7: multi-time hierarchy solutions") {
  Budget b{"hierarchy solitons", 20.0};
  Poly e3 = hierarchy_rhs("meta", 2);
  Poly e5 = hierarchy_rhs("meta", 3);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SolitonParams p = random_params(2, 3, seed);
    for (const auto& pt : sample_points(p, 10, seed + 700)) {
      INFO("seed=" << seed);
      CHECK(hierarchy_residual_meta(p, pt, 2, e3) <= 1e-8);
      CHECK(hierarchy_residual_meta(p, pt, 3, e5) <= 1e-7);
      CHECK(hierarchy_residual_amkdv(p, pt, 2, e3) <= 1e-7);
      CHECK(hierarchy_residual_amkdv(p, pt, 3, e5) <= 1e-7);
    }
  }
}

TEST_CASE("criterion 8: mutation sensitivity") {
  Budget b{"mutation sensitivity", 10.0};
  Registry reg = Registry::standard();
  Poly mutated = parse_expr("Q_xxx + 3*Q_xx*inv(Q)*Q_x");
  reg.replace_equation("meta", mutated);

  VerificationReport rep = reg.verify_link("thm1a");
  CHECK(!rep.passed());
  REQUIRE(rep.witness.has_value());
  CHECK(!parse_expr(*rep.witness).is_zero());

  // the numeric residual must blow up, not merely drift
  SolitonParams p = random_params(2, 2, 1);
  double worst = 0.0;
  for (const auto& pt : sample_points(p, 10, 501)) {
    FieldJets f = soliton_fields(p, pt, 3);
    worst = std::max(worst, pde_residual(reg.rule("meta"), f.Q, 1));
  }
  CHECK(worst > 1e-2);
}

TEST_CASE("criterion 9: randomized property suites, 100+ cases per law") {
  Budget b{"property suites", 60.0};
  GenBounds bounds;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    Poly a = random_poly(bounds, 5 * s + 1);
    Poly p = random_poly(bounds, 5 * s + 2);
    Poly c = random_poly(bounds, 5 * s + 3, "Q");
    CHECK((a * p) * a == a * (p * a));
    CHECK(x_derive(a * p) == x_derive(a) * p + a * x_derive(p));
    CHECK(normalize(a + p) == a + p);
    CHECK(parse_expr(to_string(c)) == c);
    Poly d = x_derive(a);
    CHECK(x_derive(formal_integrate(d)) == d);
  }
  // jet-level laws on a smaller randomized sweep
  for (std::uint64_t s = 1; s <= 20; ++s) {
    SolitonParams p = random_params(2, 2, s);
    SamplePoint pt = sample_points(p, 1, s + 900)[0];
    FieldJets f = soliton_fields(p, pt, 4);
    MatrixJet lhs = jet_mul(jet_mul(f.Q, f.tQ), f.V);
    MatrixJet rhs = jet_mul(f.Q, jet_mul(f.tQ, f.V));
    for (int k = 0; k <= 4; ++k)
      CHECK((lhs.x[k] - rhs.x[k]).norm() < 1e-10 * (1.0 + rhs.x[k].norm()));
  }
}
