#pragma once

#include <string>
#include <vector>

#include "nckdv/ncpoly.hpp"
#include "nckdv/report.hpp"

namespace nckdv {

struct EquationDef {
  std::string id;
  EvolutionRule rule;
};

// One solution-to-solution check: a solution of `source` is mapped to a
// solution of `target` by target_var := binding image. Scalar-chart links are
// compared in commutative canonical form.
struct LinkCheck {
  std::string source;
  std::string target;
  std::string target_var;
  Bindings binding;
  bool commutative = false;
};

struct LinkDef {
  std::string id;
  std::string paper_ref;
  std::vector<LinkCheck> checks;  // prop2 carries both directions
};

// Registry of the equations and transformation links under verification.
class Registry {
 public:
  Registry() = default;
  Registry(std::vector<EquationDef> equations, std::vector<LinkDef> links);

  // The shipped registry: kdv, mkdv, amkdv, meta, mirror_meta, pkdv,
  // scalar_meta (plus int_so as the target of link b2) and the links
  // thm1a, thm1b, prop2, prop3a, prop3b, miura, b1, b2.
  static Registry standard();

  const Poly& equation_rhs(const std::string& id) const;
  const EvolutionRule& rule(const std::string& id) const;
  bool has_equation(const std::string& id) const;

  std::vector<std::string> equation_ids() const;
  std::vector<std::string> link_ids() const;

  VerificationReport verify_link(const std::string& id) const;

  // Every registered link, the operator identity suite, and the hierarchy
  // consistency cross-checks, in deterministic order. Failures are reports,
  // not exceptions.
  std::vector<VerificationReport> verify_all() const;

  // Test hook: replace an equation's right-hand side (mutation runs).
  void replace_equation(const std::string& id, Poly rhs);

 private:
  std::vector<EquationDef> equations_;
  std::vector<LinkDef> links_;
};

}  // namespace nckdv
