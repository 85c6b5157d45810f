#include "nckdv/chart.hpp"

#include <algorithm>

#include "nckdv/opcalc.hpp"
#include "nckdv/parser.hpp"

namespace nckdv {

Registry::Registry(std::vector<EquationDef> equations, std::vector<LinkDef> links)
    : equations_(std::move(equations)), links_(std::move(links)) {}

Registry Registry::standard() {
  auto eq = [](std::string id, std::string var, const std::string& rhs) {
    return EquationDef{std::move(id), EvolutionRule{std::move(var), parse_expr(rhs)}};
  };

  std::vector<EquationDef> equations{
      eq("kdv", "U", "U_xxx + 3*{U, U_x}"),
      eq("mkdv", "V", "V_xxx - 3*{V*V, V_x}"),
      eq("amkdv", "tV", "tV_xxx + 3*[tV, tV_xx] - 6*tV*tV_x*tV"),
      eq("meta", "Q", "Q_xxx - 3*Q_xx*inv(Q)*Q_x"),
      eq("mirror_meta", "tQ", "tQ_xxx - 3*tQ_x*inv(tQ)*tQ_xx"),
      eq("pkdv", "W", "W_xxx + 3*W_x*W_x"),
      eq("scalar_meta", "q", "q_xxx - 3*q_x*q_xx*inv(q)"),
      // target of link b2; the scalar interacting-soliton equation in cleared form
      eq("int_so", "s", "s_xxx - 3/2*D(s_x*inv(s)*s_x)"),
  };

  auto bind = [](const std::string& var, const std::string& image,
                 const std::string& inverse = "") {
    Binding b{parse_expr(image), std::nullopt};
    if (!inverse.empty()) b.inverse_image = parse_expr(inverse);
    return Bindings{{var, std::move(b)}};
  };

  std::vector<LinkDef> links;
  links.push_back({"thm1a",
                   "Cole-Hopf V = Q_x Q^{-1} maps meta-mKdV solutions to mKdV solutions",
                   {{"meta", "mkdv", "V", bind("V", "Q_x*inv(Q)")}}});
  links.push_back({"thm1b",
                   "mirror Cole-Hopf tV = Q^{-1} Q_x maps meta-mKdV solutions to "
                   "alternative-mKdV solutions",
                   {{"meta", "amkdv", "tV", bind("tV", "inv(Q)*Q_x")}}});
  links.push_back({"prop2",
                   "Q solves meta-mKdV iff tQ = Q^{-1} solves mirror meta-mKdV "
                   "(both directions)",
                   {{"meta", "mirror_meta", "tQ", bind("tQ", "inv(Q)")},
                    {"mirror_meta", "meta", "Q", bind("Q", "inv(tQ)")}}});
  links.push_back({"prop3a",
                   "V = -tQ^{-1} tQ_x maps mirror meta-mKdV solutions to mKdV solutions",
                   {{"mirror_meta", "mkdv", "V", bind("V", "-inv(tQ)*tQ_x")}}});
  links.push_back({"prop3b",
                   "tV = -tQ_x tQ^{-1} maps mirror meta-mKdV solutions to "
                   "alternative-mKdV solutions",
                   {{"mirror_meta", "amkdv", "tV", bind("tV", "-tQ_x*inv(tQ)")}}});
  links.push_back({"miura",
                   "Miura transformation U = -(V^2 + V_x) maps mKdV solutions to "
                   "KdV solutions",
                   {{"mkdv", "kdv", "U", bind("U", "-(V*V + V_x)")}}});
  {
    LinkCheck c{"scalar_meta", "mkdv", "V", bind("V", "q_x*inv(q)"), true};
    links.push_back({"b1",
                     "scalar Cole-Hopf v = q_x/q maps scalar meta-mKdV solutions to "
                     "mKdV solutions (commuting letters)",
                     {std::move(c)}});
  }
  {
    LinkCheck c{"scalar_meta", "int_so", "s", bind("s", "q*q", "inv(q)*inv(q)"), true};
    links.push_back({"b2",
                     "s = q^2 maps scalar meta-mKdV solutions to the interacting-soliton "
                     "KdV equation (commuting letters, direction q -> s)",
                     {std::move(c)}});
  }

  return Registry(std::move(equations), std::move(links));
}

const EvolutionRule& Registry::rule(const std::string& id) const {
  for (const auto& e : equations_)
    if (e.id == id) return e.rule;
  throw UnknownEquationError("unknown equation '" + id + "'");
}

const Poly& Registry::equation_rhs(const std::string& id) const { return rule(id).rhs; }

bool Registry::has_equation(const std::string& id) const {
  return std::any_of(equations_.begin(), equations_.end(),
                     [&](const EquationDef& e) { return e.id == id; });
}

std::vector<std::string> Registry::equation_ids() const {
  std::vector<std::string> out;
  for (const auto& e : equations_) out.push_back(e.id);
  return out;
}

std::vector<std::string> Registry::link_ids() const {
  std::vector<std::string> out;
  for (const auto& l : links_) out.push_back(l.id);
  return out;
}

void Registry::replace_equation(const std::string& id, Poly rhs) {
  for (auto& e : equations_) {
    if (e.id == id) {
      e.rule.rhs = std::move(rhs);
      return;
    }
  }
  throw UnknownEquationError("unknown equation '" + id + "'");
}

VerificationReport Registry::verify_link(const std::string& id) const {
  const LinkDef* link = nullptr;
  for (const auto& l : links_)
    if (l.id == id) link = &l;
  if (!link) throw UnknownEquationError("unknown link '" + id + "'");

  VerificationReport rep;
  rep.claim = id;
  rep.paper_ref = link->paper_ref;
  rep.status = VerificationReport::Status::pass;
  rep.residual = 0.0;

  for (const auto& check : link->checks) {
    const EvolutionRule& src = rule(check.source);
    const Poly& target_rhs = equation_rhs(check.target);
    const Binding& image = check.binding.at(check.target_var);

    Poly lhs = t_derive(image.image, src);
    Poly rhs = substitute(target_rhs, check.binding);
    Poly diff = lhs - rhs;
    if (check.commutative) diff = commutative_form(diff);
    if (!diff.is_zero()) {
      rep.status = VerificationReport::Status::fail;
      rep.residual.reset();
      rep.witness = to_string(diff);
      rep.notes = "direction " + check.source + " -> " + check.target;
      break;
    }
  }
  return rep;
}

std::vector<VerificationReport> Registry::verify_all() const {
  std::vector<VerificationReport> reports;
  for (const auto& l : links_) reports.push_back(verify_link(l.id));
  for (const auto& spec : standard_identity_suite())
    reports.push_back(check_operator_identity(spec));
  reports.push_back(hierarchy_consistency(2));
  reports.push_back(hierarchy_consistency(3));
  return reports;
}

}  // namespace nckdv
