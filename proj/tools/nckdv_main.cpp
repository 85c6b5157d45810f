#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nckdv.h"

namespace {

struct ScopedString {
  char* s = nullptr;
  ~ScopedString() { nckdv_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int status_to_exit(nckdv_status st) {
  switch (st) {
    case NCKDV_OK: return 0;
    case NCKDV_FAIL: return 1;
    default: return fail_usage(nckdv_last_error());
  }
}

std::string render_text(const std::string& json) {
  std::string out;
  for (const auto& rec : nlohmann::json::parse(json)) {
    std::string line = rec["claim"].get<std::string>() + ": " +
                       rec["status"].get<std::string>();
    if (!rec["residual"].is_null())
      line += "  residual=" + std::to_string(rec["residual"].get<double>());
    if (!rec["tolerance"].is_null())
      line += "  tol=" + std::to_string(rec["tolerance"].get<double>());
    if (!rec["trials"].is_null())
      line += "  trials=" + std::to_string(rec["trials"].get<int>());
    if (!rec["points"].is_null())
      line += "  points=" + std::to_string(rec["points"].get<int>());
    out += line + "\n";
    if (!rec["witness"].is_null())
      out += "    witness: " + rec["witness"].get<std::string>() + "\n";
  }
  return out;
}

bool emit(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return true;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  f << text;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nckdv: symbolic and numeric verification of a noncommutative "
               "KdV-type equation family"};
  app.require_subcommand(1);

  nckdv_numeric_opts opts = nckdv_numeric_opts_default();
  std::string claims = "all";
  std::string format = "text";
  std::string out_path, csv_path;

  auto add_numeric_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dim", opts.dim, "matrix dimension")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--n", opts.num_times, "hierarchy depth N")->check(CLI::PositiveNumber);
    cmd->add_option("--points", opts.points, "sample points per numeric claim")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", opts.tol, "relative residual tolerance");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out_path, "write the report to this path");
  };

  CLI::App* verify = app.add_subcommand("verify", "run verification claims");
  verify->add_option("--claims", claims, "comma-separated claim ids, or 'all'");
  add_numeric_flags(verify);

  CLI::App* hierarchy = app.add_subcommand("hierarchy", "print a hierarchy member");
  std::string eq = "meta";
  int level = 1;
  hierarchy->add_option("--eq", eq, "equation family")
      ->check(CLI::IsMember({"meta", "mkdv"}));
  hierarchy->add_option("--n", level, "member index (1-based)")
      ->check(CLI::PositiveNumber);

  CLI::App* soliton = app.add_subcommand("soliton", "sample the explicit solutions "
                                                    "and check residuals");
  add_numeric_flags(soliton);
  soliton->add_option("--csv", csv_path, "write the sample table to this path");

  CLI::App* eval = app.add_subcommand("eval", "parse an expression and print its "
                                              "canonical form");
  std::string expr_text;
  eval->add_option("expr", expr_text, "expression in the polynomial grammar")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) {
    ScopedString json;
    nckdv_status st = nckdv_verify(claims.c_str(), &opts, &json.s);
    if (st != NCKDV_OK && st != NCKDV_FAIL) return fail_usage(nckdv_last_error());
    std::string text = format == "json" ? json.str() : render_text(json.str());
    if (!emit(text, out_path, std::cout)) return 2;
    return st == NCKDV_OK ? 0 : 1;
  }

  if (hierarchy->parsed()) {
    ScopedString printed;
    nckdv_poly* p = nullptr;
    nckdv_status st = nckdv_hierarchy(eq.c_str(), level, &p);
    if (st != NCKDV_OK) return fail_usage(nckdv_last_error());
    st = nckdv_poly_print(p, &printed.s);
    nckdv_poly_free(p);
    if (st != NCKDV_OK) return fail_usage(nckdv_last_error());
    std::cout << printed.str() << "\n";
    return 0;
  }

  if (soliton->parsed()) {
    ScopedString csv, json;
    nckdv_status st = nckdv_soliton(&opts, &csv.s, &json.s);
    if (st != NCKDV_OK && st != NCKDV_FAIL) return fail_usage(nckdv_last_error());
    if (!emit(csv.str(), csv_path, std::cout)) return 2;
    std::string text = format == "json" ? json.str() : render_text(json.str());
    if (!emit(text, out_path, out_path.empty() && csv_path.empty() ? std::cerr : std::cout))
      return 2;
    return status_to_exit(st);
  }

  if (eval->parsed()) {
    nckdv_poly* p = nullptr;
    nckdv_status st = nckdv_poly_parse(expr_text.c_str(), &p);
    if (st != NCKDV_OK) return fail_usage(nckdv_last_error());
    ScopedString printed;
    st = nckdv_poly_print(p, &printed.s);
    nckdv_poly_free(p);
    if (st != NCKDV_OK) return fail_usage(nckdv_last_error());
    std::cout << printed.str() << "\n";
    return 0;
  }

  return 2;
}
