#include "nckdv.h"

#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "nckdv/opcalc.hpp"
#include "nckdv/parser.hpp"
#include "nckdv/runner.hpp"
#include "nckdv/solitonlab.hpp"

using namespace nckdv;

struct nckdv_poly {
  Poly value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <typename F>
nckdv_status guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return NCKDV_EPARSE;
  } catch (const UnknownEquationError& e) {
    g_last_error = e.what();
    return NCKDV_EINVAL;
  } catch (const UnknownVariableError& e) {
    g_last_error = e.what();
    return NCKDV_EINVAL;
  } catch (const Error& e) {
    g_last_error = e.what();
    return NCKDV_EDOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NCKDV_ERROR;
  }
}

RunOptions to_options(const nckdv_numeric_opts* opts) {
  RunOptions r;
  if (opts) {
    r.dim = opts->dim;
    r.seed = opts->seed;
    r.num_times = opts->num_times;
    r.points = opts->points;
    r.tol = opts->tol;
  }
  return r;
}

bool validate_options(const RunOptions& r) {
  if (r.dim < 1 || r.num_times < 1 || r.points < 1 || r.tol <= 0.0) {
    g_last_error = "invalid numeric options (need dim >= 1, N >= 1, points >= 1, tol > 0)";
    return false;
  }
  return true;
}

}  // namespace

extern "C" {

nckdv_numeric_opts nckdv_numeric_opts_default(void) {
  RunOptions r;
  return nckdv_numeric_opts{r.dim, r.seed, r.num_times, r.points, r.tol};
}

const char* nckdv_last_error(void) { return g_last_error.c_str(); }

void nckdv_string_free(char* s) { delete[] s; }

void nckdv_poly_free(nckdv_poly* p) { delete p; }

nckdv_status nckdv_poly_parse(const char* text, nckdv_poly** out) {
  if (!text || !out) {
    g_last_error = "null argument";
    return NCKDV_EINVAL;
  }
  return guarded([&] {
    *out = new nckdv_poly{parse_expr(text)};
    return NCKDV_OK;
  });
}

nckdv_status nckdv_poly_print(const nckdv_poly* p, char** out) {
  if (!p || !out) {
    g_last_error = "null argument";
    return NCKDV_EINVAL;
  }
  return guarded([&] {
    *out = dup_string(to_string(p->value));
    return NCKDV_OK;
  });
}

nckdv_status nckdv_hierarchy(const char* eq, int n, nckdv_poly** out) {
  if (!eq || !out) {
    g_last_error = "null argument";
    return NCKDV_EINVAL;
  }
  if (n < 1) {
    g_last_error = "hierarchy level must be >= 1";
    return NCKDV_EINVAL;
  }
  return guarded([&] {
    *out = new nckdv_poly{hierarchy_rhs(eq, n)};
    return NCKDV_OK;
  });
}

nckdv_status nckdv_claim_ids(char** out) {
  if (!out) {
    g_last_error = "null argument";
    return NCKDV_EINVAL;
  }
  return guarded([&] {
    std::string joined;
    for (const auto& id : known_claims()) {
      if (!joined.empty()) joined += ',';
      joined += id;
    }
    *out = dup_string(joined);
    return NCKDV_OK;
  });
}

nckdv_status nckdv_verify(const char* claims, const nckdv_numeric_opts* opts,
                          char** json_out) {
  if (!claims || !json_out) {
    g_last_error = "null argument";
    return NCKDV_EINVAL;
  }
  RunOptions ropts = to_options(opts);
  if (!validate_options(ropts)) return NCKDV_EINVAL;
  return guarded([&]() -> nckdv_status {
    std::vector<std::string> ids =
        std::string(claims) == "all" ? default_claims() : split_csv(claims);
    if (ids.empty()) {
      g_last_error = "empty claim list";
      return NCKDV_EINVAL;
    }
    std::vector<VerificationReport> reports = run_claims(ids, ropts);
    *json_out = dup_string(reports_to_json(reports));
    for (const auto& r : reports)
      if (!r.passed()) return NCKDV_FAIL;
    return NCKDV_OK;
  });
}

nckdv_status nckdv_soliton(const nckdv_numeric_opts* opts, char** csv_out,
                           char** json_out) {
  RunOptions ropts = to_options(opts);
  if (!validate_options(ropts)) return NCKDV_EINVAL;
  return guarded([&]() -> nckdv_status {
    static const std::vector<std::string> ids{
        "num_meta", "num_mirror_meta", "num_mkdv", "num_amkdv", "num_pkdv",
        "num_lemma_qxx", "num_lemma_aw", "num_pkdv_neg"};
    std::vector<VerificationReport> reports = run_claims(ids, ropts);
    if (csv_out) {
      SolitonParams params = random_params(ropts.dim, ropts.num_times, ropts.seed);
      std::vector<SamplePoint> pts =
          sample_points(params, ropts.points, ropts.seed + 1000);
      *csv_out = dup_string(soliton_csv(params, pts));
    }
    if (json_out) *json_out = dup_string(reports_to_json(reports));
    for (const auto& r : reports)
      if (!r.passed()) return NCKDV_FAIL;
    return NCKDV_OK;
  });
}

}  // extern "C"
