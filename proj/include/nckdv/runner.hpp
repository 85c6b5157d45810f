#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nckdv/report.hpp"

namespace nckdv {

struct RunOptions {
  int dim = 2;
  std::uint64_t seed = 1;
  int num_times = 2;
  int points = 10;
  double tol = 1e-8;
};

// Every selectable claim id, in the deterministic emission order.
std::vector<std::string> known_claims();

// The ids covered by "all": every claim except the deliberate-failure
// diagnostic mutation_thm1a.
std::vector<std::string> default_claims();

// Runs the selected claims and returns one report per id, in the order given.
// Throws UnknownEquationError on an id outside known_claims().
std::vector<VerificationReport> run_claims(const std::vector<std::string>& ids,
                                           const RunOptions& opts);

}  // namespace nckdv
