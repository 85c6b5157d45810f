#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nckdv {

// Machine-readable pass/fail record for one claim.
struct VerificationReport {
  enum class Status { pass, fail, skipped };

  std::string claim;
  std::string paper_ref;  // human-readable statement the claim certifies
  Status status = Status::skipped;
  std::optional<double> residual;
  std::optional<std::string> witness;  // nonzero residual polynomial on fail
  std::optional<int> trials;
  std::optional<int> points;
  std::optional<double> tolerance;
  std::string notes;

  bool passed() const { return status == Status::pass; }
};

std::string status_name(VerificationReport::Status s);

// JSON array per the fixed report schema:
// [{claim, paper_ref, status, residual, witness, trials, points, tolerance}]
std::string reports_to_json(const std::vector<VerificationReport>& reports);

}  // namespace nckdv
