#include "nckdv/report.hpp"

#include <json.hpp>

namespace nckdv {

std::string status_name(VerificationReport::Status s) {
  switch (s) {
    case VerificationReport::Status::pass: return "pass";
    case VerificationReport::Status::fail: return "fail";
    default: return "skipped";
  }
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["claim"] = r.claim;
    j["paper_ref"] = r.paper_ref;
    j["status"] = status_name(r.status);
    j["residual"] = r.residual ? nlohmann::json(*r.residual) : nlohmann::json(nullptr);
    j["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
    j["trials"] = r.trials ? nlohmann::json(*r.trials) : nlohmann::json(nullptr);
    j["points"] = r.points ? nlohmann::json(*r.points) : nlohmann::json(nullptr);
    j["tolerance"] = r.tolerance ? nlohmann::json(*r.tolerance) : nlohmann::json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace nckdv
