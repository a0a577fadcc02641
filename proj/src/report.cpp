#include "shiftpred/report.hpp"

namespace shiftpred {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::EvidenceOnly:
      return "evidence-only";
  }
  return "fail";
}

void Report::fail(Json witness) {
  status = Status::Fail;
  witnesses.push_back(std::move(witness));
}

void Report::require(bool cond, Json witness) {
  if (!cond) fail(std::move(witness));
}

Json Report::to_json() const {
  Json j;
  j["check_name"] = check_name;
  j["parameters"] = parameters;
  j["status"] = to_string(status);
  j["max_error"] = max_error;
  j["witnesses"] = witnesses;
  j["runtime_ms"] = runtime_ms;
  if (!details.empty()) j["details"] = details;
  return j;
}

}  // namespace shiftpred
