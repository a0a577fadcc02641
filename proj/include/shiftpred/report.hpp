#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace shiftpred {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, EvidenceOnly };

std::string to_string(Status s);

/// Outcome of one verification check. A failing report always carries at
/// least one witness; EvidenceOnly marks finite probes of hypotheses that
/// quantify over infinitely many cases.
struct Report {
  explicit Report(std::string name) : check_name(std::move(name)) {}

  std::string check_name;
  Json parameters = Json::object();
  Status status = Status::Pass;
  double max_error = 0.0;
  Json witnesses = Json::array();
  std::int64_t runtime_ms = 0;
  /// Additional measured quantities (tables, thresholds, intermediate values).
  Json details = Json::object();

  bool passed() const { return status != Status::Fail; }
  /// Marks the report failed and records the witness.
  void fail(Json witness);
  /// Calls fail(witness) unless cond holds.
  void require(bool cond, Json witness);
  void note_error(double e) {
    if (e > max_error) max_error = e;
  }
  /// Downgrades Pass to EvidenceOnly (Fail is kept).
  void mark_evidence_only() {
    if (status == Status::Pass) status = Status::EvidenceOnly;
  }

  Json to_json() const;
};

/// Measures wall time into Report::runtime_ms on destruction when enabled.
class ReportTimer {
 public:
  ReportTimer(Report& r, bool enabled)
      : report_(r), enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    if (enabled_) {
      report_.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
    }
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  Report& report_;
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace shiftpred
