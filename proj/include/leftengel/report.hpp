#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

namespace leftengel {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

/// Outcome of one named check.  A failing report always carries a witness.
struct VerificationReport {
  std::string check_id;
  nlohmann::json params = nlohmann::json::object();
  Status status = Status::pass;
  std::string details;
  std::optional<nlohmann::json> witness;
  std::int64_t elapsed_ms = 0;

  bool passed() const { return status == Status::pass; }
  bool failed() const { return status == Status::fail; }

  void fail(std::string why, nlohmann::json w) {
    status = Status::fail;
    details = std::move(why);
    witness = std::move(w);
  }

  /// `include_timing = false` gives the form used for determinism comparisons.
  nlohmann::json to_json(bool include_timing = true) const {
    nlohmann::json j;
    j["check_id"] = check_id;
    j["params"] = params;
    j["status"] = to_string(status);
    j["details"] = details;
    if (witness) j["witness"] = *witness;
    if (include_timing) j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

/// Times a check body and stamps elapsed_ms; exceptions become failures.
template <typename F>
VerificationReport timed_check(std::string id, nlohmann::json params, F&& body) {
  VerificationReport rep;
  rep.check_id = std::move(id);
  rep.params = params.is_null() ? nlohmann::json::object() : std::move(params);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(rep);
  } catch (const std::exception& e) {
    rep.fail(std::string("exception: ") + e.what(), nlohmann::json{{"exception", e.what()}});
  }
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace leftengel
