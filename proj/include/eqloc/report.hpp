#pragma once

// Structured run reports: every CLI invocation produces one, rendered
// either as plain text or as canonical JSON (sorted keys, round-trip
// float formatting). The config digest makes runs reproducible.

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace eqloc {

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string format_scalar(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::string(buf);
}

struct RunReport {
  std::string command;
  std::string config_digest;
  std::vector<std::pair<std::string, nlohmann::json>> results;
  std::vector<std::string> diagnostics;
  int exit_code = 0;

  void add_result(const std::string& name, nlohmann::json value) {
    results.emplace_back(name, std::move(value));
  }
  void add_diagnostic(const std::string& msg) { diagnostics.push_back(msg); }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config_digest"] = config_digest;
    j["exit_code"] = exit_code;
    j["diagnostics"] = diagnostics;
    j["results"] = nlohmann::json::object();
    for (const auto& [name, value] : results) j["results"][name] = value;
    return j;
  }
};

}  // namespace eqloc
