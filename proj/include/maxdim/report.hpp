#ifndef MAXDIM_REPORT_HPP
#define MAXDIM_REPORT_HPP

#include <fstream>
#include <string>
#include <vector>

#include "maxdim/checks.hpp"
#include "maxdim/config.hpp"

#include <json.hpp>

namespace maxdim {

inline constexpr char const* kToolVersion = "maxdim 0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Machine-readable run record. Key order is fixed (ordered_json) and
// timings stay empty unless explicitly requested, so reruns with the same
// seed produce byte-identical files.
struct Report {
  std::string command;
  Config config;
  std::vector<std::string> inputs;  // canonical group specs / parameters
  std::vector<CheckResult> results;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schemaVersion"] = kReportSchemaVersion;
    j["toolVersion"] = kToolVersion;
    j["configSeed"] = config.seed;
    j["budget"] = config.node_budget;
    j["command"] = command;
    j["inputs"] = inputs;
    auto arr = nlohmann::ordered_json::array();
    for (auto const& r : results) arr.push_back(result_json(r));
    j["results"] = arr;
    j["timings"] = timings;
    return j;
  }

  static nlohmann::ordered_json result_json(CheckResult const& r) {
    nlohmann::ordered_json j;
    j["checkId"] = r.check_id;
    j["instances"] = r.instances;
    j["status"] = status_name(r.status);
    nlohmann::ordered_json nums;
    for (auto const& [k, v] : r.numbers) nums[k] = v;
    j["numbers"] = nums;
    j["notes"] = r.notes;
    j["witness"] = r.witness;
    return j;
  }

  void write(std::string const& path) const {
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp);
      out << to_json().dump(2) << "\n";
    }
    std::rename(tmp.c_str(), path.c_str());
  }
};

inline int exit_code_for(std::vector<CheckResult> const& results) {
  bool cap = false;
  for (auto const& r : results) {
    if (r.status == CheckStatus::fail) return 1;
    if (r.status == CheckStatus::cap_exceeded) cap = true;
  }
  return cap ? 2 : 0;
}

}  // namespace maxdim

#endif  // MAXDIM_REPORT_HPP
