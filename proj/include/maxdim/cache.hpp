#ifndef MAXDIM_CACHE_HPP
#define MAXDIM_CACHE_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "maxdim/report.hpp"

namespace maxdim {

// Result cache keyed by (canonical recipe, tool version, budget). Lookups
// that fail for any reason degrade to recomputation; writes go through a
// temp file and rename so concurrent runs never see torn files.
class ResultCache {
 public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

  static std::string key_of(std::string const& canonical_spec, std::uint64_t budget) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::string const& s) {
      for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
      }
      h ^= '|';
      h *= 1099511628211ull;
    };
    mix(canonical_spec);
    mix(kToolVersion);
    mix(std::to_string(budget));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::optional<nlohmann::ordered_json> lookup(std::string const& canonical_spec,
                                               std::uint64_t budget) const {
    if (dir_.empty()) return std::nullopt;
    auto path = std::filesystem::path(dir_) / (key_of(canonical_spec, budget) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      nlohmann::ordered_json j;
      in >> j;
      if (j.at("spec") != canonical_spec || j.at("toolVersion") != kToolVersion ||
          j.at("budget") != budget) {
        std::cerr << "cache: key mismatch for " << path << ", recomputing\n";
        return std::nullopt;
      }
      return j.at("payload");
    } catch (std::exception const&) {
      std::cerr << "cache: corrupted entry " << path << ", recomputing\n";
      return std::nullopt;
    }
  }

  void store(std::string const& canonical_spec, std::uint64_t budget,
             nlohmann::ordered_json payload) const {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    auto path = std::filesystem::path(dir_) / (key_of(canonical_spec, budget) + ".json");
    auto tmp = path;
    tmp += ".tmp";
    {
      nlohmann::ordered_json j;
      j["spec"] = canonical_spec;
      j["toolVersion"] = kToolVersion;
      j["budget"] = budget;
      j["payload"] = std::move(payload);
      std::ofstream out(tmp);
      if (!out) return;  // cache failures are never fatal
      out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path, ec);
  }

 private:
  std::string dir_;
};

}  // namespace maxdim

#endif  // MAXDIM_CACHE_HPP
