#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsf/cost.hpp"
#include "lsf/eval.hpp"
#include "lsf/join.hpp"

namespace lsf {

inline constexpr int kManifestVersion = 1;
inline constexpr int kCostReportVersion = 1;

/// Everything needed to repeat a CLI run: the argument vector alone
/// reproduces every output file byte for byte.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  double wall_seconds = 0.0;

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& j);
  void write(const std::filesystem::path& path) const;
  static RunManifest read(const std::filesystem::path& path);
};

nlohmann::ordered_json cost_to_json(const CostReport& cost);
nlohmann::ordered_json iteration_log_to_json(const std::vector<IterationStats>& log);
nlohmann::ordered_json rounds_to_json(const std::vector<RoundLog>& rounds);

void write_json_file(const nlohmann::ordered_json& j, const std::filesystem::path& path);

}  // namespace lsf
