#include "lsf/manifest.hpp"

#include <fstream>

#include "lsf/prf.hpp"

namespace lsf {

using json = nlohmann::ordered_json;

json RunManifest::to_json() const {
  json j;
  j["manifest_version"] = kManifestVersion;
  j["tool"] = "lsfjoin";
  j["prf_version"] = kPrfVersion;
  j["command"] = command;
  j["argv"] = argv;
  j["params"] = params;
  j["seeds"] = seeds;
  j["outputs"] = outputs;
  j["results"] = results;
  j["timing"] = {{"wall_seconds", wall_seconds}};
  return j;
}

RunManifest RunManifest::from_json(const json& j) {
  if (j.value("prf_version", 0U) != kPrfVersion) {
    throw std::runtime_error("manifest was written with a different prf version");
  }
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.params = j.value("params", json::object());
  m.seeds = j.value("seeds", json::object());
  m.outputs = j.value("outputs", json::object());
  m.results = j.value("results", json::object());
  if (j.contains("timing")) m.wall_seconds = j["timing"].value("wall_seconds", 0.0);
  return m;
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void RunManifest::write(const std::filesystem::path& path) const { write_json_file(to_json(), path); }

RunManifest RunManifest::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return from_json(json::parse(in));
}

json cost_to_json(const CostReport& cost) {
  json j;
  j["cost_report_version"] = kCostReportVersion;
  j["units"] = {{"communication", "words"}, {"work", "comparisons*degree"}};
  j["processors"] = cost.processors();
  j["total_communication"] = cost.total_communication();
  j["total_work"] = cost.total_work();
  j["max_load"] = cost.max_load();
  j["mean_load"] = cost.mean_load();
  j["max_work"] = cost.max_work();
  j["mean_work"] = cost.mean_work();
  j["buckets"] = cost.buckets;
  j["survivors"] = cost.survivors;
  j["load"] = std::vector<std::uint64_t>(cost.load().begin(), cost.load().end());
  j["work"] = std::vector<std::uint64_t>(cost.work().begin(), cost.work().end());
  return j;
}

json iteration_log_to_json(const std::vector<IterationStats>& log) {
  json arr = json::array();
  for (const auto& s : log) {
    arr.push_back({{"iteration", s.iteration},
                   {"degree_lo", s.degree_lo},
                   {"degree_hi", s.degree_hi},
                   {"nodes", s.nodes},
                   {"alpha", s.alpha},
                   {"survivors", s.survivors},
                   {"buckets", s.buckets},
                   {"comparisons", s.comparisons},
                   {"new_pairs", s.new_pairs}});
  }
  return arr;
}

json rounds_to_json(const std::vector<RoundLog>& rounds) {
  json arr = json::array();
  for (const auto& r : rounds) {
    arr.push_back({{"round", r.round},
                   {"iterations", r.iterations},
                   {"active_before", r.active_before},
                   {"found", r.found},
                   {"active_after", r.active_after}});
  }
  return arr;
}

}  // namespace lsf
