#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lsf/eval.hpp"
#include "lsf/graph.hpp"
#include "lsf/pair_set.hpp"

namespace lsf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Runs one command line (without the program name). Commands: gen, join,
/// eval, cost, histogram, phi.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Edge list, or the binary cache when the file starts with its magic.
BipartiteGraph load_graph(const std::filesystem::path& path);

/// The node sample `join --sample-size` verifies against and `eval` measures
/// on: derived from the run seed only.
std::vector<NodeId> cli_sample(std::uint32_t num_nodes, std::uint32_t m, std::uint64_t seed);

/// "u<TAB>v<TAB>cosine" with external node ids, in key order.
void write_pairs_tsv(const BipartiteGraph& g, const PairSet& pairs, std::ostream& out);
/// Reads "u v [cosine ...]" lines; ids are resolved against g's node names.
/// Cosines are recomputed from g.
PairSet read_pairs_tsv(const BipartiteGraph& g, std::istream& in);

/// Shortest decimal that round-trips.
std::string format_double(double x);

}  // namespace lsf
