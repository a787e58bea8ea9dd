#include "lsf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "lsf/error.hpp"
#include "lsf/prf.hpp"
#include "lsf/sampling.hpp"

namespace lsf {

BipartiteGraph::BipartiteGraph(std::uint32_t num_dims, std::vector<std::uint64_t> offsets,
                               std::vector<DimId> dims, std::vector<std::string> dim_names,
                               std::vector<std::string> node_names)
    : num_dims_(num_dims),
      offsets_(std::move(offsets)),
      dims_(std::move(dims)),
      dim_names_(std::move(dim_names)),
      node_names_(std::move(node_names)) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != dims_.size()) {
    throw DomainError("BipartiteGraph: offsets do not describe the adjacency array");
  }
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    if (offsets_[v] > offsets_[v + 1]) throw DomainError("BipartiteGraph: offsets not monotone");
    for (std::uint64_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
      if (dims_[e] >= num_dims_) throw DomainError("BipartiteGraph: dimension id out of range");
      if (e > offsets_[v] && dims_[e - 1] >= dims_[e]) {
        throw DomainError("BipartiteGraph: adjacency list not strictly ascending");
      }
    }
  }
  if (!dim_names_.empty() && dim_names_.size() != num_dims_) {
    throw DomainError("BipartiteGraph: dimension name count mismatch");
  }
  if (!node_names_.empty() && node_names_.size() != num_nodes()) {
    throw DomainError("BipartiteGraph: node name count mismatch");
  }
}

BipartiteGraph BipartiteGraph::from_lists(std::uint32_t num_dims,
                                          std::vector<std::vector<DimId>> lists) {
  std::vector<std::uint64_t> offsets{0};
  std::vector<DimId> dims;
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    dims.insert(dims.end(), l.begin(), l.end());
    offsets.push_back(dims.size());
  }
  return BipartiteGraph(num_dims, std::move(offsets), std::move(dims));
}

std::uint32_t BipartiteGraph::max_degree() const {
  std::uint32_t m = 0;
  for (NodeId v = 0; v < num_nodes(); ++v) m = std::max(m, degree(v));
  return m;
}

double BipartiteGraph::average_degree() const {
  return num_nodes() == 0 ? 0.0 : static_cast<double>(num_edges()) / num_nodes();
}

std::string BipartiteGraph::node_name(NodeId v) const {
  return node_names_.empty() ? std::to_string(v) : node_names_[v];
}

std::string BipartiteGraph::dim_name(DimId u) const {
  return dim_names_.empty() ? std::to_string(u) : dim_names_[u];
}

std::optional<NodeId> BipartiteGraph::find_node(std::string_view name) const {
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (node_name(v) == name) return v;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> BipartiteGraph::dim_degrees() const {
  std::vector<std::uint64_t> deg(num_dims_, 0);
  for (DimId u : dims_) ++deg[u];
  return deg;
}

// ---------------------------------------------------------------------------
// Edge-list ingestion

namespace {

struct IdMap {
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::string> names;

  std::uint32_t intern(std::string_view s) {
    auto [it, inserted] = index.try_emplace(std::string(s), static_cast<std::uint32_t>(names.size()));
    if (inserted) names.emplace_back(s);
    return it->second;
  }
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

BipartiteGraph load_edge_list(std::istream& in) {
  IdMap left, right;
  std::vector<std::vector<DimId>> lists;
  std::string line;
  std::size_t lineno = 0;
  std::string_view fields[3];
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s(line);
    std::size_t nfields = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && is_space(s[i])) ++i;
      if (i == s.size()) break;
      std::size_t j = i;
      while (j < s.size() && !is_space(s[j])) ++j;
      if (nfields < 3) fields[nfields] = s.substr(i, j - i);
      ++nfields;
      i = j;
    }
    if (nfields == 0 || fields[0].front() == '#') continue;
    if (nfields != 2) {
      throw ParseError(lineno, "expected 2 fields (left_id, right_id), found " + std::to_string(nfields));
    }
    const DimId u = left.intern(fields[0]);
    const NodeId v = right.intern(fields[1]);
    if (v == lists.size()) lists.emplace_back();
    lists[v].push_back(u);
  }
  if (in.bad()) throw std::runtime_error("edge list: read error");

  std::vector<std::uint64_t> offsets{0};
  std::vector<DimId> dims;
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    dims.insert(dims.end(), l.begin(), l.end());
    offsets.push_back(dims.size());
  }
  const auto m = static_cast<std::uint32_t>(left.names.size());
  return BipartiteGraph(m, std::move(offsets), std::move(dims), std::move(left.names),
                        std::move(right.names));
}

BipartiteGraph load_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_edge_list(in);
}

void write_edge_list(const BipartiteGraph& g, std::ostream& out) {
  std::vector<std::string> dim_names;
  if (g.dim_names().empty()) {
    dim_names.reserve(g.num_dims());
    for (DimId u = 0; u < g.num_dims(); ++u) dim_names.push_back(std::to_string(u));
  }
  const auto dim_name = [&](DimId u) -> const std::string& {
    return dim_names.empty() ? g.dim_names()[u] : dim_names[u];
  };
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::string vname = g.node_name(v);
    for (DimId u : g.neighbors(v)) out << dim_name(u) << '\t' << vname << '\n';
  }
}

void write_edge_list_file(const BipartiteGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(g, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Binary cache

namespace {

constexpr char kMagic[4] = {'L', 'S', 'F', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;

void put_u64(std::ostream& out, std::uint64_t x) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>(x >> (8 * i));
  out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("binary graph: truncated");
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | b[i];
  return x;
}

void put_strings(std::ostream& out, std::span<const std::string> names) {
  put_u64(out, names.size());
  for (const auto& s : names) {
    put_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
}

std::vector<std::string> get_strings(std::istream& in) {
  std::vector<std::string> names(get_u64(in));
  for (auto& s : names) {
    s.resize(get_u64(in));
    if (!in.read(s.data(), static_cast<std::streamsize>(s.size()))) {
      throw std::runtime_error("binary graph: truncated");
    }
  }
  return names;
}

}  // namespace

void save_binary(const BipartiteGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kMagic, 4);
  put_u64(out, kBinaryVersion);
  put_u64(out, g.num_dims());
  put_u64(out, g.num_nodes());
  put_u64(out, g.num_edges());
  for (auto o : g.offsets()) put_u64(out, o);
  for (auto u : g.dims()) put_u64(out, u);
  put_strings(out, g.dim_names());
  put_strings(out, g.node_names());
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

BipartiteGraph load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("binary graph: bad magic");
  }
  if (get_u64(in) != kBinaryVersion) throw std::runtime_error("binary graph: unsupported version");
  const auto m = static_cast<std::uint32_t>(get_u64(in));
  const auto n = get_u64(in);
  const auto e = get_u64(in);
  std::vector<std::uint64_t> offsets(n + 1);
  for (auto& o : offsets) o = get_u64(in);
  std::vector<DimId> dims(e);
  for (auto& u : dims) u = static_cast<DimId>(get_u64(in));
  auto dim_names = get_strings(in);
  auto node_names = get_strings(in);
  return BipartiteGraph(m, std::move(offsets), std::move(dims), std::move(dim_names),
                        std::move(node_names));
}

// ---------------------------------------------------------------------------
// Similarity

std::uint32_t intersection_size(std::span<const DimId> a, std::span<const DimId> b) {
  std::uint32_t count = 0;
  const DimId* pa = a.data();
  const DimId* pb = b.data();
  const DimId* ea = pa + a.size();
  const DimId* eb = pb + b.size();
  while (pa != ea && pb != eb) {
    const DimId x = *pa;
    const DimId y = *pb;
    count += (x == y);
    pa += (x <= y);
    pb += (y <= x);
  }
  return count;
}

double cosine(const BipartiteGraph& g, NodeId u, NodeId v) {
  const auto du = g.degree(u);
  const auto dv = g.degree(v);
  if (du == 0 || dv == 0) throw DomainError("cosine: zero-degree node");
  const double inter = intersection_size(g.neighbors(u), g.neighbors(v));
  return inter / std::sqrt(static_cast<double>(du) * dv);
}

std::vector<DegreeBucket> degree_buckets(const BipartiteGraph& g, std::span<const NodeId> nodes) {
  std::vector<DegreeBucket> by_level(33);
  for (NodeId v : nodes) {
    const std::uint32_t d = g.degree(v);
    if (d == 0) continue;
    const unsigned level = 31 - static_cast<unsigned>(__builtin_clz(d));
    by_level[level].nodes.push_back(v);
  }
  std::vector<DegreeBucket> out;
  for (unsigned j = 0; j < by_level.size(); ++j) {
    if (by_level[j].nodes.empty()) continue;
    by_level[j].lo = std::uint32_t{1} << j;
    by_level[j].hi = j >= 31 ? UINT32_MAX : std::uint32_t{1} << (j + 1);
    out.push_back(std::move(by_level[j]));
  }
  return out;
}

std::vector<DegreeBucket> degree_buckets(const BipartiteGraph& g) {
  std::vector<NodeId> all(g.num_nodes());
  std::iota(all.begin(), all.end(), NodeId{0});
  return degree_buckets(g, all);
}

// ---------------------------------------------------------------------------
// Generators

BipartiteGraph gen_skewed(const SkewedParams& p) {
  if (p.n == 0) throw DomainError("gen_skewed: n must be positive");
  if (p.d == 0 || p.d % 2 != 0) throw DomainError("gen_skewed: d must be a positive even number");
  if (!(p.gamma > 0)) throw DomainError("gen_skewed: gamma must be positive");
  if (!(p.cold_degree > 0)) throw DomainError("gen_skewed: cold degree must be positive");
  const double hot_real = p.gamma * p.d;
  const double hot_rounded = std::round(hot_real);
  if (std::abs(hot_real - hot_rounded) > 1e-9) {
    throw DomainError("gen_skewed: gamma * d must be an integer");
  }
  const std::uint32_t half = p.d / 2;
  const auto hot = static_cast<std::uint64_t>(hot_rounded);
  if (hot < half) throw DomainError("gen_skewed: hot set must hold at least d/2 dimensions");
  const auto cold = std::max<std::uint64_t>(
      half, static_cast<std::uint64_t>(std::ceil(static_cast<double>(p.n) * half / p.cold_degree)));
  if (hot + cold > UINT32_MAX) throw DomainError("gen_skewed: too many dimensions");

  PrfStream rng(subseed(p.seed, static_cast<std::uint64_t>(Domain::generator)), Domain::generator, 1);
  std::vector<std::uint64_t> offsets{0};
  std::vector<DimId> dims;
  dims.reserve(static_cast<std::size_t>(p.n) * p.d);
  for (std::uint32_t v = 0; v < p.n; ++v) {
    for (auto u : sample_without_replacement<DimId>(hot, half, rng)) dims.push_back(u);
    for (auto u : sample_without_replacement<std::uint64_t>(cold, half, rng)) {
      dims.push_back(static_cast<DimId>(hot + u));
    }
    offsets.push_back(dims.size());
  }
  return BipartiteGraph(static_cast<std::uint32_t>(hot + cold), std::move(offsets), std::move(dims));
}

PlantedMatching gen_matching(std::uint32_t n, std::uint32_t d, const Threshold& tau,
                             std::uint64_t seed) {
  if (n % 2 != 0) throw DomainError("gen_matching: n must be even");
  if (d == 0) throw DomainError("gen_matching: d must be positive");
  const std::uint64_t shared = tau.ceil_times(d);
  if (shared > d) throw DomainError("gen_matching: ceil(tau*d) exceeds d");
  const std::uint64_t pool = 2ULL * d - shared;
  if (pool * (n / 2) > UINT32_MAX) throw DomainError("gen_matching: too many dimensions");

  PrfStream rng(subseed(seed, static_cast<std::uint64_t>(Domain::generator)), Domain::generator, 2);
  // perm[slot] is the node id of matching slot `slot` (pair j = slots 2j, 2j+1).
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  for (std::uint32_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

  std::vector<std::vector<DimId>> lists(n);
  PlantedMatching out;
  out.pairs.reserve(n / 2);
  for (std::uint32_t j = 0; j < n / 2; ++j) {
    const auto base = static_cast<DimId>(j * pool);
    auto& a = lists[perm[2 * j]];
    auto& b = lists[perm[2 * j + 1]];
    for (std::uint64_t t = 0; t < shared; ++t) {
      a.push_back(static_cast<DimId>(base + t));
      b.push_back(static_cast<DimId>(base + t));
    }
    for (std::uint64_t t = 0; t < d - shared; ++t) {
      a.push_back(static_cast<DimId>(base + shared + t));
      b.push_back(static_cast<DimId>(base + d + t));
    }
    out.pairs.emplace_back(std::min(perm[2 * j], perm[2 * j + 1]),
                           std::max(perm[2 * j], perm[2 * j + 1]));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  out.graph = BipartiteGraph::from_lists(static_cast<std::uint32_t>(pool * (n / 2)), std::move(lists));
  return out;
}

BipartiteGraph gen_uniform(std::uint32_t n, std::uint32_t d, std::uint32_t m, std::uint64_t seed) {
  if (d > m) throw DomainError("gen_uniform: d exceeds m");
  PrfStream rng(subseed(seed, static_cast<std::uint64_t>(Domain::generator)), Domain::generator, 3);
  std::vector<std::uint64_t> offsets{0};
  std::vector<DimId> dims;
  dims.reserve(static_cast<std::size_t>(n) * d);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (auto u : sample_without_replacement<DimId>(m, d, rng)) dims.push_back(u);
    offsets.push_back(dims.size());
  }
  return BipartiteGraph(m, std::move(offsets), std::move(dims));
}

}  // namespace lsf
