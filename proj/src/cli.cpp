#include "lsf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "lsf/cluster.hpp"
#include "lsf/error.hpp"
#include "lsf/manifest.hpp"
#include "lsf/prf.hpp"

namespace lsf {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSampleTag = 0x73616d706c65ULL;   // "sample"
constexpr std::uint64_t kAssignTag = 0x61737369676eULL;   // "assign"

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

BipartiteGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() == 4 && std::string_view(magic, 4) == "LSFG") return load_binary(path);
  return load_edge_list_file(path);
}

std::vector<NodeId> cli_sample(std::uint32_t num_nodes, std::uint32_t m, std::uint64_t seed) {
  return sample_nodes(num_nodes, m, subseed(seed, kSampleTag));
}

void write_pairs_tsv(const BipartiteGraph& g, const PairSet& pairs, std::ostream& out) {
  for (const auto& p : pairs) {
    out << g.node_name(p.u) << '\t' << g.node_name(p.v) << '\t' << format_double(p.cosine) << '\n';
  }
}

namespace {

std::unordered_map<std::string, NodeId> name_index(const BipartiteGraph& g) {
  std::unordered_map<std::string, NodeId> idx;
  idx.reserve(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) idx.emplace(g.node_name(v), v);
  return idx;
}

}  // namespace

PairSet read_pairs_tsv(const BipartiteGraph& g, std::istream& in) {
  const auto idx = name_index(g);
  std::vector<SimilarPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string a;
    std::string b;
    if (!(fields >> a >> b)) throw ParseError(lineno, "expected at least two fields");
    const auto ia = idx.find(a);
    const auto ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) {
      throw ParseError(lineno, "pair refers to a node missing from the graph");
    }
    if (ia->second == ib->second) throw ParseError(lineno, "pair of a node with itself");
    const NodeId u = std::min(ia->second, ib->second);
    const NodeId v = std::max(ia->second, ib->second);
    pairs.push_back({u, v, cosine(g, u, v), 0, 0});
  }
  PairSet out;
  out.add(std::move(pairs));
  return out;
}

namespace {

// Writes to a file, or to the fallback stream when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  fn(f);
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string manifest_path(const std::string& explicit_path, const std::string& out) {
  if (!explicit_path.empty()) return explicit_path;
  if (!out.empty()) return out + ".manifest.json";
  return {};
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Strategy parse_strategy(const std::string& s) {
  if (s == "lsf") return Strategy::lsf;
  if (s == "hash-join") return Strategy::hash_join;
  if (s == "combined") return Strategy::combined;
  throw DomainError("unknown strategy " + s);
}

HashJoinLayout parse_layout(const std::string& s) {
  if (s == "auto") return HashJoinLayout::automatic;
  if (s == "grid") return HashJoinLayout::grid;
  if (s == "projective") return HashJoinLayout::projective;
  throw DomainError("unknown layout " + s);
}

std::optional<double> parse_alpha(const std::string& s) {
  if (s == "auto") return std::nullopt;
  double a = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), a);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw DomainError("--alpha must be 'auto' or a number");
  if (!(a > 0.0 && a < 1.0)) throw DomainError("--alpha must lie in (0, 1)");
  return a;
}

std::vector<double> parse_bins(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    double x = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
      throw DomainError("--bins: bad number '" + tok + "'");
    }
    out.push_back(x);
    pos = comma + 1;
  }
  return out;
}

// Options shared by commands that run a join.
struct JoinOptions {
  std::string tau;
  std::string alpha = "auto";
  std::uint64_t k = 1024;
  std::uint32_t beta = 1;
  std::uint32_t p = 1;
  std::string strategy = "lsf";
  double c = 0.5;
  std::string layout = "auto";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool single_bucket = false;
  double target = 2.0;

  void add_to(CLI::App* cmd, bool with_cluster) {
    cmd->add_option("--alpha", alpha, "survival probability per dimension, or 'auto'")->capture_default_str();
    cmd->add_option("--k", k, "repetitions per iteration (power of two)")->capture_default_str();
    cmd->add_option("--target-collisions", target, "expected co-survivals of a pair at tau (auto alpha)")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd->add_option("--threads", threads, "worker threads")->capture_default_str();
    cmd->add_flag("--single-bucket", single_bucket, "filter all nodes with one alpha");
    if (with_cluster) {
      cmd->add_option("--p", p, "processors")->capture_default_str();
      cmd->add_option("--strategy", strategy, "lsf, hash-join or combined")->capture_default_str();
      cmd->add_option("--c", c, "combined strategy: k = p^c")->capture_default_str();
      cmd->add_option("--layout", layout, "hash-join layout: auto, grid or projective")->capture_default_str();
    }
  }

  JoinConfig config() const {
    JoinConfig cfg;
    cfg.tau = Threshold::parse(tau);
    cfg.alpha = parse_alpha(alpha);
    cfg.target_collisions = target;
    cfg.k = k;
    cfg.beta = beta;
    cfg.seed = seed;
    cfg.cluster.p = p;
    cfg.cluster.assignment_seed = subseed(seed, kAssignTag);
    cfg.cluster.strategy = parse_strategy(strategy);
    cfg.cluster.c = c;
    cfg.cluster.layout = parse_layout(layout);
    cfg.single_bucket = single_bucket;
    cfg.threads = std::max(1U, threads);
    return cfg;
  }

  json to_json() const {
    return {{"tau", tau},         {"alpha", alpha}, {"k", k},
            {"beta", beta},       {"p", p},         {"strategy", strategy},
            {"c", c},             {"layout", layout}, {"threads", threads},
            {"single_bucket", single_bucket}, {"target_collisions", target}};
  }
};

json cost_summary(const CostReport& cost) {
  return {{"total_communication", cost.total_communication()},
          {"total_work", cost.total_work()},
          {"max_load", cost.max_load()},
          {"mean_load", cost.mean_load()},
          {"max_work", cost.max_work()},
          {"mean_work", cost.mean_work()},
          {"buckets", cost.buckets},
          {"survivors", cost.survivors}};
}

GroundTruth planted_truth(const BipartiteGraph& g, const std::string& path, const Threshold& tau) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  GroundTruth truth{{}, read_pairs_tsv(g, in), tau};
  truth.sample.resize(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) truth.sample[v] = v;
  return truth;
}

class Cli {
 public:
  Cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
      : args_(args), out_(out), err_(err) {}

  int run();

 private:
  void setup_gen();
  void setup_join();
  void setup_eval();
  void setup_cost();
  void setup_histogram();
  void setup_phi();

  void finish(RunManifest& m, const std::string& path) {
    m.argv = args_;
    m.wall_seconds = elapsed(start_);
    if (!path.empty()) m.write(path);
  }

  const std::vector<std::string>& args_;
  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"Set similarity join by locality sensitive filtering", "lsfjoin"};
  std::function<void()> action_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

  // gen
  struct {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    double gamma = 0.0;
    double cold_degree = 10.0;
    std::uint32_t m = 0;
    std::string tau;
    std::uint64_t seed = 0;
    std::string in, out, pairs, manifest;
    bool binary = false;
  } gen_;
  // join
  JoinOptions join_;
  struct {
    std::string input, out, cost, manifest;
    std::uint32_t sample_size = 0;
    std::uint32_t rounds = 0;
    double schedule_scale = 1.0;
    bool no_verify = false;
  } jo_;
  // eval
  JoinOptions eval_join_;
  struct {
    std::string input, pairs, planted, out, manifest;
    std::uint32_t sample_size = 0;
    std::uint32_t sweep = 0;
  } ev_;
  // cost
  struct {
    double tau = 0.0;
    double c_min = 0.0;
    double c_max = 2.0;
    double step = 0.01;
    std::string out;
  } co_;
  // histogram
  struct {
    std::string input, out, bins = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
    std::uint32_t sample_size = 100;
    std::uint64_t seed = 0;
    unsigned threads = 1;
  } hi_;
  // phi
  struct {
    std::string input, out;
    double alpha = 0.5;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    std::uint32_t exact_limit = 10'000;
  } ph_;
};

void Cli::setup_gen() {
  auto* gen = app_.add_subcommand("gen", "generate or normalize a bipartite graph");
  gen->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", gen_.seed, "generator seed")->capture_default_str();
    c->add_option("--out", gen_.out, "edge list output (stdout if omitted)");
    c->add_option("--manifest", gen_.manifest, "run manifest (default <out>.manifest.json)");
    c->add_flag("--binary", gen_.binary, "write the binary cache format instead of TSV");
  };
  auto write_graph = [this](const BipartiteGraph& g) {
    if (gen_.binary) {
      if (gen_.out.empty()) throw DomainError("--binary needs --out");
      save_binary(g, gen_.out);
    } else {
      emit(gen_.out, out_, [&](std::ostream& os) { write_edge_list(g, os); });
    }
  };

  auto* sk = gen->add_subcommand("skewed", "hot/cold skewed random graph");
  sk->add_option("--n", gen_.n, "nodes")->required();
  sk->add_option("--d", gen_.d, "degree (even)")->required();
  sk->add_option("--gamma", gen_.gamma, "hot set size as a multiple of d")->required();
  sk->add_option("--cold-degree", gen_.cold_degree, "average left degree of cold dimensions")
      ->capture_default_str();
  common(sk);
  sk->callback([this, write_graph] {
    action_ = [this, write_graph] {
      const auto g = gen_skewed({gen_.n, gen_.d, gen_.gamma, gen_.cold_degree, gen_.seed});
      write_graph(g);
      RunManifest m;
      m.command = "gen skewed";
      m.params = {{"n", gen_.n}, {"d", gen_.d}, {"gamma", gen_.gamma}, {"cold_degree", gen_.cold_degree}};
      m.seeds = {{"seed", gen_.seed}};
      m.outputs = {{"graph", gen_.out}};
      m.results = {{"dims", g.num_dims()}, {"nodes", g.num_nodes()}, {"edges", g.num_edges()}};
      finish(m, manifest_path(gen_.manifest, gen_.out));
    };
  });

  auto* ma = gen->add_subcommand("matching", "planted matching at a given similarity");
  ma->add_option("--n", gen_.n, "nodes (even)")->required();
  ma->add_option("--d", gen_.d, "degree")->required();
  ma->add_option("--tau", gen_.tau, "similarity of planted pairs")->required();
  ma->add_option("--pairs", gen_.pairs, "planted pairs output (default <out>.pairs.tsv)");
  common(ma);
  ma->callback([this, write_graph] {
    action_ = [this, write_graph] {
      const auto pm = gen_matching(gen_.n, gen_.d, Threshold::parse(gen_.tau), gen_.seed);
      write_graph(pm.graph);
      std::string pairs_path = gen_.pairs;
      if (pairs_path.empty() && !gen_.out.empty()) pairs_path = gen_.out + ".pairs.tsv";
      if (!pairs_path.empty()) {
        emit(pairs_path, out_, [&](std::ostream& os) {
          for (const auto& [u, v] : pm.pairs) os << pm.graph.node_name(u) << '\t' << pm.graph.node_name(v) << '\n';
        });
      }
      RunManifest m;
      m.command = "gen matching";
      m.params = {{"n", gen_.n}, {"d", gen_.d}, {"tau", gen_.tau}};
      m.seeds = {{"seed", gen_.seed}};
      m.outputs = {{"graph", gen_.out}, {"pairs", pairs_path}};
      m.results = {{"dims", pm.graph.num_dims()}, {"edges", pm.graph.num_edges()}, {"pairs", pm.pairs.size()}};
      finish(m, manifest_path(gen_.manifest, gen_.out));
    };
  });

  auto* un = gen->add_subcommand("uniform", "d distinct dimensions per node out of m");
  un->add_option("--n", gen_.n, "nodes")->required();
  un->add_option("--d", gen_.d, "degree")->required();
  un->add_option("--m", gen_.m, "dimensions")->required();
  common(un);
  un->callback([this, write_graph] {
    action_ = [this, write_graph] {
      const auto g = gen_uniform(gen_.n, gen_.d, gen_.m, gen_.seed);
      write_graph(g);
      RunManifest m;
      m.command = "gen uniform";
      m.params = {{"n", gen_.n}, {"d", gen_.d}, {"m", gen_.m}};
      m.seeds = {{"seed", gen_.seed}};
      m.outputs = {{"graph", gen_.out}};
      m.results = {{"edges", g.num_edges()}};
      finish(m, manifest_path(gen_.manifest, gen_.out));
    };
  });

  auto* el = gen->add_subcommand("edge-list", "read an edge list and write it back normalized");
  el->add_option("--in", gen_.in, "input edge list or binary cache")->required();
  common(el);
  el->callback([this, write_graph] {
    action_ = [this, write_graph] {
      const auto g = load_graph(gen_.in);
      write_graph(g);
      RunManifest m;
      m.command = "gen edge-list";
      m.params = {{"in", gen_.in}};
      m.outputs = {{"graph", gen_.out}};
      m.results = {{"dims", g.num_dims()}, {"nodes", g.num_nodes()}, {"edges", g.num_edges()}};
      finish(m, manifest_path(gen_.manifest, gen_.out));
    };
  });
}

void Cli::setup_join() {
  auto* cmd = app_.add_subcommand("join", "find all pairs with cosine similarity at least tau");
  cmd->add_option("--input", jo_.input, "graph (edge list or binary cache)")->required();
  cmd->add_option("--tau", join_.tau, "similarity threshold, decimal")->required();
  cmd->add_option("--beta", join_.beta, "independent iterations")->capture_default_str();
  join_.add_to(cmd, true);
  cmd->add_option("--sample-size", jo_.sample_size,
                  "verify only pairs touching this many sampled nodes (0: all pairs)")
      ->capture_default_str();
  cmd->add_option("--rounds", jo_.rounds, "matching mode: rounds (0: off)")->capture_default_str();
  cmd->add_option("--schedule-scale", jo_.schedule_scale, "matching mode: iteration schedule factor")
      ->capture_default_str();
  cmd->add_flag("--no-verify", jo_.no_verify, "account costs only");
  cmd->add_option("--out", jo_.out, "pairs TSV (stdout if omitted)");
  cmd->add_option("--cost", jo_.cost, "cost report JSON");
  cmd->add_option("--manifest", jo_.manifest, "run manifest (default <out>.manifest.json)");
  cmd->callback([this] {
    action_ = [this] {
      const auto g = load_graph(jo_.input);
      JoinConfig cfg = join_.config();
      cfg.verify = !jo_.no_verify;
      if (jo_.sample_size > 0) cfg.probe = cli_sample(g.num_nodes(), jo_.sample_size, join_.seed);

      PairSet pairs;
      CostReport cost;
      json log;
      json rounds = json::array();
      if (jo_.rounds > 0) {
        if (cfg.cluster.strategy != Strategy::lsf) throw DomainError("--rounds needs --strategy lsf");
        auto r = matching_join(g, cfg, jo_.rounds, jo_.schedule_scale);
        pairs = std::move(r.pairs);
        cost = std::move(r.cost);
        rounds = rounds_to_json(r.rounds);
      } else {
        auto r = run_join(g, cfg);
        pairs = std::move(r.pairs);
        cost = std::move(r.cost);
        log = iteration_log_to_json(r.log);
      }
      emit(jo_.out, out_, [&](std::ostream& os) { write_pairs_tsv(g, pairs, os); });
      if (!jo_.cost.empty()) write_json_file(cost_to_json(cost), jo_.cost);

      RunManifest m;
      m.command = "join";
      m.params = join_.to_json();
      m.params["input"] = jo_.input;
      m.params["sample_size"] = jo_.sample_size;
      m.params["rounds"] = jo_.rounds;
      m.params["schedule_scale"] = jo_.schedule_scale;
      m.params["verify"] = cfg.verify;
      m.seeds = {{"seed", join_.seed}, {"assignment_seed", cfg.cluster.assignment_seed}};
      m.outputs = {{"pairs", jo_.out}, {"cost", jo_.cost}};
      m.results = {{"pairs", pairs.size()}, {"cost", cost_summary(cost)}};
      if (!log.is_null()) m.results["iterations"] = log;
      if (jo_.rounds > 0) m.results["rounds"] = rounds;
      finish(m, manifest_path(jo_.manifest, jo_.out));

      std::ostream& info = jo_.out.empty() ? err_ : out_;
      info << "pairs " << pairs.size() << "\n"
           << "communication " << cost.total_communication() << "\n"
           << "max_work " << cost.max_work() << "\n";
    };
  });
}

void Cli::setup_eval() {
  auto* cmd = app_.add_subcommand("eval", "recall of a pairs file, or a recall-vs-beta sweep");
  cmd->add_option("--input", ev_.input, "graph")->required();
  cmd->add_option("--pairs", ev_.pairs, "pairs TSV to evaluate");
  cmd->add_option("--planted", ev_.planted, "planted pairs TSV used as the truth");
  cmd->add_option("--tau", eval_join_.tau, "similarity threshold")->required();
  cmd->add_option("--sample-size", ev_.sample_size, "ground-truth sample (0: all nodes)")->capture_default_str();
  cmd->add_option("--sweep", ev_.sweep, "run the join for beta = 1..B and report recall per beta");
  eval_join_.add_to(cmd, false);
  cmd->add_option("--out", ev_.out, "report (JSON, or CSV for --sweep; stdout if omitted)");
  cmd->add_option("--manifest", ev_.manifest, "run manifest");
  cmd->callback([this] {
    action_ = [this] {
      if (ev_.pairs.empty() == (ev_.sweep == 0)) throw DomainError("eval needs exactly one of --pairs and --sweep");
      const auto g = load_graph(ev_.input);
      const Threshold tau = Threshold::parse(eval_join_.tau);
      GroundTruth truth;
      if (!ev_.planted.empty()) {
        truth = planted_truth(g, ev_.planted, tau);
      } else {
        const std::uint32_t m = ev_.sample_size == 0 ? g.num_nodes() : ev_.sample_size;
        truth = ground_truth(g, tau, cli_sample(g.num_nodes(), m, eval_join_.seed), eval_join_.threads);
      }
      RunManifest man;
      man.command = "eval";
      man.params = {{"input", ev_.input}, {"tau", eval_join_.tau}, {"planted", ev_.planted},
                    {"sample_size", ev_.sample_size}};
      man.seeds = {{"seed", eval_join_.seed}};
      man.outputs = {{"report", ev_.out}};

      if (ev_.sweep == 0) {
        std::ifstream in(ev_.pairs);
        if (!in) throw std::runtime_error("cannot open " + ev_.pairs);
        const PairSet found = read_pairs_tsv(g, in);
        const double r = recall(found, truth);
        json report = {{"recall", r},
                       {"truth_pairs", truth.pairs.size()},
                       {"found_pairs", found.size()},
                       {"sample_size", truth.sample.size()}};
        emit(ev_.out, out_, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
        man.params["pairs"] = ev_.pairs;
        man.results = report;
      } else {
        JoinOptions opts = eval_join_;
        opts.beta = ev_.sweep;
        JoinConfig cfg = opts.config();
        if (ev_.planted.empty() && truth.sample.size() < g.num_nodes()) cfg.probe = truth.sample;
        const auto run = lsf_join(g, cfg);
        const auto curve = recall_by_iteration(run.pairs, truth, cfg.first_iteration, ev_.sweep);
        std::vector<std::uint64_t> survivors(ev_.sweep, 0);
        for (const auto& s : run.log) survivors[s.iteration - cfg.first_iteration] += s.survivors;
        emit(ev_.out, out_, [&](std::ostream& os) {
          os << "beta,recall,survivors\n";
          std::uint64_t total = 0;
          for (std::uint32_t b = 0; b < ev_.sweep; ++b) {
            total += survivors[b];
            os << b + 1 << ',' << format_double(curve[b]) << ',' << total << '\n';
          }
        });
        man.params["sweep"] = ev_.sweep;
        man.params["join"] = opts.to_json();
        man.results = {{"final_recall", curve.back()}, {"truth_pairs", truth.pairs.size()}};
      }
      finish(man, ev_.manifest);
    };
  });
}

void Cli::setup_cost() {
  auto* cmd = app_.add_subcommand("cost", "communication and work exponents at p = N over a grid of c");
  cmd->add_option("--tau", co_.tau, "similarity threshold")->required();
  cmd->add_option("--c-min", co_.c_min, "first c")->capture_default_str();
  cmd->add_option("--c-max", co_.c_max, "last c")->capture_default_str();
  cmd->add_option("--step", co_.step, "grid step")->capture_default_str();
  cmd->add_option("--out", co_.out, "CSV (stdout if omitted)");
  cmd->callback([this] {
    action_ = [this] {
      const auto curve = exponent_curve(co_.tau, co_.c_min, co_.c_max, co_.step);
      emit(co_.out, out_, [&](std::ostream& os) { write_exponent_csv(curve, os); });
    };
  });
}

void Cli::setup_histogram() {
  auto* cmd = app_.add_subcommand("histogram", "cosine similarity histogram of sampled pairs");
  cmd->add_option("--input", hi_.input, "graph")->required();
  cmd->add_option("--bins", hi_.bins, "ascending bin edges, comma separated")->capture_default_str();
  cmd->add_option("--sample-size", hi_.sample_size, "sampled nodes")->capture_default_str();
  cmd->add_option("--seed", hi_.seed, "sample seed")->capture_default_str();
  cmd->add_option("--threads", hi_.threads, "worker threads")->capture_default_str();
  cmd->add_option("--out", hi_.out, "CSV (stdout if omitted)");
  cmd->callback([this] {
    action_ = [this] {
      const auto g = load_graph(hi_.input);
      const auto h = similarity_histogram(g, parse_bins(hi_.bins), std::min(hi_.sample_size, g.num_nodes()),
                                          subseed(hi_.seed, kSampleTag), hi_.threads);
      emit(hi_.out, out_, [&](std::ostream& os) { write_histogram_csv(h, os); });
    };
  });
}

void Cli::setup_phi() {
  auto* cmd = app_.add_subcommand("phi", "profile of the graph at a given alpha");
  cmd->add_option("--input", ph_.input, "graph")->required();
  cmd->add_option("--alpha", ph_.alpha, "survival probability per dimension")->required();
  cmd->add_option("--samples", ph_.samples, "ordered pairs drawn when estimating")->capture_default_str();
  cmd->add_option("--seed", ph_.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--exact-limit", ph_.exact_limit, "largest N computed exactly")->capture_default_str();
  cmd->add_option("--out", ph_.out, "JSON (stdout if omitted)");
  cmd->callback([this] {
    action_ = [this] {
      const auto g = load_graph(ph_.input);
      const auto est = profile_phi(g, ph_.alpha, ph_.samples, ph_.seed, ph_.exact_limit);
      json j = {{"alpha", ph_.alpha},
                {"phi", est.value},
                {"std_error", est.std_error},
                {"exact", est.exact},
                {"samples", est.samples},
                {"pair_convention", "ordered"}};
      emit(ph_.out, out_, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    };
  });
}

int Cli::run() {
  app_.require_subcommand(1);
  setup_gen();
  setup_join();
  setup_eval();
  setup_cost();
  setup_histogram();
  setup_phi();
  try {
    std::vector<std::string> reversed(args_.rbegin(), args_.rend());
    app_.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app_.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app_.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (action_) action_();
  } catch (const DomainError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(args, out, err);
  return cli.run();
}

}  // namespace lsf
