#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nucleus/analysis.hpp"
#include "nucleus/cliques.hpp"
#include "nucleus/graph.hpp"
#include "nucleus/local.hpp"
#include "nucleus/peeling.hpp"

namespace nucleus::cli {

namespace {

using json = nlohmann::json;

struct CommonConfig {
  std::string input;
  std::string decomp = "core";
  int base = 0;
  std::string comment = "#";
  std::string out;
};

struct DecomposeConfig {
  std::string engine = "peel";
  int threads = 1;
  std::string order = "natural";
  std::uint64_t seed = 0;
  std::size_t max_iters = 0;
  std::optional<double> stop_active_ratio;
  bool trace = false;
};

struct EstimateConfig {
  std::vector<std::string> anchors;
  std::string anchors_file;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  bool exact = false;
};

struct Loaded {
  LoadedGraph loaded;
  Decomposition decomposition;
  CliqueSet cliques;
};

Loaded load(const CommonConfig& cfg) {
  if (cfg.base != 0 && cfg.base != 1) throw ConfigError("--base must be 0 or 1");
  const Decomposition d = parse_decomposition(cfg.decomp);
  LoadOptions options;
  options.base = cfg.base == 1 ? LoadOptions::Base::one : LoadOptions::Base::zero;
  options.comment_prefix = cfg.comment;
  Loaded l{load_edge_list_file(cfg.input, options), d, {}};
  l.cliques = CliqueSet::enumerate(l.loaded.graph, d);
  return l;
}

std::string tuple_labels(const Graph& g, std::span<const VertexId> vertices) {
  std::string s;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(g.label(vertices[i]));
  }
  return s;
}

void write_kappa_csv(std::ostream& os, const Graph& g, const CliqueSet& cs, std::span<const std::uint32_t> kappa) {
  os << "clique_id,vertices,kappa\n";
  for (CliqueId id = 0; id < cs.size(); ++id) {
    os << id << ',' << tuple_labels(g, cs.vertices(id)) << ',' << kappa[id] << '\n';
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

void check_written(std::ofstream& f, const std::string& path) {
  f.close();
  if (!f) throw std::runtime_error("failed writing " + path);
}

json stats_json(const IterationStats& s) {
  return {{"iteration", s.iteration},
          {"recomputations", s.recomputations},
          {"updates", s.updates},
          {"active_ratio", s.active_ratio},
          {"seconds", s.seconds}};
}

json graph_json(const Loaded& l) {
  const auto& st = l.loaded.stats;
  return {{"vertices", l.loaded.graph.vertex_count()},
          {"edges", l.loaded.graph.edge_count()},
          {"lines", st.lines},
          {"edges_read", st.edges_read},
          {"self_loops", st.self_loops},
          {"duplicates", st.duplicates},
          {"remapped", st.remapped}};
}

int cmd_decompose(const CommonConfig& common, const DecomposeConfig& cfg, bool order_given, std::ostream& out) {
  const bool is_and = cfg.engine == "and" || cfg.engine == "and-nonotify";
  if (!is_and && cfg.engine != "snd" && cfg.engine != "peel") {
    throw ConfigError("unknown engine '" + cfg.engine + "' (peel|snd|and|and-nonotify)");
  }
  if (order_given && !is_and) throw ConfigError("--order applies only to the and engines");
  if (cfg.engine == "peel" && (cfg.max_iters != 0 || cfg.stop_active_ratio)) {
    throw ConfigError("--max-iters and --stop-active-ratio do not apply to peel");
  }
  if (cfg.trace && cfg.engine == "peel") throw ConfigError("--trace needs an iterative engine (snd|and|and-nonotify)");
  if (cfg.trace && common.out.empty()) throw ConfigError("--trace needs --out");

  const Loaded l = load(common);
  const Graph& g = l.loaded.graph;
  const CliqueSet& cs = l.cliques;

  json summary;
  summary["input"] = common.input;
  summary["decomposition"] = std::string(to_string(l.decomposition));
  summary["graph"] = graph_json(l);
  summary["cliques"] = cs.size();

  std::vector<std::uint32_t> kappa;
  std::optional<ConvergenceTrace> trace;
  if (cfg.engine == "peel") {
    const auto start = std::chrono::steady_clock::now();
    kappa = peel(g, cs);
    summary["engine"] = {{"name", "peel"}, {"threads", 1}};
    summary["iterations"] = 0;
    summary["converged"] = true;
    summary["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } else {
    EngineOptions options;
    options.threads = cfg.threads;
    options.max_iterations = cfg.max_iters;
    options.stop_active_ratio = cfg.stop_active_ratio;
    options.order = parse_order(cfg.order);
    options.seed = cfg.seed;
    options.notify = cfg.engine == "and";
    if (cfg.trace) {
      trace.emplace(peel(g, cs));
      options.observer = trace->observer();
    }
    DecompositionResult r = cfg.engine == "snd" ? run_snd(g, cs, options) : run_and(g, cs, options);
    json engine = {{"name", r.engine.name}, {"threads", r.engine.threads}, {"notify", r.engine.notify}};
    if (is_and) {
      engine["order"] = std::string(to_string(r.engine.order));
      engine["seed"] = r.engine.seed;
    }
    engine["max_iterations"] = r.engine.max_iterations;
    engine["stop_active_ratio"] = r.engine.stop_active_ratio ? json(*r.engine.stop_active_ratio) : json(nullptr);
    summary["engine"] = engine;
    summary["iterations"] = r.iterations;
    summary["updating_iterations"] = r.updating_iterations;
    summary["converged"] = r.converged;
    summary["recomputations"] = r.recomputations();
    summary["seconds"] = r.seconds;
    json per_iteration = json::array();
    for (const auto& s : r.stats) per_iteration.push_back(stats_json(s));
    summary["per_iteration"] = per_iteration;
    kappa = std::move(r.kappa);
  }

  if (common.out.empty()) {
    write_kappa_csv(out, g, cs, kappa);
    return 0;
  }
  const std::string kappa_path = common.out + ".kappa.csv";
  auto kf = open_output(kappa_path);
  write_kappa_csv(kf, g, cs, kappa);
  check_written(kf, kappa_path);

  if (trace) {
    const std::string trace_path = common.out + ".trace.csv";
    auto tf = open_output(trace_path);
    trace->write_csv(tf);
    check_written(tf, trace_path);
    summary["trace"] = trace_path;
  }
  const std::string summary_path = common.out + ".summary.json";
  auto sf = open_output(summary_path);
  sf << summary.dump(2) << '\n';
  check_written(sf, summary_path);
  out << "wrote " << kappa_path << " and " << summary_path << '\n';
  return 0;
}

// "12" or "3,7" or "1 2 3": original vertex labels of the anchor r-clique.
CliqueId resolve_anchor(const Graph& g, const CliqueSet& cs, const std::string& text) {
  std::vector<VertexId> vertices;
  std::string token;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream tokens(normalized);
  while (tokens >> token) {
    std::uint64_t label = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), label);
    if (ec != std::errc() || p != token.data() + token.size()) throw std::invalid_argument("not a vertex label: " + token);
    auto v = g.find_label(label);
    if (!v) throw std::out_of_range("unknown vertex " + token);
    vertices.push_back(*v);
  }
  if (vertices.size() != static_cast<std::size_t>(cs.r())) {
    throw std::invalid_argument("anchor needs " + std::to_string(cs.r()) + " vertices");
  }
  auto id = cs.find(vertices);
  if (!id) throw std::out_of_range("not a " + std::to_string(cs.r()) + "-clique of the graph");
  return *id;
}

int cmd_estimate(const CommonConfig& common, const EstimateConfig& cfg, std::ostream& out, std::ostream& err) {
  const Loaded l = load(common);
  const Graph& g = l.loaded.graph;
  const CliqueSet& cs = l.cliques;

  std::vector<std::string> anchors = cfg.anchors;
  if (!cfg.anchors_file.empty()) {
    std::ifstream f(cfg.anchors_file);
    if (!f) throw std::runtime_error("cannot read " + cfg.anchors_file);
    std::string line;
    while (std::getline(f, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
      anchors.push_back(line);
    }
  }
  if (cfg.sample > 0) {
    std::vector<CliqueId> ids(cs.size());
    std::iota(ids.begin(), ids.end(), CliqueId{0});
    std::vector<CliqueId> picked;
    std::mt19937_64 rng(cfg.seed);
    std::sample(ids.begin(), ids.end(), std::back_inserter(picked), cfg.sample, rng);
    for (CliqueId id : picked) anchors.push_back(tuple_labels(g, cs.vertices(id)));
  }
  if (anchors.empty()) throw ConfigError("no anchors (use --anchor, --anchors-file or --sample)");

  std::vector<std::uint32_t> kappa;
  if (cfg.exact) kappa = peel(g, cs);

  std::ostringstream table;
  table << "anchor,estimate,exact,status\n";
  std::size_t failures = 0;
  for (const auto& a : anchors) {
    std::string shown = a;
    std::replace(shown.begin(), shown.end(), ',', ' ');
    table << shown << ',';
    try {
      const CliqueId id = resolve_anchor(g, cs, a);
      table << estimate_kappa(g, cs, id) << ',';
      if (cfg.exact) table << kappa[id];
      table << ",ok\n";
    } catch (const std::exception& e) {
      ++failures;
      std::string message = e.what();
      std::replace(message.begin(), message.end(), ',', ';');
      table << ",,error: " << message << '\n';
      err << "anchor '" << a << "': " << e.what() << '\n';
    }
  }

  if (common.out.empty()) {
    out << table.str();
  } else {
    const std::string path = common.out + ".estimate.csv";
    auto f = open_output(path);
    f << table.str();
    check_written(f, path);
    out << "wrote " << path << '\n';
  }
  return failures == anchors.size() ? 1 : 0;
}

int cmd_levels(const CommonConfig& common, std::ostream& out) {
  const Loaded l = load(common);
  const DegreeLevels levels = degree_levels(l.loaded.graph, l.cliques);
  std::ostringstream table;
  table << "level,size\n";
  for (std::size_t i = 0; i < levels.count(); ++i) table << i << ',' << levels.levels[i].size() << '\n';

  out << "levels: " << levels.count() << '\n';
  if (common.out.empty()) {
    out << table.str();
    return 0;
  }
  const std::string path = common.out + ".levels.csv";
  auto f = open_output(path);
  f << table.str();
  check_written(f, path);
  out << "wrote " << path << '\n';
  return 0;
}

void add_common(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("-i,--input", cfg.input, "Edge list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("-d,--decomp", cfg.decomp, "core | truss | nucleus34")->capture_default_str();
  cmd->add_option("--base", cfg.base, "Vertex id base of the input (0 or 1)")->capture_default_str();
  cmd->add_option("--comment", cfg.comment, "Comment line prefix")->capture_default_str();
  cmd->add_option("-o,--out", cfg.out, "Output prefix; without it results go to stdout");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-core, k-truss and (3,4)-nucleus decomposition by peeling and iterated h-index"};
  app.name("nucleus");
  app.require_subcommand(1);

  CommonConfig common;
  DecomposeConfig dec;
  EstimateConfig est;

  auto* decompose = app.add_subcommand("decompose", "Compute kappa for every r-clique");
  add_common(decompose, common);
  decompose->add_option("-e,--engine", dec.engine, "peel | snd | and | and-nonotify")->capture_default_str();
  decompose->add_option("-t,--threads", dec.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  auto* order_opt =
      decompose->add_option("--order", dec.order, "natural | random | levels (and engines)")->capture_default_str();
  decompose->add_option("--seed", dec.seed, "Seed for --order random")->capture_default_str();
  decompose->add_option("--max-iters", dec.max_iters, "Pass limit (0: until convergence)")->capture_default_str();
  decompose->add_option("--stop-active-ratio", dec.stop_active_ratio, "Stop once a pass recomputes less than this fraction")
      ->check(CLI::Range(0.0, 1.0));
  decompose->add_flag("--trace", dec.trace, "Write per-pass Kendall-tau / accuracy against peeling");

  auto* estimate = app.add_subcommand("estimate", "Ego-network estimates of kappa for chosen anchors");
  add_common(estimate, common);
  estimate->add_option("-a,--anchor", est.anchors, "Anchor r-clique as vertex labels, e.g. 5 or 3,7");
  estimate->add_option("--anchors-file", est.anchors_file, "File with one anchor per line")->check(CLI::ExistingFile);
  estimate->add_option("--sample", est.sample, "Add N random anchors");
  estimate->add_option("--seed", est.seed, "Seed for --sample")->capture_default_str();
  estimate->add_flag("--exact", est.exact, "Also report exact kappa from peeling");

  auto* levels = app.add_subcommand("levels", "Count degree levels");
  add_common(levels, common);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*decompose) return cmd_decompose(common, dec, order_opt->count() > 0, out);
    if (*estimate) return cmd_estimate(common, est, out, err);
    return cmd_levels(common, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace nucleus::cli
