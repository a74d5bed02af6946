#include "ppr/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppr/generators.hpp"
#include "ppr/harness.hpp"
#include "ppr/oracle.hpp"
#include "ppr/push.hpp"
#include "ppr/query.hpp"
#include "ppr/text_io.hpp"
#include "ppr/walk.hpp"

namespace ppr {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string graph;
  std::string mode;  // empty: take it from the file header, else directed
  std::string source = "0";
  ExternalId target = 0;
  double alpha = 0.2;
  double eps = 0.05;
  double eps_d = 0.05;
  double tol = 1e-10;
  double rmax = 1e-4;
  double c_walk = 1.0;
  bool fallback = false;
  double fallback_factor = 4.0;
  std::uint64_t seed = 1;
  std::uint64_t walks = 10000;
  std::string out;
  std::string diag;
  std::string idmap;
  // gen
  std::size_t n = 1000;
  std::size_t attach = 4;
  // verify / scale
  std::string algorithm = "a";
  std::size_t runs = 200;
  std::size_t oracle_cap = 2000;
  std::vector<std::size_t> sizes;
  std::vector<double> eps_grid;
  std::vector<std::string> graphs;
  std::size_t seeds = 3;
  std::uint64_t graph_seed = 1;
  bool compare_sources = false;
  std::size_t fit_sources = 5;
  unsigned threads = 1;
};

unsigned threads_from_env() {
  const char* env = std::getenv("PPR_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    long v = std::stol(env);
    return v >= 1 ? static_cast<unsigned>(v) : 1u;
  } catch (const std::exception&) {
    throw ArgumentError("PPR_THREADS must be a positive integer");
  }
}

GraphMode parse_mode(const std::string& m) {
  if (m == "d" || m == "directed") return GraphMode::kDirected;
  if (m == "u" || m == "undirected") return GraphMode::kUndirected;
  throw ArgumentError("mode must be 'd' or 'u'");
}

Graph load_graph(const std::string& path, const std::string& mode, GraphMode fallback_mode) {
  if (path.empty()) throw ArgumentError("--graph is required");
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  GraphMode gm = fallback_mode;
  if (!mode.empty()) {
    gm = parse_mode(mode);
  } else if (text.rfind("#", 0) == 0) {
    const std::string header = text.substr(0, text.find('\n'));
    if (header.find("mode=u") != std::string::npos) gm = GraphMode::kUndirected;
    if (header.find("mode=d") != std::string::npos) gm = GraphMode::kDirected;
  }
  std::istringstream is(text);
  return load_edge_list(is, gm);
}

// Writes to the named file, or to `fallback` for an empty name or "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ArgumentError("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void emit_diag(const Options& o, std::ostream& out, const json& j) {
  if (o.diag.empty()) return;
  Sink sink(o.diag, out);
  *sink << j.dump() << '\n';
}

json graph_json(const Graph& g) {
  return json{{"n", g.num_nodes()}, {"m", g.num_arcs()}, {"mode", g.is_undirected() ? "u" : "d"}};
}

json diag_json(const QueryDiagnostics& d) {
  return json{{"phase1_walks", d.phase1_walks},
              {"phase1_steps", d.phase1_steps},
              {"phase1_push_cost", d.phase1_push_cost},
              {"phase2_attempt_cost", d.phase2_attempt_cost},
              {"phase2_final_cost", d.phase2_final_cost},
              {"phase3_walks", d.phase3_walks},
              {"phase3_steps", d.phase3_steps},
              {"combine_ops", d.combine_ops},
              {"iterations", d.iterations},
              {"n_r0", d.n_r0},
              {"n_r", d.n_r},
              {"n_t", d.n_t},
              {"candidates", d.candidates},
              {"reused_last_iteration", d.reused_last_iteration},
              {"fallback", d.fallback},
              {"fallback_cost", d.fallback_cost},
              {"total_cost", d.total_cost()}};
}

QueryParams query_params(const Options& o, double eps, unsigned threads) {
  QueryParams p;
  p.alpha = o.alpha;
  p.eps = eps;
  p.seed = o.seed;
  p.c_walk = o.c_walk;
  p.fallback_enabled = o.fallback;
  p.fallback_factor = o.fallback_factor;
  p.threads = threads;
  p.validate();
  return p;
}

Algorithm parse_algorithm(const std::string& a) {
  if (a == "a") return Algorithm::kAbsolute;
  if (a == "d") return Algorithm::kDegree;
  throw ArgumentError("algorithm must be 'a' or 'd'");
}

int cmd_gen(const Options& o, std::ostream& out) {
  Graph g = generate_power_law(o.n, o.attach, o.seed);
  Sink sink(o.out, out);
  write_edge_list(*sink, g);
  if (!o.idmap.empty()) {
    Sink map(o.idmap, out);
    write_id_map(*map, g);
  }
  return kExitOk;
}

int cmd_exact(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.graph, o.mode, GraphMode::kDirected);
  const NodeId s = SourcePicker(g, SourceSpec::parse(o.source)).pick(o.seed, 0);
  DenseScores row = exact_ssppr(g, s, o.alpha, o.tol);
  {
    Sink sink(o.out, out);
    std::vector<std::pair<ExternalId, double>> rows;
    for (NodeId v = 0; v < g.num_nodes(); ++v) rows.emplace_back(g.external_id(v), row.values[v]);
    std::sort(rows.begin(), rows.end());
    for (auto [ext, x] : rows) *sink << ext << '\t' << format_double(x) << '\n';
  }
  emit_diag(o, out,
            json{{"command", "exact"}, {"graph", graph_json(g)}, {"source", g.external_id(s)},
                 {"alpha", o.alpha}, {"tol", o.tol}, {"iterations", row.iterations},
                 {"residual_l1", row.residual_l1}, {"cost", row.iterations * g.num_arcs()}});
  return kExitOk;
}

int cmd_mc(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.graph, o.mode, GraphMode::kDirected);
  SourceSpec spec = SourceSpec::parse(o.source);
  WalkEngine engine(o.alpha, make_stream(o.seed, Stream::kMonteCarlo));
  SparseEstimate est;
  if (spec.kind == SourceSpec::Kind::kUniform || spec.kind == SourceSpec::Kind::kDegree) {
    std::vector<double> w(g.num_nodes(), 1.0);
    if (spec.kind == SourceSpec::Kind::kDegree) {
      for (NodeId v = 0; v < g.num_nodes(); ++v) w[v] = static_cast<double>(g.degree(v));
    }
    AliasTable table(w);
    est = monte_carlo_from_distribution(g, table, o.walks, engine);
  } else {
    est = monte_carlo(g, SourcePicker(g, spec).pick(o.seed, 0), o.walks, engine);
  }
  {
    Sink sink(o.out, out);
    std::vector<std::pair<ExternalId, double>> rows;
    for (auto [v, x] : est.sorted()) rows.emplace_back(g.external_id(v), x);
    std::sort(rows.begin(), rows.end());
    for (auto [ext, x] : rows) *sink << ext << '\t' << format_double(x) << '\n';
  }
  emit_diag(o, out,
            json{{"command", "mc"}, {"graph", graph_json(g)}, {"source", o.source}, {"alpha", o.alpha},
                 {"seed", o.seed}, {"walks", o.walks}, {"steps", engine.steps()},
                 {"support", est.support_size()}});
  return kExitOk;
}

int cmd_bp(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.graph, o.mode, GraphMode::kDirected);
  PushResult res = backward_push(g, o.alpha, g.dense_id(o.target), o.rmax);
  {
    Sink sink(o.out, out);
    write_push_result(*sink, g, res);
  }
  emit_diag(o, out,
            json{{"command", "bp"}, {"graph", graph_json(g)}, {"target", o.target}, {"alpha", o.alpha},
                 {"r_max", o.rmax}, {"cost", res.cost}, {"pushes", res.pushes},
                 {"reserve_support", res.reserve.size()}, {"residue_support", res.residue.size()}});
  return kExitOk;
}

int cmd_fp(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.graph, o.mode, GraphMode::kDirected);
  const NodeId s = SourcePicker(g, SourceSpec::parse(o.source)).pick(o.seed, 0);
  ForwardPushResult res = forward_push(g, o.alpha, s, o.rmax);
  {
    Sink sink(o.out, out);
    *sink << "# s=" << g.external_id(s) << " r_max=" << format_double(o.rmax) << " cost=" << res.cost << '\n';
    std::vector<NodeId> nodes;
    for (auto& [v, x] : res.reserve) nodes.push_back(v);
    for (auto& [v, x] : res.residue) {
      if (!res.reserve.count(v)) nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end(),
              [&](NodeId a, NodeId b) { return g.external_id(a) < g.external_id(b); });
    for (NodeId v : nodes) {
      *sink << g.external_id(v) << '\t' << format_double(lookup(res.reserve, v)) << '\t'
            << format_double(lookup(res.residue, v)) << '\n';
    }
  }
  emit_diag(o, out,
            json{{"command", "fp"}, {"graph", graph_json(g)}, {"source", g.external_id(s)}, {"alpha", o.alpha},
                 {"r_max", o.rmax}, {"cost", res.cost}});
  return kExitOk;
}

int cmd_query(const Options& o, Algorithm algo, std::ostream& out) {
  const bool degree = algo == Algorithm::kDegree;
  Graph g = load_graph(o.graph, o.mode, degree ? GraphMode::kUndirected : GraphMode::kDirected);
  const double eps = degree ? o.eps_d : o.eps;
  QueryParams p = query_params(o, eps, o.threads);
  const NodeId s = SourcePicker(g, SourceSpec::parse(o.source)).pick(o.seed, 0);
  QueryAnswer ans = run_query(algo, g, s, p);
  {
    Sink sink(o.out, out);
    write_answer(*sink, g, ans);
  }
  emit_diag(o, out,
            json{{"command", degree ? "ssppr-d" : "ssppr-a"},
                 {"graph", graph_json(g)},
                 {"source", g.external_id(s)},
                 {"params",
                  {{"alpha", p.alpha},
                   {degree ? "eps_d" : "eps", p.eps},
                   {"seed", p.seed},
                   {"c_walk", p.c_walk},
                   {"fallback_enabled", p.fallback_enabled},
                   {"fallback_factor", p.fallback_factor}}},
                 {"diagnostics", diag_json(ans.diag)}});
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig cfg;
  cfg.algo = parse_algorithm(o.algorithm);
  const bool degree = cfg.algo == Algorithm::kDegree;
  Graph g = load_graph(o.graph, o.mode, degree ? GraphMode::kUndirected : GraphMode::kDirected);
  cfg.source = SourceSpec::parse(o.source);
  cfg.params = query_params(o, degree ? o.eps_d : o.eps, 1);
  cfg.runs = o.runs;
  cfg.oracle_cap = o.oracle_cap;
  cfg.threads = o.threads;
  VerifyReport rep = run_verify(g, cfg);
  json j{{"command", "verify"},
         {"algorithm", o.algorithm},
         {"graph", graph_json(g)},
         {"eps", cfg.params.eps},
         {"alpha", cfg.params.alpha},
         {"seed", cfg.params.seed},
         {"runs", rep.runs},
         {"failures", rep.failures},
         {"failure_rate", rep.failure_rate},
         {"ci95", {rep.ci_low, rep.ci_high}},
         {"allowed_rate", rep.allowed_rate},
         {"allowed_failures", rep.allowed_failures},
         {"within_guarantee", rep.within_guarantee},
         {"candidate_misses", rep.candidate_misses},
         {"max_error", rep.max_error},
         {"mean_push_cost", rep.mean_push_cost},
         {"mean_walk_steps", rep.mean_walk_steps},
         {"note", rep.note}};
  {
    Sink sink(o.out, out);
    *sink << j.dump() << '\n';
  }
  if (!o.diag.empty()) {
    Sink sink(o.diag, out);
    for (const RunRecord& r : rep.records) {
      *sink << json{{"seed", r.seed},
                    {"source", g.external_id(r.source)},
                    {"max_error", r.max_error},
                    {"failed", r.failed},
                    {"candidate_miss", r.candidate_miss},
                    {"push_cost", r.push_cost},
                    {"walk_steps", r.walk_steps},
                    {"total_cost", r.total_cost}}
                   .dump()
            << '\n';
    }
  }
  return rep.within_guarantee ? kExitOk : kExitGuaranteeMissed;
}

json slope_json(const SlopeFit& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"rmse", f.rmse}, {"points", f.points}};
}

int cmd_scale(const Options& o, std::ostream& out) {
  ScaleConfig cfg;
  cfg.algo = parse_algorithm(o.algorithm);
  const bool degree = cfg.algo == Algorithm::kDegree;
  cfg.sizes = o.sizes;
  cfg.attach = o.attach;
  cfg.graph_seed = o.graph_seed;
  cfg.eps_grid = o.eps_grid;
  if (cfg.eps_grid.empty()) cfg.eps_grid.push_back(degree ? o.eps_d : o.eps);
  cfg.seeds = o.seeds;
  cfg.source = SourceSpec::parse(o.source);
  cfg.params = query_params(o, cfg.eps_grid.front(), 1);
  cfg.threads = o.threads;

  std::vector<Graph> graphs;
  for (const std::string& path : o.graphs) {
    graphs.push_back(load_graph(path, o.mode, degree ? GraphMode::kUndirected : GraphMode::kDirected));
  }
  if (graphs.empty()) {
    if (cfg.sizes.empty()) throw ArgumentError("scale needs --sizes or --graphs");
    for (std::size_t n : cfg.sizes) graphs.push_back(generate_power_law(n, cfg.attach, cfg.graph_seed));
  }
  ScaleReport rep = run_scale(graphs, cfg);
  {
    Sink sink(o.out, out);
    *sink << "n,m,eps,seeds,mean_cost,mean_push_cost,mean_walk_steps\n";
    for (const ScaleCell& c : rep.cells) {
      *sink << c.n << ',' << c.m << ',' << format_double(c.eps) << ',' << c.seeds << ','
            << format_double(c.mean_cost) << ',' << format_double(c.mean_push_cost) << ','
            << format_double(c.mean_walk_steps) << '\n';
    }
  }
  json summary{{"command", "scale"}, {"algorithm", o.algorithm}, {"seeds", cfg.seeds}};
  json eps_fits = json::array();
  for (auto& [n, f] : rep.eps_slopes) {
    json e = slope_json(f);
    e["n"] = n;
    eps_fits.push_back(e);
  }
  json size_fits = json::array();
  for (auto& [eps, f] : rep.size_slopes) {
    json e = slope_json(f);
    e["eps"] = eps;
    size_fits.push_back(e);
  }
  summary["cost_vs_inverse_eps"] = eps_fits;
  summary["cost_vs_m"] = size_fits;
  if (o.compare_sources) {
    if (!degree) throw ArgumentError("--compare-sources applies to the degree-normalized query");
    json cmp = json::array();
    for (const Graph& g : graphs) {
      SourceCostComparison c = compare_source_costs(g, cfg.params, cfg.seeds, cfg.threads);
      cmp.push_back(json{{"n", g.num_nodes()},
                         {"degree_sampled_mean_cost", c.degree_sampled_mean},
                         {"max_degree_mean_cost", c.max_degree_mean},
                         {"ratio", c.ratio}});
    }
    summary["source_comparison"] = cmp;
  }
  summary["note"] = rep.note;
  emit_diag(o, out, summary);
  return kExitOk;
}

int cmd_powerlaw(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.graph, o.mode, GraphMode::kDirected);
  PowerLawFit fit = powerlaw_fit_diagnostic(g, o.fit_sources, o.alpha, o.seed);
  Sink sink(o.out, out);
  *sink << json{{"command", "powerlaw"},       {"graph", graph_json(g)},
                {"gamma", fit.gamma},          {"fit_rmse", fit.fit_rmse},
                {"squared_mass", fit.squared_mass}, {"max_value", fit.max_value},
                {"sources", fit.sources},      {"looks_power_law", fit.looks_power_law}}
               .dump()
        << '\n';
  return kExitOk;
}

void add_graph_opts(CLI::App* sub, Options& o) {
  sub->add_option("--graph", o.graph, "edge-list file")->required();
  sub->add_option("--mode", o.mode, "d (directed) or u (undirected); default from file header");
  sub->add_option("--alpha", o.alpha, "termination probability")->capture_default_str();
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--diag", o.diag, "JSON diagnostics file ('-' for stdout)");
}

void add_query_opts(CLI::App* sub, Options& o) {
  sub->add_option("--source", o.source, "node id, 'uniform', 'degree' or 'maxdeg'")->capture_default_str();
  sub->add_option("--seed", o.seed)->capture_default_str();
  sub->add_option("--c-walk", o.c_walk, "push units charged per walk step")->capture_default_str();
  sub->add_flag("--fallback", o.fallback, "switch to power iteration past c_fb * n^2 cost");
  sub->add_option("--fallback-factor", o.fallback_factor)->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Single-source personalized PageRank with absolute and degree-normalized error bounds"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a preferential-attachment graph");
  gen->add_option("--n", o.n)->capture_default_str();
  gen->add_option("--attach", o.attach)->capture_default_str();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--out", o.out, "output file (default stdout)");
  gen->add_option("--idmap", o.idmap, "write external<TAB>dense id table here");

  auto* exact = app.add_subcommand("exact", "power-iteration PPR row");
  add_graph_opts(exact, o);
  exact->add_option("--source", o.source)->capture_default_str();
  exact->add_option("--tol", o.tol)->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo PPR estimate");
  add_graph_opts(mc, o);
  mc->add_option("--source", o.source, "node id, 'uniform' or 'degree'")->capture_default_str();
  mc->add_option("--walks", o.walks)->capture_default_str();
  mc->add_option("--seed", o.seed)->capture_default_str();

  auto* bp = app.add_subcommand("bp", "Backward Push towards a target");
  add_graph_opts(bp, o);
  bp->add_option("--target", o.target)->capture_default_str();
  bp->add_option("--rmax", o.rmax)->capture_default_str();

  auto* fp = app.add_subcommand("fp", "Forward Push from a source");
  add_graph_opts(fp, o);
  fp->add_option("--source", o.source)->capture_default_str();
  fp->add_option("--rmax", o.rmax)->capture_default_str();

  auto* qa = app.add_subcommand("ssppr-a", "absolute-error single-source query");
  add_graph_opts(qa, o);
  add_query_opts(qa, o);
  qa->add_option("--eps", o.eps)->capture_default_str();

  auto* qd = app.add_subcommand("ssppr-d", "degree-normalized single-source query (undirected)");
  add_graph_opts(qd, o);
  add_query_opts(qd, o);
  qd->add_option("--eps-d", o.eps_d)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check the error guarantee against the exact oracle");
  add_graph_opts(verify, o);
  add_query_opts(verify, o);
  verify->add_option("--algorithm", o.algorithm, "a or d")->capture_default_str();
  verify->add_option("--eps", o.eps)->capture_default_str();
  verify->add_option("--eps-d", o.eps_d)->capture_default_str();
  verify->add_option("--runs", o.runs)->capture_default_str();
  verify->add_option("--oracle-cap", o.oracle_cap)->capture_default_str();

  auto* scale = app.add_subcommand("scale", "accounted-cost scaling experiment");
  scale->add_option("--algorithm", o.algorithm, "a or d")->capture_default_str();
  scale->add_option("--sizes", o.sizes, "power-law graph sizes")->delimiter(',');
  scale->add_option("--graphs", o.graphs, "edge-list files instead of generated graphs")->delimiter(',');
  scale->add_option("--mode", o.mode);
  scale->add_option("--attach", o.attach)->capture_default_str();
  scale->add_option("--graph-seed", o.graph_seed)->capture_default_str();
  scale->add_option("--eps-grid", o.eps_grid)->delimiter(',');
  scale->add_option("--eps", o.eps)->capture_default_str();
  scale->add_option("--eps-d", o.eps_d)->capture_default_str();
  scale->add_option("--seeds", o.seeds)->capture_default_str();
  scale->add_option("--alpha", o.alpha)->capture_default_str();
  scale->add_flag("--compare-sources", o.compare_sources, "degree-sampled vs max-degree sources (d only)");
  scale->add_option("--out", o.out, "CSV output (default stdout)");
  scale->add_option("--diag", o.diag, "JSON summary with slope fits");
  add_query_opts(scale, o);

  auto* powerlaw = app.add_subcommand("powerlaw", "fit the decay of sorted PPR rows");
  add_graph_opts(powerlaw, o);
  powerlaw->add_option("--sources", o.fit_sources)->capture_default_str();
  powerlaw->add_option("--seed", o.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgument;
  }

  try {
    o.threads = threads_from_env();
    if (*gen) return cmd_gen(o, out);
    if (*exact) return cmd_exact(o, out);
    if (*mc) return cmd_mc(o, out);
    if (*bp) return cmd_bp(o, out);
    if (*fp) return cmd_fp(o, out);
    if (*qa) return cmd_query(o, Algorithm::kAbsolute, out);
    if (*qd) return cmd_query(o, Algorithm::kDegree, out);
    if (*verify) return cmd_verify(o, out);
    if (*scale) return cmd_scale(o, out);
    if (*powerlaw) return cmd_powerlaw(o, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitArgument;
}

}  // namespace ppr
