#include "ppr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "ppr/generators.hpp"
#include "ppr/oracle.hpp"

namespace ppr {

namespace {

// Runs fn(0..count-1) on up to `threads` workers. Callers write results into
// per-index slots, so merge order never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

constexpr double kOracleTol = 1e-12;

}  // namespace

SourceSpec SourceSpec::parse(const std::string& text) {
  SourceSpec spec;
  if (text == "uniform") {
    spec.kind = Kind::kUniform;
  } else if (text == "degree") {
    spec.kind = Kind::kDegree;
  } else if (text == "maxdeg") {
    spec.kind = Kind::kMaxDegree;
  } else {
    try {
      std::size_t pos = 0;
      spec.node = std::stoull(text, &pos);
      if (pos != text.size() || text.front() == '-') throw ArgumentError("");
    } catch (const std::exception&) {
      throw ArgumentError("source must be a node id, 'uniform', 'degree' or 'maxdeg': " + text);
    }
  }
  return spec;
}

SourcePicker::SourcePicker(const Graph& g, SourceSpec spec) : g_(&g), spec_(spec) {
  const std::size_t n = g.num_nodes();
  switch (spec.kind) {
    case SourceSpec::Kind::kFixed:
      fixed_ = g.dense_id(spec.node);
      break;
    case SourceSpec::Kind::kMaxDegree:
      for (NodeId v = 0; v < n; ++v) {
        if (g.degree(v) > g.degree(fixed_)) fixed_ = v;
      }
      break;
    case SourceSpec::Kind::kUniform:
      table_.emplace(std::vector<double>(n, 1.0));
      break;
    case SourceSpec::Kind::kDegree: {
      std::vector<double> w(n);
      for (NodeId v = 0; v < n; ++v) w[v] = static_cast<double>(g.degree(v));
      table_.emplace(w);
      break;
    }
  }
}

NodeId SourcePicker::pick(std::uint64_t seed, std::uint64_t index) const {
  if (!table_) return fixed_;
  Rng rng = make_stream(seed, Stream::kSource, index);
  return table_->sample(rng);
}

QueryAnswer run_query(Algorithm algo, const Graph& g, NodeId s, const QueryParams& params) {
  return algo == Algorithm::kAbsolute ? ssppr_a(g, s, params) : ssppr_d(g, s, params);
}

double answer_error(Algorithm algo, const Graph& g, const QueryAnswer& answer, std::span<const double> exact) {
  double worst = 0.0;
  for (NodeId t = 0; t < g.num_nodes(); ++t) {
    double err = std::abs(lookup(answer.estimates, t) - exact[t]);
    if (algo == Algorithm::kDegree) err /= static_cast<double>(g.degree(t));
    worst = std::max(worst, err);
  }
  return worst;
}

bool has_candidate_miss(Algorithm algo, const Graph& g, const QueryAnswer& answer, std::span<const double> exact,
                        double eps) {
  for (NodeId t = 0; t < g.num_nodes(); ++t) {
    if (answer.candidates.contains(t)) continue;
    double value = exact[t];
    if (algo == Algorithm::kDegree) value /= static_cast<double>(g.degree(t));
    if (value > eps + kVerifySlack) return true;
  }
  return false;
}

VerifyReport run_verify(const Graph& g, const VerifyConfig& cfg) {
  require(cfg.runs >= 1, "runs must be at least 1");
  cfg.params.validate();
  if (g.num_nodes() > cfg.oracle_cap) {
    throw ArgumentError("graph has " + std::to_string(g.num_nodes()) + " nodes, above the oracle cap of " +
                        std::to_string(cfg.oracle_cap) + "; raise --oracle-cap or verify on a smaller graph");
  }
  if (cfg.algo == Algorithm::kDegree && !g.is_undirected()) {
    throw ArgumentError("degree-normalized verification needs an undirected graph");
  }
  SourcePicker picker(g, cfg.source);
  std::vector<NodeId> sources(cfg.runs);
  for (std::size_t i = 0; i < cfg.runs; ++i) sources[i] = picker.pick(cfg.params.seed, i);

  // Exact rows, computed once per distinct source.
  std::map<NodeId, std::vector<double>> exact;
  for (NodeId s : sources) {
    if (!exact.count(s)) exact.emplace(s, exact_ssppr(g, s, cfg.params.alpha, kOracleTol).values);
  }

  VerifyReport rep;
  rep.runs = cfg.runs;
  rep.records.resize(cfg.runs);
  parallel_for(cfg.runs, cfg.threads, [&](std::size_t i) {
    QueryParams p = cfg.params;
    p.seed = cfg.params.seed + i;
    p.threads = 1;
    const NodeId s = sources[i];
    QueryAnswer ans = run_query(cfg.algo, g, s, p);
    const auto& row = exact.at(s);
    RunRecord& rec = rep.records[i];
    rec.seed = p.seed;
    rec.source = s;
    rec.max_error = answer_error(cfg.algo, g, ans, row);
    rec.failed = rec.max_error > p.eps + kVerifySlack;
    rec.candidate_miss = !ans.diag.fallback && has_candidate_miss(cfg.algo, g, ans, row, p.eps);
    rec.push_cost = ans.diag.phase1_push_cost + ans.diag.phase2_cost();
    rec.walk_steps = ans.diag.phase1_steps + ans.diag.phase3_steps;
    rec.total_cost = ans.diag.total_cost();
  });

  for (const RunRecord& rec : rep.records) {
    rep.failures += rec.failed ? 1 : 0;
    rep.candidate_misses += rec.candidate_miss ? 1 : 0;
    rep.max_error = std::max(rep.max_error, rec.max_error);
    rep.mean_push_cost += static_cast<double>(rec.push_cost);
    rep.mean_walk_steps += static_cast<double>(rec.walk_steps);
  }
  const double runs = static_cast<double>(cfg.runs);
  rep.mean_push_cost /= runs;
  rep.mean_walk_steps /= runs;
  rep.failure_rate = static_cast<double>(rep.failures) / runs;
  const double z = 1.96;
  const double center = (rep.failure_rate + z * z / (2 * runs)) / (1 + z * z / runs);
  const double half =
      z * std::sqrt(rep.failure_rate * (1 - rep.failure_rate) / runs + z * z / (4 * runs * runs)) / (1 + z * z / runs);
  rep.ci_low = std::max(0.0, center - half);
  rep.ci_high = std::min(1.0, center + half);
  rep.allowed_rate = 1.0 / static_cast<double>(g.num_nodes());
  rep.allowed_failures =
      runs * rep.allowed_rate + 3.0 * std::sqrt(runs * rep.allowed_rate * (1.0 - rep.allowed_rate));
  rep.within_guarantee = static_cast<double>(rep.failures) <= rep.allowed_failures;
  rep.note = rep.within_guarantee ? "failure count within runs/n + 3 sigma"
                                  : "failure count above runs/n + 3 sigma";
  if (rep.failure_rate > 0.01) rep.note += "; observed failure rate above 1%";
  return rep;
}

std::optional<SlopeFit> fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += r * r;
  }
  fit.rmse = std::sqrt(sse / k);
  fit.points = xs.size();
  return fit;
}

ScaleReport run_scale(const ScaleConfig& cfg) {
  std::vector<Graph> graphs;
  for (std::size_t n : cfg.sizes) graphs.push_back(generate_power_law(n, cfg.attach, cfg.graph_seed));
  return run_scale(graphs, cfg);
}

ScaleReport run_scale(const std::vector<Graph>& graphs, const ScaleConfig& cfg) {
  require(cfg.seeds >= 3, "scale needs at least 3 seeds per cell");
  require(!graphs.empty() && !cfg.eps_grid.empty(), "scale needs graphs and an eps grid");
  ScaleReport rep;
  for (const Graph& g : graphs) {
    SourcePicker picker(g, cfg.source);
    for (double eps : cfg.eps_grid) {
      ScaleCell cell;
      cell.n = g.num_nodes();
      cell.m = g.num_arcs();
      cell.eps = eps;
      cell.seeds = cfg.seeds;
      std::vector<QueryDiagnostics> diags(cfg.seeds);
      parallel_for(cfg.seeds, cfg.threads, [&](std::size_t i) {
        QueryParams p = cfg.params;
        p.eps = eps;
        p.seed = cfg.params.seed + i;
        p.threads = 1;
        diags[i] = run_query(cfg.algo, g, picker.pick(cfg.params.seed, i), p).diag;
      });
      for (const auto& d : diags) {
        cell.mean_cost += static_cast<double>(d.total_cost());
        cell.mean_push_cost += static_cast<double>(d.phase1_push_cost + d.phase2_cost());
        cell.mean_walk_steps += static_cast<double>(d.phase1_steps + d.phase3_steps);
      }
      const double k = static_cast<double>(cfg.seeds);
      cell.mean_cost /= k;
      cell.mean_push_cost /= k;
      cell.mean_walk_steps /= k;
      rep.cells.push_back(cell);
    }
  }

  for (const Graph& g : graphs) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const ScaleCell& c : rep.cells) {
      if (c.n == g.num_nodes() && c.m == g.num_arcs() && c.mean_cost > 0.0) {
        xs.push_back(std::log(1.0 / c.eps));
        ys.push_back(std::log(c.mean_cost));
      }
    }
    if (auto fit = fit_line(xs, ys)) rep.eps_slopes.emplace_back(g.num_nodes(), *fit);
  }
  for (double eps : cfg.eps_grid) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const ScaleCell& c : rep.cells) {
      if (c.eps == eps && c.mean_cost > 0.0) {
        xs.push_back(std::log(static_cast<double>(c.m)));
        ys.push_back(std::log(c.mean_cost));
      }
    }
    if (auto fit = fit_line(xs, ys)) rep.size_slopes.emplace_back(eps, *fit);
  }
  if (rep.eps_slopes.empty() && rep.size_slopes.empty()) rep.note = "not enough cells for a slope fit";
  return rep;
}

SourceCostComparison compare_source_costs(const Graph& g, const QueryParams& params, std::size_t seeds,
                                          unsigned threads) {
  require(seeds >= 1, "need at least one seed");
  SourcePicker by_degree(g, SourceSpec{SourceSpec::Kind::kDegree, 0});
  SourcePicker hub(g, SourceSpec{SourceSpec::Kind::kMaxDegree, 0});
  std::vector<double> sampled(seeds);
  std::vector<double> fixed(seeds);
  parallel_for(seeds, threads, [&](std::size_t i) {
    QueryParams p = params;
    p.seed = params.seed + i;
    p.threads = 1;
    sampled[i] = static_cast<double>(ssppr_d(g, by_degree.pick(params.seed, i), p).diag.total_cost());
    fixed[i] = static_cast<double>(ssppr_d(g, hub.pick(params.seed, i), p).diag.total_cost());
  });
  SourceCostComparison out;
  out.seeds = seeds;
  out.degree_sampled_mean = std::accumulate(sampled.begin(), sampled.end(), 0.0) / static_cast<double>(seeds);
  out.max_degree_mean = std::accumulate(fixed.begin(), fixed.end(), 0.0) / static_cast<double>(seeds);
  out.ratio = out.max_degree_mean > 0.0 ? out.degree_sampled_mean / out.max_degree_mean : 0.0;
  return out;
}

}  // namespace ppr
