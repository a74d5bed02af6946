#include "ppr/query.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <thread>

#include "ppr/oracle.hpp"
#include "ppr/stats.hpp"
#include "ppr/text_io.hpp"

namespace ppr {

void QueryParams::validate() const {
  require_alpha(alpha);
  require(eps > 0.0, "error parameter must be positive");
  require(c_walk > 0.0, "c_walk must be positive");
  require(fallback_factor > 0.0, "fallback factor must be positive");
  require(threads >= 1, "threads must be at least 1");
}

bool CandidateSet::contains(NodeId v) const {
  auto it = std::lower_bound(members.begin(), members.end(), v,
                             [](const Candidate& c, NodeId x) { return c.node < x; });
  return it != members.end() && it->node == v;
}

double combine_estimate(const PushResult& push, NodeId s, const SparseEstimate& mc) {
  double est = lookup(push.reserve, s);
  for (auto [v, r] : push.residue) {
    const std::uint64_t c = mc.count(v);
    if (c != 0) est += static_cast<double>(c) / static_cast<double>(mc.n_walks()) * r;
  }
  return est;
}

std::vector<double> median_trick_apply(const std::vector<std::vector<double>>& trials) {
  std::vector<double> out;
  out.reserve(trials.size());
  for (const auto& row : trials) {
    if (row.size() != trials.front().size()) throw ArgumentError("trial lists have different lengths");
    out.push_back(median(row));
  }
  return out;
}

AdaptivePushResult adaptive_backward_push(const Graph& g, double alpha, const CandidateSet& candidates,
                                          std::span<const double> initial_r_max, std::uint64_t n_r0,
                                          const BudgetModel& model, bool reuse_last_iteration) {
  require(initial_r_max.size() == candidates.size(), "one initial threshold per candidate");
  require(n_r0 >= 1, "n_r must be positive");
  AdaptivePushResult out;
  out.n_r = n_r0;
  out.r_max.assign(initial_r_max.begin(), initial_r_max.end());
  if (candidates.empty()) return out;

  // Pushes from the last round that completed; after halving they were run
  // at exactly the current thresholds.
  std::vector<PushResult> cached;
  while (true) {
    ++out.iterations;
    Budget budget{model.limit(out.n_r), 0};
    std::vector<PushResult> round;
    round.reserve(candidates.size());
    bool exceeded = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      PushResult res = backward_push(g, alpha, candidates.members[i].node, out.r_max[i] / 2.0, &budget);
      out.attempt_cost += res.cost;
      if (!res.completed) {
        exceeded = true;
        break;
      }
      round.push_back(std::move(res));
    }
    if (exceeded || out.n_r / 2 < 1) break;
    out.n_r /= 2;
    for (double& r : out.r_max) r /= 2.0;
    cached = std::move(round);
  }

  if (reuse_last_iteration && !cached.empty()) {
    out.pushes = std::move(cached);
    out.reused_last_iteration = true;
    return out;
  }
  out.pushes.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    PushResult res = backward_push(g, alpha, candidates.members[i].node, out.r_max[i]);
    out.final_cost += res.cost;
    out.pushes.push_back(std::move(res));
  }
  return out;
}

namespace {

double node_count(const Graph& g) { return static_cast<double>(g.num_nodes()); }

bool over_fallback_budget(const Graph& g, const QueryParams& p, const QueryDiagnostics& d) {
  return p.fallback_enabled && static_cast<double>(d.total_cost()) > p.fallback_factor * node_count(g) * node_count(g);
}

void apply_fallback(const Graph& g, NodeId s, const QueryParams& p, QueryAnswer& ans) {
  DenseScores exact = exact_ssppr(g, s, p.alpha, 1e-10);
  ans.estimates.clear();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (exact.values[v] > 0.0) ans.estimates.emplace(v, exact.values[v]);
  }
  ans.diag.fallback = true;
  ans.diag.fallback_cost = exact.iterations * g.num_arcs();
}

// Phases II and III, shared by both query types. Returns false if the
// fallback took over.
bool push_and_combine(const Graph& g, NodeId s, const QueryParams& p, std::span<const double> initial_r_max,
                      std::uint64_t n_r0, QueryAnswer& ans) {
  QueryDiagnostics& d = ans.diag;
  const CandidateSet& cands = ans.candidates;
  d.n_r0 = n_r0;
  d.n_t = trial_count(g.num_nodes());
  BudgetModel model{p.c_walk, p.alpha, d.n_t};
  AdaptivePushResult pushed =
      adaptive_backward_push(g, p.alpha, cands, initial_r_max, n_r0, model, p.reuse_last_iteration);
  d.iterations = pushed.iterations;
  d.n_r = pushed.n_r;
  d.phase2_attempt_cost = pushed.attempt_cost;
  d.phase2_final_cost = pushed.final_cost;
  d.reused_last_iteration = pushed.reused_last_iteration;
  if (over_fallback_budget(g, p, d)) return false;

  const std::size_t n_t = d.n_t;
  const std::size_t k = cands.size();
  // trials[j][i]: estimate for candidate j from trial i.
  std::vector<std::vector<double>> trials(k, std::vector<double>(n_t, 0.0));
  std::vector<std::uint64_t> steps(n_t, 0);
  auto run_trial = [&](std::size_t i) {
    WalkEngine engine(p.alpha, make_stream(p.seed, Stream::kTrial, i));
    SparseEstimate mc = monte_carlo(g, s, d.n_r, engine);
    for (std::size_t j = 0; j < k; ++j) trials[j][i] = combine_estimate(pushed.pushes[j], s, mc);
    steps[i] = engine.steps();
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(p.threads, n_t));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_t; ++i) {
      run_trial(i);
      d.phase3_steps += steps[i];
      if (over_fallback_budget(g, p, d)) return false;
    }
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n_t; i += workers) run_trial(i);
      });
    }
    pool.clear();
    for (std::uint64_t x : steps) d.phase3_steps += x;
    if (over_fallback_budget(g, p, d)) return false;
  }
  d.phase3_walks = static_cast<std::uint64_t>(n_t) * d.n_r;
  std::uint64_t residues = 0;
  for (const auto& push : pushed.pushes) residues += push.residue.size();
  d.combine_ops = residues * n_t;

  std::vector<double> finals = median_trick_apply(trials);
  for (std::size_t j = 0; j < k; ++j) {
    if (finals[j] != 0.0) ans.estimates.emplace(cands.members[j].node, finals[j]);
  }
  return true;
}

}  // namespace

QueryAnswer ssppr_a(const Graph& g, NodeId s, const QueryParams& params) {
  params.validate();
  require(g.has_node(s), "source node out of range");
  QueryAnswer ans;
  const double eps = params.eps;
  if (eps >= 1.0) return ans;
  const std::size_t n = g.num_nodes();

  // Phase I: rough estimates and candidates.
  QueryDiagnostics& d = ans.diag;
  d.phase1_walks = phase1_walk_count(n, eps);
  WalkEngine engine(params.alpha, make_stream(params.seed, Stream::kPhaseOne));
  SparseEstimate rough = monte_carlo(g, s, d.phase1_walks, engine);
  d.phase1_steps = engine.steps();
  for (auto [v, value] : rough.sorted()) {
    if (value > eps / 2.0) ans.candidates.members.push_back({v, value});
  }
  d.candidates = ans.candidates.size();
  if (over_fallback_budget(g, params, d)) {
    apply_fallback(g, s, params, ans);
    return ans;
  }
  if (ans.candidates.empty()) return ans;

  // Phases II and III.
  const std::uint64_t n_r0 = static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) / eps));
  std::vector<double> r_max;
  for (const Candidate& c : ans.candidates.members) {
    assert(c.rough > 0.0);
    r_max.push_back(eps * eps * static_cast<double>(n_r0) / (6.0 * c.rough));
  }
  if (!push_and_combine(g, s, params, r_max, n_r0, ans)) apply_fallback(g, s, params, ans);
  return ans;
}

TargetEstimate rbs_estimate(const Graph& g, double alpha, NodeId t, double eps_r, double delta, double p_fail) {
  require(g.is_undirected(), "single-target estimator expects an undirected graph");
  require(eps_r > 0.0 && eps_r < 1.0, "eps_r must lie in (0, 1)");
  require(delta > 0.0, "delta must be positive");
  require(p_fail > 0.0 && p_fail < 1.0, "p_fail must lie in (0, 1)");
  PushResult push = backward_push(g, alpha, t, eps_r * delta);
  return TargetEstimate{std::move(push.reserve), push.cost};
}

QueryAnswer ssppr_d(const Graph& g, NodeId s, const QueryParams& params, const TargetEstimator& provider) {
  params.validate();
  if (!g.is_undirected()) {
    throw ArgumentError("degree-normalized queries are defined on undirected graphs only");
  }
  require(g.has_node(s), "source node out of range");
  QueryAnswer ans;
  const double eps_d = params.eps;
  if (eps_d >= 1.0) return ans;
  const std::size_t n = g.num_nodes();
  const double nn = static_cast<double>(n);
  const double ds = static_cast<double>(g.degree(s));

  // Phase I: single-target estimates towards s, flipped by degree symmetry.
  QueryDiagnostics& d = ans.diag;
  const double p_fail = n > 1 ? 1.0 / (nn * nn) : 0.5;
  TargetEstimate toward_s = provider(g, params.alpha, s, 0.5, eps_d * ds / 4.0, p_fail);
  d.phase1_push_cost = toward_s.cost;
  for (auto [v, value] : sorted_entries(toward_s.values)) {
    if (value == 0.0) continue;
    const double dv = static_cast<double>(g.degree(v));
    const double rough = value * dv / ds;
    if (rough / dv > eps_d / 2.0) ans.candidates.members.push_back({v, rough});
  }
  d.candidates = ans.candidates.size();
  if (over_fallback_budget(g, params, d)) {
    apply_fallback(g, s, params, ans);
    return ans;
  }
  if (ans.candidates.empty()) return ans;

  const std::uint64_t n_r0 = static_cast<std::uint64_t>(std::ceil(nn / eps_d));
  std::vector<double> r_max;
  for (const Candidate& c : ans.candidates.members) {
    const double dt = static_cast<double>(g.degree(c.node));
    r_max.push_back(dt * dt * eps_d * eps_d * static_cast<double>(n_r0) / (6.0 * c.rough));
  }
  if (!push_and_combine(g, s, params, r_max, n_r0, ans)) apply_fallback(g, s, params, ans);
  return ans;
}

void write_answer(std::ostream& out, const Graph& g, const QueryAnswer& answer) {
  std::vector<std::pair<ExternalId, double>> rows;
  for (auto [v, x] : answer.estimates) {
    if (x != 0.0) rows.emplace_back(g.external_id(v), x);
  }
  std::sort(rows.begin(), rows.end());
  for (auto [ext, x] : rows) out << ext << '\t' << format_double(x) << '\n';
}

}  // namespace ppr
