#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ppr/graph.hpp"
#include "ppr/push.hpp"
#include "ppr/walk.hpp"

namespace ppr {

struct QueryParams {
  double alpha = 0.2;
  double eps = 0.05;       // eps for ssppr_a, eps_d for ssppr_d
  std::uint64_t seed = 1;
  double c_walk = 1.0;     // push cost units charged per walk step in the budget
  bool fallback_enabled = false;
  double fallback_factor = 4.0;  // switch to power iteration past c_fb * n^2
  unsigned threads = 1;    // workers for the combination trials
  bool reuse_last_iteration = true;

  void validate() const;
};

struct Candidate {
  NodeId node = 0;
  double rough = 0.0;  // Phase-I estimate pi'(s, node)
};

/// Nodes whose rough estimate clears half the error budget, sorted by id.
struct CandidateSet {
  std::vector<Candidate> members;

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }
  bool contains(NodeId v) const;
};

struct QueryDiagnostics {
  std::uint64_t phase1_walks = 0;
  std::uint64_t phase1_steps = 0;
  std::uint64_t phase1_push_cost = 0;     // single-target provider (ssppr_d)
  std::uint64_t phase2_attempt_cost = 0;  // every budgeted attempt in the halving loop
  std::uint64_t phase2_final_cost = 0;    // pushes at the final thresholds, if re-run
  std::uint64_t phase3_walks = 0;
  std::uint64_t phase3_steps = 0;
  std::uint64_t combine_ops = 0;
  std::size_t iterations = 0;
  std::uint64_t n_r0 = 0;
  std::uint64_t n_r = 0;
  std::uint64_t n_t = 0;
  std::size_t candidates = 0;
  bool reused_last_iteration = false;
  bool fallback = false;
  std::uint64_t fallback_cost = 0;

  std::uint64_t phase2_cost() const noexcept { return phase2_attempt_cost + phase2_final_cost; }
  std::uint64_t total_cost() const noexcept {
    return phase1_steps + phase1_push_cost + phase2_cost() + phase3_steps + fallback_cost;
  }
};

struct QueryAnswer {
  SparseVector estimates;  // zero outside the candidate set
  CandidateSet candidates;
  QueryDiagnostics diag;
};

/// Single-source PPR with absolute error eps: with probability >= 1 - 1/n,
/// |estimate(t) - pi(s,t)| <= eps for every t. eps >= 1 returns all zeros.
QueryAnswer ssppr_a(const Graph& g, NodeId s, const QueryParams& params);

/// Output contract of a single-target estimator: |est(v) - pi(v,t)| <=
/// eps_r pi(v,t) when pi(v,t) >= delta, est(v) <= pi(v,t) + delta otherwise,
/// with probability >= 1 - p_fail.
struct TargetEstimate {
  SparseVector values;  // estimates of pi(v, t)
  std::uint64_t cost = 0;
};

using TargetEstimator = std::function<TargetEstimate(const Graph&, double alpha, NodeId t, double eps_r,
                                                     double delta, double p_fail)>;

/// Default single-target provider: Backward Push with r_max = eps_r * delta,
/// whose absolute error bound implies both contract clauses deterministically.
TargetEstimate rbs_estimate(const Graph& g, double alpha, NodeId t, double eps_r, double delta, double p_fail);

/// Single-source PPR with degree-normalized error eps_d on undirected graphs:
/// |estimate(t) - pi(s,t)| / d(t) <= eps_d for every t w.h.p.
QueryAnswer ssppr_d(const Graph& g, NodeId s, const QueryParams& params,
                    const TargetEstimator& provider = rbs_estimate);

struct BudgetModel {
  double c_walk = 1.0;
  double alpha = 0.2;
  std::uint64_t n_t = 1;

  /// Push units allowed while trying a given n_r: the expected cost of
  /// n_t * n_r / 2 walks at c_walk / alpha units each.
  double limit(std::uint64_t n_r) const {
    return c_walk * static_cast<double>(n_t) * (static_cast<double>(n_r) / 2.0) / alpha;
  }
};

struct AdaptivePushResult {
  std::vector<PushResult> pushes;  // aligned with the candidate members
  std::vector<double> r_max;       // final per-candidate thresholds
  std::uint64_t n_r = 0;
  std::size_t iterations = 0;
  std::uint64_t attempt_cost = 0;
  std::uint64_t final_cost = 0;
  bool reused_last_iteration = false;
};

/// Halving loop: try Backward Push for every candidate at half its current
/// threshold under one shared budget; if the whole round fits, halve n_r and
/// the thresholds and repeat. Stops on the first exceeded budget (or when n_r
/// would drop below 1) and returns pushes at the current thresholds.
AdaptivePushResult adaptive_backward_push(const Graph& g, double alpha, const CandidateSet& candidates,
                                          std::span<const double> initial_r_max, std::uint64_t n_r0,
                                          const BudgetModel& model, bool reuse_last_iteration = true);

/// q(s,t) + sum over nonzero residues r(v,t) of mc(v) * r(v,t).
double combine_estimate(const PushResult& push, NodeId s, const SparseEstimate& mc);

/// Per-row lower median. Rows must all have the same length.
std::vector<double> median_trick_apply(const std::vector<std::vector<double>>& trials);

/// TSV "node<TAB>estimate" sorted by node id, zeros omitted.
void write_answer(std::ostream& out, const Graph& g, const QueryAnswer& answer);

}  // namespace ppr
