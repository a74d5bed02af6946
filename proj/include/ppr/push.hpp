#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppr/graph.hpp"

namespace ppr {

using SparseVector = std::unordered_map<NodeId, double>;

/// Entries of a sparse vector sorted by node id.
std::vector<std::pair<NodeId, double>> sorted_entries(const SparseVector& v);

inline double lookup(const SparseVector& v, NodeId key) {
  auto it = v.find(key);
  return it == v.end() ? 0.0 : it->second;
}

/// Shared allowance of push cost units. A push is never split, so `spent`
/// can exceed `limit` by at most the in-degree of the last pushed node.
struct Budget {
  double limit = std::numeric_limits<double>::infinity();
  std::uint64_t spent = 0;

  bool exceeded() const noexcept { return static_cast<double>(spent) > limit; }
};

enum class PushOrder { kFifo, kLifo };

/// Reserves q(., t) and residues r(., t) of one Backward Push run. Zero
/// entries are not stored.
struct PushResult {
  NodeId target = 0;
  double r_max = 0.0;
  SparseVector reserve;
  SparseVector residue;
  std::uint64_t cost = 0;    // in-neighbor residue updates
  std::uint64_t pushes = 0;
  bool completed = true;     // false when stopped by a budget

  bool operator==(const PushResult&) const = default;
};

/// Backward Push from target t: repeatedly picks v with r(v,t) > r_max, moves
/// alpha*r(v,t) into q(v,t) and spreads (1-alpha)*r(v,t)/d_out(u) to every
/// in-neighbor u. With a budget, stops after the push that makes the budget
/// exceeded and returns the partial state (completed == false); the
/// invariant pi(v,t) = q(v,t) + sum_u pi(v,u) r(u,t) holds either way.
PushResult backward_push(const Graph& g, double alpha, NodeId t, double r_max,
                         Budget* budget = nullptr, PushOrder order = PushOrder::kFifo);

struct ForwardPushResult {
  NodeId source = 0;
  double r_max = 0.0;
  SparseVector reserve;  // p(v)
  SparseVector residue;  // r(v)
  std::uint64_t cost = 0;  // out-neighbor residue updates
};

/// Forward Push from s until r(v) <= r_max * d_out(v) everywhere. On an
/// undirected graph |p(v) - pi(s,v)| <= r_max * d(v).
ForwardPushResult forward_push(const Graph& g, double alpha, NodeId s, double r_max);

/// max over `rows` of |pi(v,t) - q(v,t) - sum_u pi(v,u) r(u,t)|, using exact
/// rows from the power-iteration oracle.
double verify_invariant(const Graph& g, double alpha, const PushResult& result,
                        std::span<const NodeId> rows, double oracle_tol = 1e-12);

/// "# t=.. r_max=.. cost=.." then "node<TAB>q<TAB>r" sorted by node id.
void write_push_result(std::ostream& out, const Graph& g, const PushResult& result);

}  // namespace ppr
