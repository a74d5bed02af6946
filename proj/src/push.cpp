#include "ppr/push.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

#include "ppr/oracle.hpp"
#include "ppr/text_io.hpp"

namespace ppr {

std::vector<std::pair<NodeId, double>> sorted_entries(const SparseVector& v) {
  std::vector<std::pair<NodeId, double>> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Dense per-thread scratch, reset through the touched list so each run costs
// time proportional to the nodes it reaches.
struct PushScratch {
  std::vector<double> residue;
  std::vector<double> reserve;
  std::vector<char> queued;
  std::vector<char> touched_flag;
  std::vector<NodeId> touched;

  void prepare(std::size_t n) {
    if (residue.size() < n) {
      residue.assign(n, 0.0);
      reserve.assign(n, 0.0);
      queued.assign(n, 0);
      touched_flag.assign(n, 0);
    }
  }

  void touch(NodeId v) {
    if (!touched_flag[v]) {
      touched_flag[v] = 1;
      touched.push_back(v);
    }
  }

  void export_to(SparseVector& q, SparseVector& r) {
    for (NodeId v : touched) {
      if (reserve[v] != 0.0) q.emplace(v, reserve[v]);
      if (residue[v] != 0.0) r.emplace(v, residue[v]);
      residue[v] = 0.0;
      reserve[v] = 0.0;
      queued[v] = 0;
      touched_flag[v] = 0;
    }
    touched.clear();
  }
};

PushScratch& scratch() {
  thread_local PushScratch s;
  return s;
}

}  // namespace

PushResult backward_push(const Graph& g, double alpha, NodeId t, double r_max, Budget* budget,
                         PushOrder order) {
  require_alpha(alpha);
  require(g.has_node(t), "target node out of range");
  require(r_max > 0.0, "r_max must be positive");

  PushResult res;
  res.target = t;
  res.r_max = r_max;
  PushScratch& ws = scratch();
  ws.prepare(g.num_nodes());

  std::deque<NodeId> work;
  ws.touch(t);
  ws.residue[t] = 1.0;
  if (1.0 > r_max) {
    work.push_back(t);
    ws.queued[t] = 1;
  }
  while (!work.empty()) {
    NodeId v;
    if (order == PushOrder::kFifo) {
      v = work.front();
      work.pop_front();
    } else {
      v = work.back();
      work.pop_back();
    }
    ws.queued[v] = 0;
    const double mass = ws.residue[v];
    ws.residue[v] = 0.0;
    ws.reserve[v] += alpha * mass;
    const double spread = (1.0 - alpha) * mass;
    for (NodeId u : g.in_neighbors(v)) {
      ws.touch(u);
      ws.residue[u] += spread / static_cast<double>(g.out_degree(u));
      if (ws.residue[u] > r_max && !ws.queued[u]) {
        ws.queued[u] = 1;
        work.push_back(u);
      }
    }
    const std::uint64_t step_cost = g.in_degree(v);
    res.cost += step_cost;
    ++res.pushes;
    if (budget != nullptr) {
      budget->spent += step_cost;
      if (budget->exceeded()) {
        res.completed = false;
        break;
      }
    }
  }
  ws.export_to(res.reserve, res.residue);
  return res;
}

ForwardPushResult forward_push(const Graph& g, double alpha, NodeId s, double r_max) {
  require_alpha(alpha);
  require(g.has_node(s), "source node out of range");
  require(r_max > 0.0, "r_max must be positive");

  ForwardPushResult res;
  res.source = s;
  res.r_max = r_max;
  PushScratch& ws = scratch();
  ws.prepare(g.num_nodes());

  auto over = [&](NodeId v) { return ws.residue[v] > r_max * static_cast<double>(g.out_degree(v)); };
  std::deque<NodeId> work;
  ws.touch(s);
  ws.residue[s] = 1.0;
  if (over(s)) {
    work.push_back(s);
    ws.queued[s] = 1;
  }
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop_front();
    ws.queued[v] = 0;
    const double mass = ws.residue[v];
    ws.residue[v] = 0.0;
    ws.reserve[v] += alpha * mass;
    const double share = (1.0 - alpha) * mass / static_cast<double>(g.out_degree(v));
    for (NodeId w : g.out_neighbors(v)) {
      ws.touch(w);
      ws.residue[w] += share;
      if (!ws.queued[w] && over(w)) {
        ws.queued[w] = 1;
        work.push_back(w);
      }
    }
    res.cost += g.out_degree(v);
  }
  ws.export_to(res.reserve, res.residue);
  return res;
}

double verify_invariant(const Graph& g, double alpha, const PushResult& result,
                        std::span<const NodeId> rows, double oracle_tol) {
  double worst = 0.0;
  for (NodeId v : rows) {
    DenseScores row = exact_ssppr(g, v, alpha, oracle_tol);
    double rhs = lookup(result.reserve, v);
    for (auto [u, r] : result.residue) rhs += row.values[u] * r;
    worst = std::max(worst, std::abs(row.values[result.target] - rhs));
  }
  return worst;
}

void write_push_result(std::ostream& out, const Graph& g, const PushResult& result) {
  out << "# t=" << g.external_id(result.target) << " r_max=" << format_double(result.r_max)
      << " cost=" << result.cost << '\n';
  std::vector<NodeId> nodes;
  for (auto& [v, x] : result.reserve) nodes.push_back(v);
  for (auto& [v, x] : result.residue) {
    if (!result.reserve.count(v)) nodes.push_back(v);
  }
  std::sort(nodes.begin(), nodes.end(),
            [&](NodeId a, NodeId b) { return g.external_id(a) < g.external_id(b); });
  for (NodeId v : nodes) {
    out << g.external_id(v) << '\t' << format_double(lookup(result.reserve, v)) << '\t'
        << format_double(lookup(result.residue, v)) << '\n';
  }
}

}  // namespace ppr
