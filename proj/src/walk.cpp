#include "ppr/walk.hpp"

#include <algorithm>

namespace ppr {

WalkEngine::WalkEngine(double alpha, Rng rng) : alpha_(alpha), rng_(std::move(rng)), stop_(alpha) {
  require_alpha(alpha);
}

NodeId WalkEngine::walk(const Graph& g, NodeId s) {
  NodeId cur = s;
  while (!stop_(rng_)) {
    auto nbrs = g.out_neighbors(cur);
    if (nbrs.size() == 1) {
      cur = nbrs[0];
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
      cur = nbrs[pick(rng_)];
    }
    ++steps_;
  }
  return cur;
}

std::vector<std::pair<NodeId, double>> SparseEstimate::sorted() const {
  std::vector<std::pair<NodeId, double>> out;
  out.reserve(counts_.size());
  for (auto [v, c] : counts_) out.emplace_back(v, static_cast<double>(c) / static_cast<double>(n_walks_));
  std::sort(out.begin(), out.end());
  return out;
}

SparseEstimate monte_carlo(const Graph& g, NodeId s, std::uint64_t n_walks, WalkEngine& engine) {
  require(g.has_node(s), "source node out of range");
  require(n_walks >= 1, "n_walks must be positive");
  SparseEstimate est(n_walks);
  for (std::uint64_t i = 0; i < n_walks; ++i) est.add(engine.walk(g, s));
  return est;
}

SparseEstimate monte_carlo_from_distribution(const Graph& g, const AliasTable& sources,
                                             std::uint64_t n_walks, WalkEngine& engine) {
  require(sources.size() == g.num_nodes(), "alias table size does not match graph");
  require(n_walks >= 1, "n_walks must be positive");
  SparseEstimate est(n_walks);
  for (std::uint64_t i = 0; i < n_walks; ++i) {
    NodeId s = sources.sample(engine.rng());
    est.add(engine.walk(g, s));
  }
  return est;
}

}  // namespace ppr
