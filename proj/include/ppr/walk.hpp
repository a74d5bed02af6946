#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppr/alias_table.hpp"
#include "ppr/graph.hpp"
#include "ppr/rng.hpp"

namespace ppr {

/// Single-owner walk state: termination probability, generator and a count
/// of transitions taken (the walk side of cost accounting).
class WalkEngine {
 public:
  WalkEngine(double alpha, Rng rng);

  double alpha() const noexcept { return alpha_; }
  std::uint64_t steps() const noexcept { return steps_; }
  Rng& rng() noexcept { return rng_; }

  /// Before every step the walk stops with probability alpha, so it may end
  /// at `s` without moving. Otherwise it moves to a uniform out-neighbor.
  NodeId walk(const Graph& g, NodeId s);

 private:
  double alpha_;
  Rng rng_;
  std::bernoulli_distribution stop_;
  std::uint64_t steps_ = 0;
};

inline NodeId simulate_walk(const Graph& g, NodeId s, WalkEngine& engine) { return engine.walk(g, s); }

/// Terminal-node histogram of `n_walks` walks. value(v) = count(v)/n_walks.
class SparseEstimate {
 public:
  SparseEstimate() = default;
  explicit SparseEstimate(std::uint64_t n_walks) : n_walks_(n_walks) {}

  void add(NodeId v) { ++counts_[v]; }
  std::uint64_t n_walks() const noexcept { return n_walks_; }
  std::uint64_t count(NodeId v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }
  double value(NodeId v) const { return static_cast<double>(count(v)) / static_cast<double>(n_walks_); }
  std::size_t support_size() const noexcept { return counts_.size(); }
  const std::unordered_map<NodeId, std::uint64_t>& counts() const noexcept { return counts_; }

  /// (node, value) pairs sorted by node id.
  std::vector<std::pair<NodeId, double>> sorted() const;

 private:
  std::uint64_t n_walks_ = 0;
  std::unordered_map<NodeId, std::uint64_t> counts_;
};

SparseEstimate monte_carlo(const Graph& g, NodeId s, std::uint64_t n_walks, WalkEngine& engine);

/// Each walk starts from a source drawn from `sources` (uniform weights give
/// PageRank; degree weights give the stationary distribution on undirected
/// graphs).
SparseEstimate monte_carlo_from_distribution(const Graph& g, const AliasTable& sources,
                                             std::uint64_t n_walks, WalkEngine& engine);

}  // namespace ppr
