#pragma once

#include <span>
#include <vector>

#include "ppr/rng.hpp"
#include "ppr/types.hpp"

namespace ppr {

/// Walker/Vose alias table over n outcomes: O(n) build, O(1) sample.
class AliasTable {
 public:
  /// Throws ArgumentError on negative/non-finite weights or zero total.
  explicit AliasTable(std::span<const double> weights);

  NodeId sample(Rng& rng) const;

  std::size_t size() const noexcept { return prob_.size(); }
  double total_weight() const noexcept { return total_; }
  // Acceptance probability of column i and its alias.
  double probability(std::size_t i) const { return prob_[i]; }
  NodeId alias(std::size_t i) const { return alias_[i]; }

  /// Probability of drawing `v`, reconstructed from the table columns.
  double outcome_probability(NodeId v) const;

 private:
  std::vector<double> prob_;
  std::vector<NodeId> alias_;
  double total_ = 0.0;
};

}  // namespace ppr
