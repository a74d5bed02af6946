#include "ppr/alias_table.hpp"

#include <cmath>

namespace ppr {

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  require(n > 0, "alias table needs at least one weight");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("alias weights must be finite and non-negative");
    total_ += w;
  }
  if (!(total_ > 0.0)) throw ArgumentError("alias weights must contain a positive entry");

  prob_.resize(n);
  alias_.resize(n);
  std::vector<double> scaled(n);
  std::vector<NodeId> small;
  std::vector<NodeId> large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total_;
    alias_[i] = static_cast<NodeId>(i);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<NodeId>(i));
  }
  while (!small.empty() && !large.empty()) {
    NodeId s = small.back();
    small.pop_back();
    NodeId l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (NodeId i : large) prob_[i] = 1.0;
  for (NodeId i : small) prob_[i] = 1.0;
}

NodeId AliasTable::sample(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> column(0, prob_.size() - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::size_t i = column(rng);
  return coin(rng) < prob_[i] ? static_cast<NodeId>(i) : alias_[i];
}

double AliasTable::outcome_probability(NodeId v) const {
  double mass = prob_[v];
  for (std::size_t j = 0; j < prob_.size(); ++j) {
    if (alias_[j] == v && j != v) mass += 1.0 - prob_[j];
  }
  return mass / static_cast<double>(prob_.size());
}

}  // namespace ppr
