#include "ppr/generators.hpp"

#include <algorithm>

#include "ppr/rng.hpp"

namespace ppr {

Graph generate_power_law(std::size_t n, std::size_t attach, std::uint64_t seed) {
  require(attach >= 1, "attach must be at least 1");
  require(n >= attach + 1, "n must exceed attach");
  Rng rng = make_stream(seed, Stream::kGenerator);

  std::vector<std::pair<NodeId, NodeId>> edges;
  // Each endpoint appears once per incident edge, so uniform picks from this
  // list are degree-proportional.
  std::vector<NodeId> endpoints;
  for (NodeId u = 0; u <= attach; ++u) {
    for (NodeId v = u + 1; v <= attach; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> picked;
  for (std::size_t v = attach + 1; v < n; ++v) {
    picked.clear();
    while (picked.size() < attach) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      NodeId u = endpoints[pick(rng)];
      if (std::find(picked.begin(), picked.end(), u) == picked.end()) picked.push_back(u);
    }
    for (NodeId u : picked) {
      edges.emplace_back(static_cast<NodeId>(v), u);
      endpoints.push_back(static_cast<NodeId>(v));
      endpoints.push_back(u);
    }
  }
  return Graph::from_arcs(n, std::move(edges), GraphMode::kUndirected);
}

Graph generate_random(std::size_t n, std::size_t avg_degree, GraphMode mode, std::uint64_t seed) {
  require(n >= 1, "n must be positive");
  require(avg_degree >= 1, "avg_degree must be positive");
  Rng rng = make_stream(seed, Stream::kGenerator, 1);
  std::uniform_int_distribution<std::size_t> count(1, 2 * avg_degree - 1);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId u = 0; u < n; ++u) {
    std::size_t k = count(rng);
    for (std::size_t i = 0; i < k; ++i) arcs.emplace_back(u, node(rng));
  }
  return Graph::from_arcs(n, std::move(arcs), mode);
}

Graph make_ring(std::size_t n) {
  require(n >= 3, "ring needs at least 3 nodes");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  return Graph::from_arcs(n, std::move(edges), GraphMode::kUndirected);
}

Graph make_star(std::size_t leaves) {
  require(leaves >= 1, "star needs a leaf");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_arcs(leaves + 1, std::move(edges), GraphMode::kUndirected);
}

Graph make_self_loop() { return Graph::from_arcs(1, {{0, 0}}, GraphMode::kDirected); }

Graph make_two_cycle(GraphMode mode) {
  if (mode == GraphMode::kUndirected) return Graph::from_arcs(2, {{0, 1}}, mode);
  return Graph::from_arcs(2, {{0, 1}, {1, 0}}, mode);
}

}  // namespace ppr
