#pragma once

#include <cstdint>

#include "ppr/graph.hpp"

namespace ppr {

/// Undirected preferential-attachment graph. Starts from a clique on
/// `attach + 1` nodes; each later node links to `attach` distinct earlier
/// nodes chosen with probability proportional to their current degree.
/// Connected and deterministic for a fixed seed.
Graph generate_power_law(std::size_t n, std::size_t attach, std::uint64_t seed);

/// Random graph where every node draws between 1 and 2*avg_degree-1
/// uniformly random neighbors (self-loops possible). Used for property tests.
Graph generate_random(std::size_t n, std::size_t avg_degree, GraphMode mode, std::uint64_t seed);

// Small fixed shapes.
Graph make_ring(std::size_t n);              // undirected cycle
Graph make_star(std::size_t leaves);         // undirected, center = node 0
Graph make_self_loop();                      // single node with a self-loop
Graph make_two_cycle(GraphMode mode);        // nodes 0 and 1 joined both ways

}  // namespace ppr
