#include <gtest/gtest.h>

#include <algorithm>
#include <queue>

#include "ppr/generators.hpp"

namespace ppr {
namespace {

bool connected(const Graph& g) {
  std::vector<char> seen(g.num_nodes(), 0);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId w : g.out_neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
    }
  }
  return count == g.num_nodes();
}

TEST(PowerLaw, SmallTree) {
  Graph g = generate_power_law(4, 1, 7);
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.num_arcs(), 6u);
  EXPECT_TRUE(g.is_undirected());
  EXPECT_TRUE(connected(g));
}

TEST(PowerLaw, HeavyTailedDegrees) {
  Graph g = generate_power_law(1000, 4, 1);
  std::vector<std::size_t> deg;
  for (NodeId v = 0; v < g.num_nodes(); ++v) deg.push_back(g.degree(v));
  std::sort(deg.begin(), deg.end(), std::greater<>());
  EXPECT_GT(deg.front(), 10 * deg[deg.size() / 2]);
  // log-log rank plot slopes downwards: top decile well above bottom decile
  EXPECT_GT(deg[10], deg[100]);
  EXPECT_GT(deg[100], deg[900]);
  EXPECT_TRUE(connected(g));
  // attach*(n - attach - 1) + clique edges, each stored twice
  EXPECT_EQ(g.num_arcs(), 2u * (4u * (1000u - 5u) + 10u));
}

TEST(PowerLaw, Deterministic) {
  EXPECT_TRUE(generate_power_law(500, 3, 42) == generate_power_law(500, 3, 42));
  EXPECT_FALSE(generate_power_law(500, 3, 42) == generate_power_law(500, 3, 43));
}

TEST(PowerLaw, RejectsBadParameters) {
  EXPECT_THROW(generate_power_law(3, 5, 0), ArgumentError);
  EXPECT_THROW(generate_power_law(10, 0, 0), ArgumentError);
}

TEST(FixedShapes, Basic) {
  Graph ring = make_ring(10);
  for (NodeId v = 0; v < 10; ++v) EXPECT_EQ(ring.degree(v), 2u);
  Graph star = make_star(10);
  EXPECT_EQ(star.num_nodes(), 11u);
  EXPECT_EQ(star.degree(0), 10u);
  Graph loop = make_self_loop();
  EXPECT_EQ(loop.num_nodes(), 1u);
  EXPECT_EQ(loop.num_arcs(), 1u);
}

TEST(RandomGraph, EveryNodeHasOutArcs) {
  Graph g = generate_random(200, 3, GraphMode::kDirected, 8);
  for (NodeId v = 0; v < g.num_nodes(); ++v) EXPECT_GE(g.out_degree(v), 1u);
}

}  // namespace
}  // namespace ppr
