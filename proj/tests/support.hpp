#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ppr/graph.hpp"

namespace ppr::testing {

// Full PPR matrix by solving (I - (1-alpha) P) X = alpha I with Gaussian
// elimination. Independent of the library's power iteration; row s is pi(s,.).
inline std::vector<std::vector<double>> solve_ppr_matrix(const Graph& g, double alpha) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0.0));
  for (NodeId u = 0; u < n; ++u) {
    a[u][u] += 1.0;
    const double w = (1.0 - alpha) / static_cast<double>(g.out_degree(u));
    for (NodeId v : g.out_neighbors(u)) a[u][v] -= w;
    a[u][n + u] = alpha;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    const double d = a[col][col];
    for (double& x : a[col]) x /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col];
      for (std::size_t c = col; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<std::vector<double>> x(n, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) x[r][c] = a[r][n + c];
  }
  return x;
}

inline Graph parse_graph(const std::string& text, GraphMode mode) {
  std::istringstream in(text);
  return load_edge_list(in, mode);
}

// Binomial allowance used by the guarantee checks: runs*p + 3 sigma.
inline double binomial_allowance(std::size_t runs, double p) {
  const double r = static_cast<double>(runs);
  return r * p + 3.0 * std::sqrt(r * p * (1.0 - p));
}

}  // namespace ppr::testing
