#include "ppr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppr/rng.hpp"

namespace ppr {

std::size_t power_iterations(double alpha, double tol) {
  require_alpha(alpha);
  require(tol > 0.0 && tol < 1.0, "tol must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(1.0 - alpha)));
}

DenseScores exact_ssppr(const Graph& g, NodeId s, double alpha, double tol) {
  require(g.has_node(s), "source node out of range");
  const std::size_t iters = power_iterations(alpha, tol);
  const std::size_t n = g.num_nodes();
  DenseScores out{std::vector<double>(n, 0.0), s, alpha, 0.0, iters};
  // walk[v]: probability of being at v after k steps without terminating.
  std::vector<double> walk(n, 0.0);
  std::vector<double> next(n, 0.0);
  walk[s] = 1.0;
  for (std::size_t k = 0; k < iters; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId v = 0; v < n; ++v) {
      if (walk[v] == 0.0) continue;
      out.values[v] += alpha * walk[v];
      const double share = (1.0 - alpha) * walk[v] / static_cast<double>(g.out_degree(v));
      for (NodeId w : g.out_neighbors(v)) next[w] += share;
    }
    walk.swap(next);
  }
  out.residual_l1 = std::accumulate(walk.begin(), walk.end(), 0.0);
  return out;
}

DenseScores exact_stppr(const Graph& g, NodeId t, double alpha, double tol) {
  require(g.has_node(t), "target node out of range");
  const std::size_t iters = power_iterations(alpha, tol);
  const std::size_t n = g.num_nodes();
  DenseScores out{std::vector<double>(n, 0.0), t, alpha, 0.0, iters};
  // hit[v]: probability that a walk from v is at t after exactly k steps
  // without terminating.
  std::vector<double> hit(n, 0.0);
  std::vector<double> next(n, 0.0);
  hit[t] = 1.0;
  for (std::size_t k = 0; k < iters; ++k) {
    for (NodeId v = 0; v < n; ++v) out.values[v] += alpha * hit[v];
    for (NodeId v = 0; v < n; ++v) {
      double acc = 0.0;
      for (NodeId w : g.out_neighbors(v)) acc += hit[w];
      next[v] = (1.0 - alpha) * acc / static_cast<double>(g.out_degree(v));
    }
    hit.swap(next);
  }
  out.residual_l1 = std::pow(1.0 - alpha, static_cast<double>(iters));
  return out;
}

double recurrence_residual(const Graph& g, const DenseScores& row) {
  const std::size_t n = g.num_nodes();
  std::vector<double> rhs(n, 0.0);
  rhs[row.node] = row.alpha;
  for (NodeId v = 0; v < n; ++v) {
    const double share = (1.0 - row.alpha) * row.values[v] / static_cast<double>(g.out_degree(v));
    for (NodeId w : g.out_neighbors(v)) rhs[w] += share;
  }
  double l1 = 0.0;
  for (NodeId v = 0; v < n; ++v) l1 += std::abs(row.values[v] - rhs[v]);
  return l1;
}

PowerLawFit powerlaw_fit_diagnostic(const Graph& g, std::size_t sample_sources, double alpha,
                                    std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  if (n < 100) throw ArgumentError("power-law fit needs at least 100 nodes");
  require(sample_sources >= 1, "need at least one sampled source");
  Rng rng = make_stream(seed, Stream::kSource);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));

  PowerLawFit fit;
  const std::size_t lo = 10;
  const std::size_t hi = n / 10;
  for (std::size_t i = 0; i < sample_sources; ++i) {
    DenseScores row = exact_ssppr(g, pick(rng), alpha, 1e-12);
    std::vector<double> sorted = row.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double sq = 0.0;
    for (double x : sorted) sq += x * x;
    fit.squared_mass += sq;
    fit.max_value += sorted.front();

    // Least squares of log(value) on log(rank) over the rank window.
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t rank = lo; rank <= hi; ++rank) {
      double value = sorted[rank - 1];
      if (value <= 0.0) break;
      xs.push_back(std::log(static_cast<double>(rank)));
      ys.push_back(std::log(value));
    }
    if (xs.size() < 2) continue;
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      sxy += (xs[j] - mx) * (ys[j] - my);
      sxx += (xs[j] - mx) * (xs[j] - mx);
    }
    const double slope = sxy / sxx;
    double sse = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double r = ys[j] - (my + slope * (xs[j] - mx));
      sse += r * r;
    }
    fit.gamma += -slope;
    fit.fit_rmse += std::sqrt(sse / k);
    ++fit.sources;
  }
  const double sampled = static_cast<double>(sample_sources);
  fit.squared_mass /= sampled;
  fit.max_value /= sampled;
  if (fit.sources > 0) {
    fit.gamma /= static_cast<double>(fit.sources);
    fit.fit_rmse /= static_cast<double>(fit.sources);
  }
  fit.looks_power_law = fit.sources > 0 && fit.gamma > 0.5 && fit.gamma < 1.0 && fit.fit_rmse < 0.25;
  return fit;
}

}  // namespace ppr
