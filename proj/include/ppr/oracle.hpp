#pragma once

#include <cstdint>
#include <vector>

#include "ppr/graph.hpp"

namespace ppr {

/// Dense PPR row or column computed by truncated power iteration.
struct DenseScores {
  std::vector<double> values;
  NodeId node = 0;  // source for rows, target for columns
  double alpha = 0.0;
  // Unpropagated mass after truncation; bounds the per-entry and (for rows)
  // the L1 error.
  double residual_l1 = 0.0;
  std::size_t iterations = 0;
};

/// Number of power-iteration steps so that (1 - alpha)^K <= tol.
std::size_t power_iterations(double alpha, double tol);

/// Row pi(s, .) of the PPR matrix. Entries underestimate the truth by at most
/// `residual_l1` in total.
DenseScores exact_ssppr(const Graph& g, NodeId s, double alpha, double tol = 1e-10);

/// Column pi(., t), via the reversed propagation pi(v,t) = alpha [v=t] +
/// (1-alpha)/d_out(v) * sum_{w in N_out(v)} pi(w,t).
DenseScores exact_stppr(const Graph& g, NodeId t, double alpha, double tol = 1e-10);

/// ||pi - alpha e_s - (1-alpha) pi P||_1 for a row vector pi.
double recurrence_residual(const Graph& g, const DenseScores& row);

struct PowerLawFit {
  double gamma = 0.0;          // mean fitted exponent (negated log-log slope)
  double fit_rmse = 0.0;       // mean RMS residual of the log-log fits
  double squared_mass = 0.0;   // mean sum_t pi(v,t)^2
  double max_value = 0.0;      // mean max_t pi(v,t)
  std::size_t sources = 0;
  bool looks_power_law = false;  // gamma in (1/2, 1) with a tight fit
};

/// Fits the decay of sorted PPR rows over ranks [10, n/10] for sampled
/// sources. Diagnostic only; refuses graphs with fewer than 100 nodes.
PowerLawFit powerlaw_fit_diagnostic(const Graph& g, std::size_t sample_sources, double alpha,
                                    std::uint64_t seed);

}  // namespace ppr
