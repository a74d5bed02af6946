#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppr/graph.hpp"
#include "ppr/query.hpp"

namespace ppr {

enum class Algorithm { kAbsolute, kDegree };

/// Source selection: a fixed node, or one drawn per run (uniformly, by
/// degree through an alias table, or the max-degree node).
struct SourceSpec {
  enum class Kind { kFixed, kUniform, kDegree, kMaxDegree };
  Kind kind = Kind::kFixed;
  ExternalId node = 0;

  /// Accepts "uniform", "degree", "maxdeg" or an external node id.
  static SourceSpec parse(const std::string& text);
  bool is_random() const noexcept { return kind == Kind::kUniform || kind == Kind::kDegree; }
};

class SourcePicker {
 public:
  SourcePicker(const Graph& g, SourceSpec spec);
  /// Deterministic in (seed, index).
  NodeId pick(std::uint64_t seed, std::uint64_t index) const;

 private:
  const Graph* g_;
  SourceSpec spec_;
  std::optional<AliasTable> table_;
  NodeId fixed_ = 0;
};

QueryAnswer run_query(Algorithm algo, const Graph& g, NodeId s, const QueryParams& params);

/// Worst (degree-normalized for kDegree) absolute error of an answer against
/// an exact row.
double answer_error(Algorithm algo, const Graph& g, const QueryAnswer& answer, std::span<const double> exact);

/// True if some non-candidate node has exact value above the error bound.
bool has_candidate_miss(Algorithm algo, const Graph& g, const QueryAnswer& answer,
                        std::span<const double> exact, double eps);

struct VerifyConfig {
  Algorithm algo = Algorithm::kAbsolute;
  SourceSpec source;
  QueryParams params;       // params.seed is the base seed; run i uses seed + i
  std::size_t runs = 200;
  std::size_t oracle_cap = 2000;
  unsigned threads = 1;
};

struct RunRecord {
  std::uint64_t seed = 0;
  NodeId source = 0;
  double max_error = 0.0;
  bool failed = false;
  bool candidate_miss = false;
  std::uint64_t push_cost = 0;
  std::uint64_t walk_steps = 0;
  std::uint64_t total_cost = 0;
};

struct VerifyReport {
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::size_t candidate_misses = 0;
  double max_error = 0.0;
  double failure_rate = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval on the failure rate
  double ci_high = 0.0;
  double allowed_rate = 0.0;        // 1/n
  double allowed_failures = 0.0;    // runs/n + 3 sigma
  bool within_guarantee = true;
  double mean_push_cost = 0.0;
  double mean_walk_steps = 0.0;
  std::string note;
  std::vector<RunRecord> records;
};

/// Error slack absorbing oracle truncation in failure counting.
inline constexpr double kVerifySlack = 1e-12;

VerifyReport run_verify(const Graph& g, const VerifyConfig& cfg);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rmse = 0.0;
  std::size_t points = 0;
};

/// Least-squares line through (x, y); needs at least two distinct x.
std::optional<SlopeFit> fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct ScaleCell {
  std::size_t n = 0;
  std::size_t m = 0;
  double eps = 0.0;
  std::size_t seeds = 0;
  double mean_cost = 0.0;
  double mean_push_cost = 0.0;
  double mean_walk_steps = 0.0;
};

struct ScaleReport {
  std::vector<ScaleCell> cells;
  // log(cost) vs log(1/eps), one per graph with >= 2 eps values.
  std::vector<std::pair<std::size_t, SlopeFit>> eps_slopes;  // (n, fit)
  // log(cost) vs log(m), one per eps with >= 2 graphs.
  std::vector<std::pair<double, SlopeFit>> size_slopes;      // (eps, fit)
  std::string note;
};

struct ScaleConfig {
  Algorithm algo = Algorithm::kAbsolute;
  std::vector<std::size_t> sizes;   // power-law graph sizes
  std::size_t attach = 4;
  std::uint64_t graph_seed = 1;
  std::vector<double> eps_grid;
  std::size_t seeds = 3;
  SourceSpec source;
  QueryParams params;
  unsigned threads = 1;
};

ScaleReport run_scale(const ScaleConfig& cfg);
/// Same measurement over caller-provided graphs.
ScaleReport run_scale(const std::vector<Graph>& graphs, const ScaleConfig& cfg);

struct SourceCostComparison {
  double degree_sampled_mean = 0.0;
  double max_degree_mean = 0.0;
  double ratio = 0.0;  // degree_sampled_mean / max_degree_mean
  std::size_t seeds = 0;
};

/// Mean accounted cost of degree-proportional sources versus the max-degree
/// source, for the degree-normalized query.
SourceCostComparison compare_source_costs(const Graph& g, const QueryParams& params, std::size_t seeds,
                                          unsigned threads = 1);

}  // namespace ppr
