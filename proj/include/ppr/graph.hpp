#pragma once

#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppr/types.hpp"

namespace ppr {

enum class GraphMode { kDirected, kUndirected };

/// Immutable CSR graph holding both out-arcs and in-arcs.
///
/// Every node has out-degree >= 1. An undirected edge {u,v} is stored as the
/// two arcs (u,v) and (v,u); an undirected self-loop is a single arc (v,v)
/// and contributes 1 to d(v). Neighbor lists are sorted and duplicate-free.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over dense ids [0, n). For undirected graphs each pair in
  /// `arcs` is an edge and both orientations are materialized. Duplicates are
  /// collapsed. `external_ids` may be empty, meaning external id == dense id.
  /// Throws ValidationError if some node ends up with out-degree 0.
  static Graph from_arcs(std::size_t n,
                         std::vector<std::pair<NodeId, NodeId>> arcs,
                         GraphMode mode,
                         std::vector<ExternalId> external_ids = {});

  std::size_t num_nodes() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t num_arcs() const noexcept { return out_targets_.size(); }
  bool is_undirected() const noexcept { return undirected_; }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
  // Undirected degree; equals both in- and out-degree on undirected graphs.
  std::size_t degree(NodeId v) const { return out_degree(v); }
  std::size_t max_degree() const;

  bool has_node(NodeId v) const noexcept { return v < num_nodes(); }
  ExternalId external_id(NodeId v) const { return external_ids_[v]; }
  const std::vector<ExternalId>& external_ids() const noexcept { return external_ids_; }
  /// Dense id of an external id; throws ArgumentError if unknown.
  NodeId dense_id(ExternalId ext) const;

  bool operator==(const Graph&) const = default;

 private:
  bool undirected_ = false;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::vector<ExternalId> external_ids_;
  std::unordered_map<ExternalId, NodeId> dense_of_;
};

/// Reads "u v" lines ('#' comments and blank lines skipped). Dense ids are
/// assigned in order of first appearance.
Graph load_edge_list(std::istream& in, GraphMode mode);

/// Writes the "# n=.. m=.. mode=.." header followed by one arc (directed) or
/// one edge (undirected) per line, using external ids. Lines are ordered so
/// that reloading assigns the same dense ids.
void write_edge_list(std::ostream& out, const Graph& g);

/// "external_id<TAB>dense_id" per node.
void write_id_map(std::ostream& out, const Graph& g);

}  // namespace ppr
