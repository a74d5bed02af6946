#include "ppr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

namespace ppr {

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& targets, bool transpose) {
  offsets.assign(n + 1, 0);
  for (auto [u, v] : arcs) ++offsets[(transpose ? v : u) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(arcs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // arcs are sorted by (u, v), so both layouts come out sorted per node.
  for (auto [u, v] : arcs) {
    if (transpose) {
      targets[cursor[v]++] = u;
    } else {
      targets[cursor[u]++] = v;
    }
  }
}

}  // namespace

Graph Graph::from_arcs(std::size_t n, std::vector<std::pair<NodeId, NodeId>> arcs, GraphMode mode,
                       std::vector<ExternalId> external_ids) {
  if (!external_ids.empty() && external_ids.size() != n) {
    throw ArgumentError("external id table size does not match node count");
  }
  if (external_ids.empty()) {
    external_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) external_ids[i] = i;
  }
  for (auto [u, v] : arcs) {
    if (u >= n || v >= n) throw ArgumentError("arc endpoint out of range");
  }
  Graph g;
  g.undirected_ = mode == GraphMode::kUndirected;
  if (g.undirected_) {
    const std::size_t k = arcs.size();
    arcs.reserve(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      if (arcs[i].first != arcs[i].second) arcs.emplace_back(arcs[i].second, arcs[i].first);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  build_csr(n, arcs, g.out_offsets_, g.out_targets_, false);
  build_csr(n, arcs, g.in_offsets_, g.in_sources_, true);
  g.external_ids_ = std::move(external_ids);
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.dense_of_.emplace(g.external_ids_[v], static_cast<NodeId>(v)).second) {
      throw ArgumentError("duplicate external id " + std::to_string(g.external_ids_[v]));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (g.out_degree(static_cast<NodeId>(v)) == 0) {
      throw ValidationError("node " + std::to_string(g.external_ids_[v]) + " has out-degree 0");
    }
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes(); ++v) best = std::max(best, out_degree(static_cast<NodeId>(v)));
  return best;
}

NodeId Graph::dense_id(ExternalId ext) const {
  auto it = dense_of_.find(ext);
  if (it == dense_of_.end()) throw ArgumentError("unknown node id " + std::to_string(ext));
  return it->second;
}

namespace {

bool parse_id(std::string_view tok, ExternalId& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Graph load_edge_list(std::istream& in, GraphMode mode) {
  std::unordered_map<ExternalId, NodeId> dense;
  std::vector<ExternalId> external;
  std::vector<std::pair<NodeId, NodeId>> arcs;
  auto intern = [&](ExternalId ext) {
    auto [it, inserted] = dense.emplace(ext, static_cast<NodeId>(external.size()));
    if (inserted) external.push_back(ext);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    ExternalId a = 0;
    ExternalId b = 0;
    if (toks.size() != 2 || !parse_id(toks[0], a) || !parse_id(toks[1], b)) {
      throw ParseError(lineno, "expected two non-negative integer node ids, got '" + line + "'");
    }
    NodeId u = intern(a);
    NodeId v = intern(b);
    arcs.emplace_back(u, v);
  }
  const std::size_t n = external.size();
  return Graph::from_arcs(n, std::move(arcs), mode, std::move(external));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const std::size_t n = g.num_nodes();
  const bool undirected = g.is_undirected();
  std::set<std::pair<NodeId, NodeId>> emitted;  // canonical (min,max) for undirected
  auto key = [&](NodeId u, NodeId v) {
    return undirected ? std::make_pair(std::min(u, v), std::max(u, v)) : std::make_pair(u, v);
  };
  std::string body;
  auto emit = [&](NodeId u, NodeId v) {
    emitted.insert(key(u, v));
    body += std::to_string(g.external_id(u));
    body += ' ';
    body += std::to_string(g.external_id(v));
    body += '\n';
  };

  // Introduce nodes in dense order so first-appearance reloading reproduces
  // the same ids.
  std::vector<char> seen(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (seen[v]) continue;
    bool done = false;
    for (NodeId w : g.out_neighbors(v)) {
      if (w == v || seen[w]) {
        emit(v, w);
        done = true;
        break;
      }
    }
    if (!done) {
      for (NodeId w : g.in_neighbors(v)) {
        if (seen[w]) {
          emit(w, v);
          done = true;
          break;
        }
      }
    }
    if (!done) {
      auto outs = g.out_neighbors(v);
      NodeId next = v + 1;
      if (next < n && std::binary_search(outs.begin(), outs.end(), next)) {
        emit(v, next);
        seen[next] = 1;
      } else {
        // Dense order is not a first-appearance order; reload will relabel.
        emit(v, outs.front());
        seen[outs.front()] = 1;
      }
    }
    seen[v] = 1;
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      if (undirected && v < u) continue;
      if (!emitted.count(key(u, v))) emit(u, v);
    }
  }
  out << "# n=" << n << " m=" << g.num_arcs() << " mode=" << (undirected ? 'u' : 'd') << '\n';
  out << body;
}

void write_id_map(std::ostream& out, const Graph& g) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) out << g.external_id(v) << '\t' << v << '\n';
}

}  // namespace ppr
