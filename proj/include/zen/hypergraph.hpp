#pragma once

#include "zen/sparse.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zen {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

// Node and hyperedge degree profile: d_v (incident hyperedges per node) and
// d_e (members per hyperedge).
struct DegreeProfile {
  std::vector<std::int64_t> node_degrees;
  std::vector<std::int64_t> edge_sizes;
};

// Immutable hypergraph: a node count plus hyperedges as sorted,
// duplicate-free member lists. Node ids are 0-based. Isolated nodes
// (degree 0) are allowed.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Sorts and deduplicates each edge (warning once per call when
  // duplicates were dropped). Throws ConfigError on empty edges or ids
  // outside [0, num_nodes).
  Hypergraph(std::int64_t num_nodes, std::vector<std::vector<NodeId>> edges);

  std::int64_t num_nodes() const { return num_nodes_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
  std::int64_t nnz() const { return nnz_; }

  const std::vector<std::vector<NodeId>>& edges() const { return edges_; }
  std::span<const NodeId> edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  // Hyperedges incident to `v`, ascending.
  std::span<const EdgeId> incident(NodeId v) const;

  std::int64_t node_degree(NodeId v) const;
  std::int64_t edge_size(EdgeId e) const {
    return static_cast<std::int64_t>(edges_[static_cast<std::size_t>(e)].size());
  }
  std::vector<NodeId> isolated_nodes() const;

  bool operator==(const Hypergraph& other) const {
    return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
  }

 private:
  std::int64_t num_nodes_ = 0;
  std::int64_t nnz_ = 0;
  std::vector<std::vector<NodeId>> edges_;
  // CSR node -> incident edges.
  std::vector<std::int64_t> incidence_offsets_{0};
  std::vector<EdgeId> incidence_;
};

// Reads the hyperedge-list format:
//   # comment
//   %nodes <n>        (optional, must precede the first hyperedge)
//   0 1 2             (one hyperedge per line, whitespace separated)
// Blank lines are rejected as empty hyperedges, except at end of file.
// Without a header, num_nodes = 1 + max id.
Hypergraph parse_hypergraph(std::string_view text);
Hypergraph read_hypergraph(const std::string& path);

// Writes `%nodes n` followed by one line per hyperedge; parse_hypergraph
// reads it back to an identical Hypergraph.
std::string serialize_hypergraph(const Hypergraph& hg);

DegreeProfile degrees(const Hypergraph& hg);

// |V| x |E| binary incidence matrix, built directly in compressed form.
SparseMatrix incidence_matrix(const Hypergraph& hg);

}  // namespace zen
