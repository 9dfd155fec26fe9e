#include "zen/hypergraph.hpp"

#include "zen/error.hpp"
#include "zen/log.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace zen {

Hypergraph::Hypergraph(std::int64_t num_nodes, std::vector<std::vector<NodeId>> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ < 0) throw ConfigError("hypergraph: negative node count");
  if (num_nodes_ > std::numeric_limits<NodeId>::max()) throw ConfigError("hypergraph: too many nodes");
  std::size_t dropped = 0;
  std::vector<std::int64_t> degree(static_cast<std::size_t>(num_nodes_), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& members = edges_[e];
    if (members.empty()) throw ConfigError("hypergraph: hyperedge " + std::to_string(e) + " is empty");
    std::sort(members.begin(), members.end());
    const auto before = members.size();
    members.erase(std::unique(members.begin(), members.end()), members.end());
    dropped += before - members.size();
    if (members.front() < 0 || members.back() >= num_nodes_) {
      throw ConfigError("hypergraph: hyperedge " + std::to_string(e) + " has node id outside [0, " +
                        std::to_string(num_nodes_) + ")");
    }
    for (NodeId v : members) ++degree[static_cast<std::size_t>(v)];
    nnz_ += static_cast<std::int64_t>(members.size());
  }
  if (dropped > 0) {
    warn("dropped " + std::to_string(dropped) + " duplicate node id(s) inside hyperedges");
  }

  incidence_offsets_.assign(static_cast<std::size_t>(num_nodes_) + 1, 0);
  for (std::int64_t v = 0; v < num_nodes_; ++v) {
    incidence_offsets_[static_cast<std::size_t>(v) + 1] =
        incidence_offsets_[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)];
  }
  incidence_.resize(static_cast<std::size_t>(nnz_));
  std::vector<std::int64_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (NodeId v : edges_[e]) {
      incidence_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] =
          static_cast<EdgeId>(e);
    }
  }
}

std::span<const EdgeId> Hypergraph::incident(NodeId v) const {
  const auto b = incidence_offsets_[static_cast<std::size_t>(v)];
  const auto e = incidence_offsets_[static_cast<std::size_t>(v) + 1];
  return {incidence_.data() + b, static_cast<std::size_t>(e - b)};
}

std::int64_t Hypergraph::node_degree(NodeId v) const {
  return incidence_offsets_[static_cast<std::size_t>(v) + 1] -
         incidence_offsets_[static_cast<std::size_t>(v)];
}

std::vector<NodeId> Hypergraph::isolated_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < num_nodes_; ++v) {
    if (node_degree(v) == 0) out.push_back(v);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::int64_t parse_id(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("node id '" + std::string(token) + "' out of range", line);
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError("non-integer token '" + std::string(token) + "'", line);
  }
  if (value < 0) throw ParseError("negative node id " + std::to_string(value), line);
  if (value > std::numeric_limits<NodeId>::max()) {
    throw ParseError("node id " + std::to_string(value) + " out of range", line);
  }
  return value;
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
  std::vector<std::vector<NodeId>> edges;
  std::int64_t header_nodes = -1;
  std::int64_t max_id = -1;
  std::size_t pending_blank = 0;  // line number of the first unresolved blank line
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (nl == text.size() && raw.empty()) break;

    const std::string_view line = trim(raw);
    if (line.empty()) {
      if (pending_blank == 0) pending_blank = line_no;
      continue;
    }
    if (line.front() == '#') continue;
    if (pending_blank != 0) throw ParseError("empty hyperedge line", pending_blank);

    if (line.front() == '%') {
      std::istringstream hs{std::string(line.substr(1))};
      std::string key, value, extra;
      hs >> key >> value;
      if (key != "nodes" || value.empty() || (hs >> extra)) {
        throw ParseError("malformed header, expected '%nodes <n>'", line_no);
      }
      if (!edges.empty() || header_nodes >= 0) {
        throw ParseError("'%nodes' header must appear once, before any hyperedge", line_no);
      }
      header_nodes = parse_id(value, line_no);
      continue;
    }

    std::vector<NodeId> members;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) {
        const auto id = parse_id(line.substr(i, j - i), line_no);
        if (header_nodes >= 0 && id >= header_nodes) {
          throw ParseError("node id " + std::to_string(id) + " exceeds header node count " +
                               std::to_string(header_nodes),
                           line_no);
        }
        max_id = std::max(max_id, id);
        members.push_back(static_cast<NodeId>(id));
      }
      i = j;
    }
    edges.push_back(std::move(members));
  }
  const std::int64_t n = header_nodes >= 0 ? header_nodes : max_id + 1;
  return Hypergraph(n, std::move(edges));
}

Hypergraph read_hypergraph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open hypergraph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hypergraph(buf.str());
}

std::string serialize_hypergraph(const Hypergraph& hg) {
  std::ostringstream os;
  os << "%nodes " << hg.num_nodes() << '\n';
  for (const auto& e : hg.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
  return os.str();
}

DegreeProfile degrees(const Hypergraph& hg) {
  DegreeProfile p;
  p.node_degrees.resize(static_cast<std::size_t>(hg.num_nodes()));
  for (NodeId v = 0; v < hg.num_nodes(); ++v) p.node_degrees[static_cast<std::size_t>(v)] = hg.node_degree(v);
  p.edge_sizes.reserve(static_cast<std::size_t>(hg.num_edges()));
  for (const auto& e : hg.edges()) p.edge_sizes.push_back(static_cast<std::int64_t>(e.size()));
  return p;
}

SparseMatrix incidence_matrix(const Hypergraph& hg) {
  // Row-major H is the node -> incident-edge CSR; fill the arrays directly.
  SparseMatrix::Storage h(hg.num_nodes(), hg.num_edges());
  Eigen::VectorXi reserve(hg.num_nodes());
  for (NodeId v = 0; v < hg.num_nodes(); ++v) reserve[v] = static_cast<int>(hg.node_degree(v));
  h.reserve(reserve);
  for (NodeId v = 0; v < hg.num_nodes(); ++v) {
    for (EdgeId e : hg.incident(v)) h.insert(v, e) = 1.0;
  }
  h.makeCompressed();
  return SparseMatrix(std::move(h));
}

}  // namespace zen
