#include "gprox/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace gprox {

namespace {

bool is_comment_or_blank(std::string_view line, std::string_view comment_chars) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || comment_chars.find(line[pos]) != std::string_view::npos;
}

// Reads the next whitespace-separated token as an integer.
bool next_integer(std::string_view& rest, Index& out) {
  auto begin = rest.find_first_not_of(" \t\r,");
  if (begin == std::string_view::npos) return false;
  rest.remove_prefix(begin);
  auto end = rest.find_first_of(" \t\r,");
  std::string_view token = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

RawEdges load_edge_list(std::istream& in, Indexing indexing) {
  RawEdges raw;
  const Index shift = indexing == Indexing::one_based ? 1 : 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line, "#%")) continue;
    std::string_view rest(line);
    Index u = 0, v = 0;
    if (!next_integer(rest, u) || !next_integer(rest, v))
      throw ParseError("expected two integer vertex ids", lineno);
    u -= shift;
    v -= shift;
    if (u < 0 || v < 0)
      throw ParseError("vertex id out of range for " +
                           std::string(shift ? "1-based" : "0-based") + " indexing",
                       lineno);
    raw.edges.emplace_back(u, v);
  }
  return raw;
}

RawEdges load_matrix_market(std::istream& in) {
  RawEdges raw;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw ParseError("missing %%MatrixMarket banner", 1);
  ++lineno;
  {
    std::string lowered = line;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered.find("coordinate") == std::string::npos)
      throw ParseError("only coordinate MatrixMarket files are supported", lineno);
  }
  Index rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line, "%")) continue;
    std::string_view rest(line);
    if (!next_integer(rest, rows) || !next_integer(rest, cols) || !next_integer(rest, nnz))
      throw ParseError("malformed size line", lineno);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", lineno);
  raw.declared_n = std::max(rows, cols);
  raw.edges.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line, "%")) continue;
    std::string_view rest(line);
    Index u = 0, v = 0;
    if (!next_integer(rest, u) || !next_integer(rest, v))
      throw ParseError("expected two integer indices", lineno);
    if (u < 1 || u > rows || v < 1 || v > cols)
      throw ParseError("index outside the declared " + std::to_string(rows) + "x" +
                           std::to_string(cols) + " matrix",
                       lineno);
    raw.edges.emplace_back(u - 1, v - 1);
  }
  return raw;
}

Graph::Graph(std::vector<Index> row_offsets, std::vector<Index> neighbors,
             std::vector<Index> original_ids, Index components_discarded)
    : n_(static_cast<Index>(row_offsets.size()) - 1),
      row_offsets_(std::move(row_offsets)),
      neighbors_(std::move(neighbors)),
      original_ids_(std::move(original_ids)),
      components_discarded_(components_discarded) {
  if (n_ < 1 || static_cast<Index>(original_ids_.size()) != n_)
    throw ParameterError("inconsistent graph arrays");
  degrees_.resize(n_);
  max_degree_ = 0;
  for (Index v = 0; v < n_; ++v) {
    degrees_[v] = static_cast<double>(degree(v));
    max_degree_ = std::max(max_degree_, degree(v));
  }
  volume_ = degrees_.sum();
}

std::optional<Index> Graph::internal_id(Index original) const {
  // original_ids_ is strictly increasing by construction.
  auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return std::nullopt;
  return static_cast<Index>(it - original_ids_.begin());
}

void Graph::adjacency_times(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) const {
  for (Index v = 0; v < n_; ++v) {
    double sum = 0.0;
    for (Index k = row_offsets_[v]; k < row_offsets_[v + 1]; ++k) sum += x[neighbors_[k]];
    y[v] = sum;
  }
}

Eigen::SparseMatrix<double> Graph::adjacency_matrix() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(neighbors_.size());
  for (Index v = 0; v < n_; ++v)
    for (Index u : neighbors(v)) triplets.emplace_back(v, u, 1.0);
  Eigen::SparseMatrix<double> a(n_, n_);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

namespace {

struct DisjointSets {
  std::vector<Index> parent;
  explicit DisjointSets(Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Graph preprocess(const RawEdges& raw) {
  if (raw.edges.empty()) throw ParameterError("empty edge set");

  // Compact the original ids that appear in at least one non-loop edge.
  std::vector<Index> ids;
  ids.reserve(raw.edges.size() * 2);
  for (auto [u, v] : raw.edges) {
    if (u == v) continue;
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw ParameterError("largest connected component is empty (only self-loops)");

  auto compact = [&](Index original) {
    return static_cast<Index>(std::lower_bound(ids.begin(), ids.end(), original) - ids.begin());
  };
  const Index n_all = static_cast<Index>(ids.size());

  std::vector<std::pair<Index, Index>> arcs;
  arcs.reserve(raw.edges.size() * 2);
  DisjointSets sets(n_all);
  for (auto [u, v] : raw.edges) {
    if (u == v) continue;
    Index a = compact(u), b = compact(v);
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
    sets.unite(a, b);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  // The union-find root is the smallest vertex of each component, so a
  // strict comparison on size with ascending roots gives the tie-break.
  std::vector<Index> size(n_all, 0);
  for (Index v = 0; v < n_all; ++v) ++size[sets.find(v)];
  Index best_root = 0, components = 0;
  for (Index v = 0; v < n_all; ++v) {
    if (sets.find(v) != v) continue;
    ++components;
    if (size[v] > size[best_root]) best_root = v;
  }

  std::vector<Index> relabel(n_all, -1);
  std::vector<Index> original_ids;
  for (Index v = 0; v < n_all; ++v) {
    if (sets.find(v) != best_root) continue;
    relabel[v] = static_cast<Index>(original_ids.size());
    original_ids.push_back(ids[v]);
  }
  const Index n = static_cast<Index>(original_ids.size());

  std::vector<Index> offsets(n + 1, 0);
  std::vector<Index> neighbors;
  neighbors.reserve(arcs.size());
  // arcs are sorted by (source, target) and relabel is monotone, so rows and
  // neighbor lists come out sorted.
  for (auto [a, b] : arcs) {
    if (relabel[a] < 0) continue;
    ++offsets[relabel[a] + 1];
    neighbors.push_back(relabel[b]);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return Graph(std::move(offsets), std::move(neighbors), std::move(original_ids), components - 1);
}

Graph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  if (format == "edges0") return preprocess(load_edge_list(in, Indexing::zero_based));
  if (format == "edges1") return preprocess(load_edge_list(in, Indexing::one_based));
  if (format == "mtx") return preprocess(load_matrix_market(in));
  throw ParameterError("unknown graph format '" + format + "' (expected edges0, edges1 or mtx)");
}

GraphSummary summarize(const Graph& g) {
  return {g.num_vertices(),
          g.num_edges(),
          g.volume() / static_cast<double>(g.num_vertices()),
          g.max_degree(),
          g.volume(),
          g.components_discarded()};
}

}  // namespace gprox
