#pragma once

#include "gprox/common.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gprox {

enum class Indexing { zero_based, one_based };

/// Edges as read from a file, before any cleaning. Ids are zero-based.
struct RawEdges {
  std::vector<std::pair<Index, Index>> edges;
  /// Vertex count declared by the file header, if the format has one.
  std::optional<Index> declared_n;
};

/// Parse "u v [ignored...]" lines; '#' and '%' lines are comments.
RawEdges load_edge_list(std::istream& in, Indexing indexing);

/// Parse a MatrixMarket coordinate file. Values, if any, are ignored.
RawEdges load_matrix_market(std::istream& in);

/// Immutable, symmetric, loop-free, connected graph in compressed row form.
///
/// Vertices are relabelled 0..n-1 in increasing order of their original id;
/// `original_id(v)` maps back.
class Graph {
public:
  Graph(std::vector<Index> row_offsets, std::vector<Index> neighbors,
        std::vector<Index> original_ids, Index components_discarded = 0);

  Index num_vertices() const noexcept { return n_; }
  /// Number of undirected edges.
  Index num_edges() const noexcept { return static_cast<Index>(neighbors_.size()) / 2; }
  double volume() const noexcept { return volume_; }
  Index degree(Index v) const noexcept { return row_offsets_[v + 1] - row_offsets_[v]; }
  Index max_degree() const noexcept { return max_degree_; }
  const Vector& degrees() const noexcept { return degrees_; }

  std::span<const Index> neighbors(Index v) const noexcept {
    return {neighbors_.data() + row_offsets_[v], static_cast<std::size_t>(degree(v))};
  }
  std::span<const Index> row_offsets() const noexcept { return row_offsets_; }

  Index original_id(Index v) const noexcept { return original_ids_[v]; }
  std::span<const Index> original_ids() const noexcept { return original_ids_; }
  /// Internal id for an original id, or nullopt if it was discarded.
  std::optional<Index> internal_id(Index original) const;
  Index components_discarded() const noexcept { return components_discarded_; }

  /// y = A x.
  void adjacency_times(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) const;

  Eigen::SparseMatrix<double> adjacency_matrix() const;

private:
  Index n_;
  std::vector<Index> row_offsets_;
  std::vector<Index> neighbors_;
  std::vector<Index> original_ids_;
  Vector degrees_;
  double volume_;
  Index max_degree_;
  Index components_discarded_;
};

/// Symmetrize, drop self-loops and duplicates, keep the largest connected
/// component. Ties between equal-size components go to the one holding the
/// smallest original id.
Graph preprocess(const RawEdges& raw);

/// Load a graph file; `format` is one of "edges0", "edges1", "mtx".
Graph load_graph(const std::string& path, const std::string& format);

struct GraphSummary {
  Index n;
  Index m;
  double avg_degree;
  Index max_degree;
  double volume;
  Index components_discarded;
};

GraphSummary summarize(const Graph& g);

}  // namespace gprox
