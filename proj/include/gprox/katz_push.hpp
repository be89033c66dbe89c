#pragma once

#include "gprox/graph.hpp"

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gprox {

/// Vertex -> value map that starts as a hash map and switches to a dense
/// array once more than n/4 vertices are touched.
class SparseAccumulator {
public:
  explicit SparseAccumulator(Index n) : n_(n) {}

  double get(Index v) const;
  double& at(Index v);
  Index touched() const noexcept;
  bool is_dense() const noexcept { return !dense_.empty(); }
  /// Touched vertices and their values, by ascending vertex.
  std::vector<std::pair<Index, double>> entries() const;
  Vector to_dense() const;

private:
  Index n_;
  std::unordered_map<Index, double> sparse_;
  std::vector<double> dense_;
  std::vector<char> seen_;
  std::vector<Index> order_;
};

enum class PushScaling { residual, degree_scaled };

struct PushStats {
  std::int64_t pushes = 0;
  std::int64_t edge_touches = 0;
  double effective_matvecs = 0.0;  // edge_touches / (2m)
  Index touched_vertices = 0;  // vertices whose residual was ever nonzero
};

/// Live solver state, exposed to observers after every push.
struct PushState {
  SparseAccumulator x;
  SparseAccumulator r;
  double tau;
  PushScaling scaling;
  PushStats stats;
};

struct PushOptions {
  double tau = 1e-4;
  PushScaling scaling = PushScaling::degree_scaled;
  /// Nonpositive means 50 n.
  std::int64_t max_pushes = 0;
  /// When set, alpha >= 1 / spectral_norm is rejected.
  std::optional<double> spectral_norm;
  /// Called after each push; for tests and tracing.
  std::function<void(const PushState&, Index pushed_vertex)> observer;
};

struct KatzColumn {
  Index source = 0;
  /// Approximation of K e_i = (I - alpha A)^{-1} e_i - e_i on the touched
  /// vertices, by ascending vertex. Untouched vertices are zero.
  std::vector<std::pair<Index, double>> entries;
  PushStats stats;
  bool converged = false;
  std::vector<std::string> warnings;

  Vector to_dense(Index n) const;
};

/// Gauss-Southwell push for one Katz column.
///
/// Starts at x = 0, r = e_i and repeatedly relaxes the vertex with the
/// largest priority (r_j, or r_j / d_j under degree scaling), stopping when
/// no priority exceeds tau. Ties go to the smallest vertex id. The final
/// x_i -= 1 is applied when at least one push happened; with no push the
/// column is empty.
KatzColumn katz_column_push(const Graph& g, double alpha, Index i, const PushOptions& options = {});

/// (1 - (1 - alpha d_max) / n)^k, the residual 1-norm bound for alpha < 1/d_max.
double residual_bound(double alpha, Index d_max, Index n, std::int64_t k);

struct ParticipationSummary {
  std::vector<double> ratios;
  double min = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
};

/// Participation ratio of each pushed Katz column. An all-zero column (no
/// mass left after the x_i -= 1 adjustment) counts as a singleton, ratio 1.
ParticipationSummary participation_trace(const Graph& g, double alpha,
                                         const std::vector<Index>& columns, double tau,
                                         PushScaling scaling = PushScaling::degree_scaled);

}  // namespace gprox
