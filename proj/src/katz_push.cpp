#include "gprox/katz_push.hpp"

#include "gprox/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace gprox {

double SparseAccumulator::get(Index v) const {
  if (is_dense()) return dense_[v];
  auto it = sparse_.find(v);
  return it == sparse_.end() ? 0.0 : it->second;
}

double& SparseAccumulator::at(Index v) {
  if (is_dense()) {
    if (!seen_[v]) {
      seen_[v] = 1;
      order_.push_back(v);
    }
    return dense_[v];
  }
  auto [it, inserted] = sparse_.try_emplace(v, 0.0);
  if (inserted && static_cast<Index>(sparse_.size()) > n_ / 4) {
    dense_.assign(n_, 0.0);
    seen_.assign(n_, 0);
    order_.reserve(sparse_.size() * 2);
    for (auto [u, value] : sparse_) {
      dense_[u] = value;
      seen_[u] = 1;
      order_.push_back(u);
    }
    sparse_.clear();
    return dense_[v];
  }
  return it->second;
}

Index SparseAccumulator::touched() const noexcept {
  return is_dense() ? static_cast<Index>(order_.size()) : static_cast<Index>(sparse_.size());
}

std::vector<std::pair<Index, double>> SparseAccumulator::entries() const {
  std::vector<std::pair<Index, double>> out;
  if (is_dense()) {
    out.reserve(order_.size());
    for (Index v : order_) out.emplace_back(v, dense_[v]);
  } else {
    out.assign(sparse_.begin(), sparse_.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vector SparseAccumulator::to_dense() const {
  Vector out = Vector::Zero(n_);
  for (auto [v, value] : entries()) out[v] = value;
  return out;
}

Vector KatzColumn::to_dense(Index n) const {
  Vector out = Vector::Zero(n);
  for (auto [v, value] : entries) out[v] = value;
  return out;
}

namespace {

struct HeapEntry {
  double priority;
  Index vertex;
};

// Max-heap on priority, then min-heap on vertex id.
struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.vertex > b.vertex;
  }
};

}  // namespace

KatzColumn katz_column_push(const Graph& g, double alpha, Index i, const PushOptions& options) {
  const Index n = g.num_vertices();
  if (i < 0 || i >= n) throw ParameterError("vertex out of range");
  if (!(alpha > 0.0)) throw ParameterError("Katz damping alpha must be positive");
  if (!(options.tau > 0.0)) throw ParameterError("tau must be positive");

  KatzColumn column;
  column.source = i;
  if (options.spectral_norm) {
    if (alpha * *options.spectral_norm >= 1.0)
      throw ParameterError("alpha >= 1/||A||_2: I - alpha A is not positive definite");
  } else if (alpha * static_cast<double>(g.max_degree()) >= 1.0) {
    column.warnings.push_back(
        "alpha >= 1/d_max and no spectral norm given; convergence needs alpha < 1/||A||_2");
  }

  const bool degree_scaled = options.scaling == PushScaling::degree_scaled;
  const std::int64_t max_pushes = options.max_pushes > 0 ? options.max_pushes : 50 * n;
  auto priority = [&](Index v, double residual) {
    return degree_scaled ? residual / g.degrees()[v] : residual;
  };

  PushState state{SparseAccumulator(n), SparseAccumulator(n), options.tau, options.scaling, {}};
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;

  state.r.at(i) = 1.0;
  if (priority(i, 1.0) > options.tau) heap.push({priority(i, 1.0), i});

  column.converged = true;
  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    const double residual = state.r.get(top.vertex);
    // Lazy deletion: skip entries whose residual changed since they were queued.
    if (priority(top.vertex, residual) != top.priority) continue;
    if (top.priority < options.tau) break;
    if (state.stats.pushes >= max_pushes) {
      column.converged = false;
      column.warnings.push_back("max_pushes reached before the residual fell below tau");
      break;
    }

    const Index j = top.vertex;
    const double eta = residual;
    state.x.at(j) += eta;
    state.r.at(j) = 0.0;
    const double spread = alpha * eta;
    for (Index u : g.neighbors(j)) {
      double& r_u = state.r.at(u);
      r_u += spread;
      const double p = priority(u, r_u);
      if (p > options.tau) heap.push({p, u});
    }
    ++state.stats.pushes;
    state.stats.edge_touches += g.degree(j);
    if (options.observer) options.observer(state, j);
  }

  state.stats.effective_matvecs =
      static_cast<double>(state.stats.edge_touches) / g.volume();
  state.stats.touched_vertices = state.r.touched();
  column.stats = state.stats;
  if (state.stats.pushes > 0) {
    state.x.at(i) -= 1.0;
    column.entries = state.x.entries();
  }
  return column;
}

double residual_bound(double alpha, Index d_max, Index n, std::int64_t k) {
  if (alpha * static_cast<double>(d_max) >= 1.0)
    throw ParameterError("residual bound needs alpha < 1/d_max");
  if (n < 1 || k < 0) throw ParameterError("residual bound needs n >= 1 and k >= 0");
  const double rate = 1.0 - (1.0 - alpha * static_cast<double>(d_max)) / static_cast<double>(n);
  return std::pow(rate, static_cast<double>(k));
}

ParticipationSummary participation_trace(const Graph& g, double alpha,
                                         const std::vector<Index>& columns, double tau,
                                         PushScaling scaling) {
  ParticipationSummary summary;
  PushOptions options;
  options.tau = tau;
  options.scaling = scaling;
  for (Index c : columns) {
    KatzColumn col = katz_column_push(g, alpha, c, options);
    Vector values(static_cast<Index>(col.entries.size()));
    for (std::size_t k = 0; k < col.entries.size(); ++k) values[static_cast<Index>(k)] = col.entries[k].second;
    const bool all_zero = values.size() == 0 || values.cwiseAbs().maxCoeff() == 0.0;
    summary.ratios.push_back(all_zero ? 1.0 : participation_ratio(values));
  }
  if (summary.ratios.empty()) return summary;
  std::vector<double> sorted = summary.ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  summary.min = sorted.front();
  summary.max = sorted.back();
  summary.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(m);
  summary.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return summary;
}

}  // namespace gprox
