#include "gprox/commute_column.hpp"

#include "gprox/lanczos.hpp"

#include <cmath>
#include <deque>
#include <random>

namespace gprox {

namespace {

// Two passes of Gram-Schmidt against the first `count` columns of `basis`.
void orthogonalize(const MatrixX<double>& basis, Index count, Vector& v) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass)
    v -= basis.leftCols(count) * (basis.leftCols(count).transpose() * v);
}

}  // namespace

DiagSolveResult cg_lanczos_diag(LinearOperator& op, const Eigen::Ref<const Vector>& rhs,
                                const DiagSolveOptions& options) {
  const Index n = op.dimension();
  const double rhs_norm = rhs.norm();
  if (!(rhs_norm > 0.0)) throw ParameterError("right-hand side must be nonzero");
  const Index max_iter = options.max_iter > 0 ? options.max_iter : n;
  const bool full = options.full_length;

  DiagSolveResult out;
  out.solution = Vector::Zero(n);
  out.diag_estimate = Vector::Zero(n);
  out.residual_norm = rhs_norm;

  MatrixX<double> basis;
  if (full) basis.resize(n, std::min(max_iter, n));
  std::deque<Vector> window;
  std::mt19937_64 restart_rng(0x5eed);

  Vector v = rhs / rhs_norm;
  Vector v_prev = Vector::Zero(n);
  Vector w = Vector::Zero(n);
  Vector z(n);
  double beta_prev = 0.0;  // couples v_prev and v
  double pivot_prev = 1.0; // r_{k-1}
  double zeta = 0.0;
  bool first_block = true;

  for (Index k = 1; k <= max_iter; ++k) {
    if (full) basis.col(k - 1) = v;
    op.apply(v, z);
    const double scale = z.norm();
    double alpha = v.dot(z);
    z -= alpha * v + beta_prev * v_prev;
    if (full) {
      const double correction = v.dot(z);
      alpha += correction;
      orthogonalize(basis, k, z);
    } else if (options.reorth_window > 0) {
      window.push_front(v);
      while (static_cast<Index>(window.size()) > options.reorth_window) window.pop_back();
      bool first = true;
      for (const Vector& u : window) {
        const double c = u.dot(z);
        z -= c * u;
        if (first) alpha += c;
        first = false;
      }
    }
    double beta = z.norm();
    const bool breakdown = beta <= kBreakdownTolerance * scale;
    if (breakdown) beta = 0.0;

    // T = R R' with R lower bidiagonal: r_k = sqrt(alpha_k - l_{k-1}^2),
    // l_{k-1} = beta_{k-1} / r_{k-1}; then W R' = V gives w_k.
    const double coupling = beta_prev / pivot_prev;
    const double pivot2 = alpha - coupling * coupling;
    if (!(pivot2 > 0.0)) throw IndefiniteError("nonpositive pivot in CG-Lanczos");
    const double pivot = std::sqrt(pivot2);
    w = (v - coupling * w) / pivot;
    zeta = (k == 1) ? rhs_norm / pivot : -coupling * zeta / pivot;

    out.solution += zeta * w;
    out.diag_estimate += w.cwiseAbs2();
    out.iterations = k;
    if (first_block) out.residual_norm = beta * std::abs(zeta) / pivot;
    out.converged = out.residual_norm <= options.tol * rhs_norm;

    if (breakdown) first_block = false;
    const bool basis_complete = full && k == n;
    if (basis_complete || (!full && (out.converged || breakdown))) break;

    v_prev.swap(v);
    if (!breakdown) {
      v = z / beta;
      beta_prev = beta;
    } else {
      // Restart in the orthogonal complement; the zero coupling decouples the
      // new block, so the solution stops changing while the diagonal grows.
      Vector fresh(n);
      for (Index t = 0; t < n; ++t) fresh[t] = static_cast<double>(restart_rng() >> 11) * 0x1.0p-53 - 0.5;
      orthogonalize(basis, k, fresh);
      v = fresh / fresh.norm();
      v_prev.setZero();
      beta_prev = 0.0;
      window.clear();
      ++out.restarts;
    }
    pivot_prev = pivot;
  }
  return out;
}

CommuteColumn commute_column(const Graph& g, Index i, const CommuteColumnOptions& options) {
  const Index n = g.num_vertices();
  if (i < 0 || i >= n) throw ParameterError("vertex out of range");
  if (!(options.tol > 0.0)) throw ParameterError("tol must be positive");

  const double inv_n = 1.0 / static_cast<double>(n);
  const Vector inv_sqrt_degree = g.degrees().cwiseSqrt().cwiseInverse();
  DiagSolveOptions solve{options.tol, options.max_iter, options.reorth_window, options.full_length};

  CommuteColumn col;
  col.source = i;
  col.volume = g.volume();
  if (options.preconditioned) {
    LinearOperator op = preconditioned_laplacian_operator(g);
    Vector rhs = Vector::Zero(n);
    rhs[i] = inv_sqrt_degree[i];
    col.solver = cg_lanczos_diag(op, rhs, solve);
    col.solve_part = inv_sqrt_degree.cwiseProduct(col.solver.solution).array() - inv_n;
    col.diag_part = col.solver.diag_estimate.cwiseQuotient(g.degrees()).array() - inv_n;
  } else {
    LinearOperator op = adjusted_laplacian_operator(g);
    col.solver = cg_lanczos_diag(op, Vector::Unit(n, i), solve);
    col.solve_part = col.solver.solution.array() - inv_n;
    col.diag_part = col.solver.diag_estimate.array() - inv_n;
  }
  const double x_i = col.solve_part[i];
  col.scores = col.volume * ((col.diag_part.array() + x_i) - 2.0 * col.solve_part.array()).matrix();
  return col;
}

Vector inverse_degree_heuristic(const Graph& g, Index i) {
  if (i < 0 || i >= g.num_vertices()) throw ParameterError("vertex out of range");
  Vector scores = g.degrees().cwiseInverse().array() + 1.0 / g.degrees()[i];
  scores[i] = 0.0;
  return scores;
}

}  // namespace gprox
