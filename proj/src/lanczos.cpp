#include "gprox/lanczos.hpp"

#include <cmath>

namespace gprox {

LanczosState lanczos_start(const Eigen::Ref<const Vector>& q, Index reorth_window) {
  const double norm = q.norm();
  if (!(norm > 0.0)) throw ParameterError("Lanczos start vector must be nonzero");
  LanczosState state;
  state.q_curr = q / norm;
  state.q_prev = Vector::Zero(q.size());
  state.reorth_window = reorth_window;
  return state;
}

LanczosCoefficients lanczos_step(LinearOperator& op, LanczosState& state) {
  if (state.breakdown) throw ParameterError("Lanczos recurrence already broke down");
  Vector z = op(state.q_curr);
  const double scale = z.norm();
  double alpha = state.q_curr.dot(z);
  z -= alpha * state.q_curr + state.beta_prev * state.q_prev;

  if (state.reorth_window > 0) {
    // Window is newest-first and starts with q_curr, whose coefficient is
    // folded back into alpha.
    state.window.push_front(state.q_curr);
    while (static_cast<Index>(state.window.size()) > state.reorth_window) state.window.pop_back();
    bool first = true;
    for (const Vector& v : state.window) {
      const double c = v.dot(z);
      z -= c * v;
      if (first) alpha += c;
      first = false;
    }
  }

  const double beta = z.norm();
  state.alphas.push_back(alpha);
  state.betas.push_back(beta);
  ++state.step;
  state.q_prev.swap(state.q_curr);
  if (beta <= kBreakdownTolerance * scale) {
    state.breakdown = true;
    state.q_curr.setZero(state.q_prev.size());
    state.betas.back() = 0.0;
    state.beta_prev = 0.0;
    return {alpha, 0.0};
  }
  state.q_curr = z / beta;
  state.beta_prev = beta;
  return {alpha, beta};
}

MatrixX<double> LanczosFactorization::square_tridiagonal() const {
  return tridiagonal.topRows(steps());
}

LanczosFactorization lanczos_run(LinearOperator& op, const Eigen::Ref<const Vector>& q, Index k,
                                 Reorthogonalization reorth, Index local_window) {
  if (k < 1) throw ParameterError("lanczos_run needs k >= 1");
  const Index n = op.dimension();
  LanczosState state = lanczos_start(q, reorth == Reorthogonalization::local ? local_window : 0);

  LanczosFactorization out;
  out.basis = MatrixX<double>::Zero(n, k + 1);
  out.basis.col(0) = state.q_curr;
  for (Index j = 0; j < k; ++j) {
    lanczos_step(op, state);
    if (reorth == Reorthogonalization::full && !state.breakdown) {
      // Two passes of classical Gram-Schmidt against the stored basis.
      Vector& v = state.q_curr;
      for (int pass = 0; pass < 2; ++pass)
        v -= out.basis.leftCols(j + 1) * (out.basis.leftCols(j + 1).transpose() * v);
      const double norm = v.norm();
      state.betas.back() *= norm;
      state.beta_prev = state.betas.back();
      v /= norm;
    }
    out.basis.col(j + 1) = state.q_curr;
    if (state.breakdown) break;
  }

  out.alphas = state.alphas;
  out.betas = state.betas;
  out.breakdown = state.breakdown;
  const Index m = out.steps();
  out.basis.conservativeResize(n, m + 1);
  out.tridiagonal = MatrixX<double>::Zero(m + 1, m);
  for (Index j = 0; j < m; ++j) {
    out.tridiagonal(j, j) = out.alphas[j];
    out.tridiagonal(j + 1, j) = out.betas[j];
    if (j + 1 < m) out.tridiagonal(j, j + 1) = out.betas[j];
  }
  return out;
}

}  // namespace gprox
