#include "gprox/solvers.hpp"

#include <cmath>

namespace gprox {

SolveReport conjugate_gradient(LinearOperator& op, const Eigen::Ref<const Vector>& b, double tol,
                               Index max_iter, const Probe& probe) {
  const Index n = op.dimension();
  const std::int64_t start = op.matvec_count();
  SolveReport report;
  report.solution = Vector::Zero(n);
  Vector& x = report.solution;
  Vector r = b;
  Vector p = r;
  Vector zp(n);
  double rr = r.squaredNorm();
  const double target = tol * b.norm();
  report.residual_history.push_back(std::sqrt(rr));
  if (std::sqrt(rr) <= target) {
    report.converged = true;
    return report;
  }

  double previous_probe = probe ? probe(x) : 0.0;
  for (Index k = 1; k <= max_iter; ++k) {
    op.apply(p, zp);
    const double curvature = p.dot(zp);
    if (!(curvature > 0.0)) throw IndefiniteError("conjugate gradient met p'Zp <= 0");
    const double step = rr / curvature;
    x += step * p;
    r -= step * zp;
    const double rr_next = r.squaredNorm();
    report.iterations = k;
    report.residual_history.push_back(std::sqrt(rr_next));

    bool done = std::sqrt(rr_next) <= target;
    if (probe) {
      const double value = probe(x);
      report.probe_history.push_back(value);
      if (value != 0.0 && std::abs(value - previous_probe) < tol * std::abs(value)) done = true;
      previous_probe = value;
    }
    if (done) {
      report.converged = true;
      break;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  report.matvecs = op.matvec_count() - start;
  return report;
}

MatrixX<double> materialize(LinearOperator& op) {
  const Index n = op.dimension();
  MatrixX<double> m(n, n);
  Vector e = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, m.col(j));
    e[j] = 0.0;
  }
  return m;
}

Vector reference_solve(LinearOperator& op, const Eigen::Ref<const Vector>& b,
                       const ReferenceOptions& options) {
  if (op.dimension() <= options.dense_cutoff) {
    Eigen::LLT<MatrixX<double>> llt(materialize(op));
    if (llt.info() != Eigen::Success) throw IndefiniteError("reference system is not SPD");
    return llt.solve(b);
  }
  SolveReport cg = conjugate_gradient(op, b, options.iterative_tol, 4 * op.dimension());
  if (!cg.converged)
    throw ConvergenceError("reference CG solve did not reach tolerance",
                           cg.residual_history.back());
  return cg.solution;
}

DenseReference dense_reference_matrices(const Graph& g, double alpha) {
  const Index n = g.num_vertices();
  if (n > kDenseCutoff)
    throw ParameterError("dense reference refused for n = " + std::to_string(n) +
                         " (cutoff " + std::to_string(kDenseCutoff) + ")");
  const MatrixX<double> a = MatrixX<double>(g.adjacency_matrix());
  const MatrixX<double> eye = MatrixX<double>::Identity(n, n);
  const MatrixX<double> ones = MatrixX<double>::Constant(n, n, 1.0 / static_cast<double>(n));

  DenseReference out;
  if (alpha > 0.0) {
    Eigen::LLT<MatrixX<double>> katz(eye - alpha * a);
    if (katz.info() != Eigen::Success) throw IndefiniteError("I - alpha A is not positive definite");
    out.katz = katz.solve(eye) - eye;
  }

  MatrixX<double> adjusted = MatrixX<double>(g.degrees().asDiagonal()) - a + ones;
  Eigen::LLT<MatrixX<double>> lap(adjusted);
  if (lap.info() != Eigen::Success) throw IndefiniteError("adjusted Laplacian is not SPD");
  out.pseudo_inverse = lap.solve(eye) - ones;

  const Vector diag = out.pseudo_inverse.diagonal();
  out.commute = g.volume() * ((diag.replicate(1, n) + diag.transpose().replicate(n, 1)) -
                              2.0 * out.pseudo_inverse);
  out.commute.diagonal().setZero();
  return out;
}

}  // namespace gprox
