#include "gprox/pairwise.hpp"

#include "gprox/lanczos.hpp"

#include <algorithm>

namespace gprox {

std::string to_string(ScoreKind kind) { return kind == ScoreKind::commute ? "commute" : "katz"; }

namespace {

// One Lanczos recurrence feeding the bound recurrence. Falls back to the
// explicit extended-tridiagonal evaluation for the rest of the run once a
// pivot degenerates.
class BoundRecurrence {
public:
  BoundRecurrence(const Vector& start, double lambda_lo, double lambda_hi)
      : lanczos_(lanczos_start(start)), mmq_(lambda_lo, lambda_hi) {}

  bool finished() const noexcept { return lanczos_.breakdown; }
  const BoundsPair<double>& bounds() const noexcept { return bounds_; }
  bool used_oracle() const noexcept { return fallback_; }

  void step(LinearOperator& op) {
    const double beta_prev = lanczos_.beta_prev;
    const auto [alpha, beta] = lanczos_step(op, lanczos_);
    if (!fallback_) {
      try {
        bounds_ = mmq_step(alpha, beta_prev, beta, mmq_);
        return;
      } catch (const DegenerateStepError&) {
        fallback_ = true;
      }
    }
    std::span<const double> alphas(lanczos_.alphas), betas(lanczos_.betas);
    bounds_.lower = gauss_radau_oracle(alphas, betas, 1.0, mmq_.lambda_hi);
    bounds_.upper = gauss_radau_oracle(alphas, betas, 1.0, mmq_.lambda_lo);
  }

private:
  LanczosState lanczos_;
  MMQState<double> mmq_;
  BoundsPair<double> bounds_{0.0, 0.0};
  bool fallback_ = false;
};

void validate_pair(const Graph& g, Index i, Index j) {
  const Index n = g.num_vertices();
  if (i < 0 || i >= n || j < 0 || j >= n) throw ParameterError("vertex out of range");
  if (i == j) throw ParameterError("pairwise bounds need two distinct vertices");
}

struct ResolvedOptions {
  double lambda_lo;
  double lambda_hi;
  double tau;
  Index max_iter;
};

ResolvedOptions resolve(const Graph& g, const BoundsOptions& options, double default_hi) {
  ResolvedOptions r{options.lambda_lo, options.lambda_hi > 0.0 ? options.lambda_hi : default_hi,
                    options.tau,
                    options.max_iter > 0 ? options.max_iter
                                         : std::min<Index>(g.num_vertices(), 500)};
  if (!(r.lambda_lo > 0.0) || !(r.lambda_hi > r.lambda_lo))
    throw ParameterError("need 0 < lambda_lo < lambda_hi");
  if (!(r.tau > 0.0)) throw ParameterError("tau must be positive");
  return r;
}

Vector pair_vector(Index n, Index i, Index j, double sign) {
  Vector u = Vector::Zero(n);
  u[i] = 1.0;
  u[j] = sign;
  return u;
}

}  // namespace

BoundsTrace commute_pairwise_bounds(const Graph& g, Index i, Index j, const BoundsOptions& options) {
  validate_pair(g, i, j);
  const ResolvedOptions opt = resolve(g, options, one_norm(OperatorKind::laplacian, g));
  LinearOperator op = adjusted_laplacian_operator(g);
  const double sigma2 = 2.0;

  BoundsTrace trace;
  trace.kind = ScoreKind::commute;
  trace.i = i;
  trace.j = j;
  trace.scale = g.volume();
  BoundRecurrence rec(pair_vector(g.num_vertices(), i, j, -1.0), opt.lambda_lo, opt.lambda_hi);
  for (Index it = 1; it <= opt.max_iter; ++it) {
    rec.step(op);
    if (rec.used_oracle()) ++trace.oracle_fallback_steps;
    const double lower = sigma2 * rec.bounds().lower;
    const double upper = sigma2 * rec.bounds().upper;
    trace.rows.push_back({it, trace.scale * lower, trace.scale * upper});
    if (upper - lower < opt.tau || rec.finished()) {
      trace.converged = upper - lower < opt.tau;
      break;
    }
  }
  trace.final_lower = trace.rows.back().lower;
  trace.final_upper = trace.rows.back().upper;
  trace.matvecs = op.matvec_count();
  return trace;
}

BoundsTrace katz_pairwise_bounds(const Graph& g, double alpha, Index i, Index j,
                                 const BoundsOptions& options) {
  validate_pair(g, i, j);
  const ResolvedOptions opt = resolve(g, options, one_norm(OperatorKind::katz, g, alpha));
  LinearOperator op = katz_operator(g, alpha);
  const double sigma2 = 2.0;

  BoundsTrace trace;
  trace.kind = ScoreKind::katz;
  trace.i = i;
  trace.j = j;
  trace.scale = 1.0;
  const Index n = g.num_vertices();
  BoundRecurrence plus(pair_vector(n, i, j, 1.0), opt.lambda_lo, opt.lambda_hi);
  BoundRecurrence minus(pair_vector(n, i, j, -1.0), opt.lambda_lo, opt.lambda_hi);
  for (Index it = 1; it <= opt.max_iter; ++it) {
    // A recurrence that broke down holds its exact value and stops spending matvecs.
    if (!plus.finished()) plus.step(op);
    if (!minus.finished()) minus.step(op);
    if (plus.used_oracle() || minus.used_oracle()) ++trace.oracle_fallback_steps;
    // (I - alpha A)^{-1}_ij = (g - h) / 4 with g, h the +/- quadratic forms;
    // the Katz score subtracts delta_ij, which is zero for i != j.
    const double lower = sigma2 / 4.0 * (plus.bounds().lower - minus.bounds().upper);
    const double upper = sigma2 / 4.0 * (plus.bounds().upper - minus.bounds().lower);
    trace.rows.push_back({it, lower, upper});
    if (upper - lower < opt.tau || (plus.finished() && minus.finished())) {
      trace.converged = upper - lower < opt.tau;
      break;
    }
  }
  trace.final_lower = trace.rows.back().lower;
  trace.final_upper = trace.rows.back().upper;
  trace.matvecs = op.matvec_count();
  return trace;
}

BaselineResult cg_pairwise_baseline(const Graph& g, ScoreKind kind, double alpha, Index i, Index j,
                                    double tau, Index max_iter) {
  validate_pair(g, i, j);
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  const Index n = g.num_vertices();
  if (max_iter <= 0) max_iter = std::min<Index>(n, 500);

  LinearOperator op = kind == ScoreKind::commute ? adjusted_laplacian_operator(g)
                                                 : katz_operator(g, alpha);
  Vector rhs = kind == ScoreKind::commute ? pair_vector(n, i, j, -1.0) : Vector::Unit(n, j);
  Probe probe = kind == ScoreKind::commute
                    ? Probe([i, j](const Vector& x) { return x[i] - x[j]; })
                    : Probe([i](const Vector& x) { return x[i]; });
  SolveReport cg = conjugate_gradient(op, rhs, tau, max_iter, probe);

  const double scale = kind == ScoreKind::commute ? g.volume() : 1.0;
  BaselineResult out;
  out.matvecs = cg.matvecs;
  out.converged = cg.converged;
  for (double v : cg.probe_history) out.estimates.push_back(scale * v);
  out.estimate = out.estimates.empty() ? 0.0 : out.estimates.back();
  return out;
}

}  // namespace gprox
