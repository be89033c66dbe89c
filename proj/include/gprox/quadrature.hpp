#pragma once

// Gauss and Gauss-Radau bounds on u' Z^{-1} u from the Lanczos coefficients
// of Z started at u / ||u||.

#include "gprox/common.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <span>

namespace gprox {

template <typename Scalar>
struct BoundsPair {
  Scalar lower;
  Scalar upper;
};

/// Constant-size state of the bound recurrence. `d_upper` tracks the pivots
/// of T_k - lambda_lo I and `d_lower` those of T_k - lambda_hi I.
template <typename Scalar>
struct MMQState {
  Scalar b = 0;
  Scalar c = 1;
  Scalar d = 1;
  Scalar d_upper = 1;
  Scalar d_lower = 1;
  Scalar lambda_lo;
  Scalar lambda_hi;
  Index step = 0;

  MMQState(Scalar lo, Scalar hi) : lambda_lo(lo), lambda_hi(hi) {
    if (!(lo > Scalar(0)) || !(hi > lo))
      throw ParameterError("need 0 < lambda_lo < lambda_hi for quadrature bounds");
  }
};

/// A pivot or denominator of the recurrence vanished.
class DegenerateStepError : public Error {
public:
  using Error::Error;
};

namespace detail {

template <typename Scalar>
void check_pivot(Scalar value, Scalar scale, const char* what) {
  using std::abs;
  if (!(abs(value) > Scalar(1e-14) * scale)) throw DegenerateStepError(what);
}

}  // namespace detail

/// Update the Gauss value and both Gauss-Radau bounds after Lanczos step j.
///
/// `alpha` is alpha_j, `beta_prev` is beta_{j-1} and `beta` is beta_j. The
/// returned pair bounds e1' T^{-1} e1 for the unit start vector; scale by
/// ||u||^2 for u' Z^{-1} u. On the first step b and c take their Gauss
/// values 1/alpha_1 and 1 directly: with beta_0 = 0 the general update would
/// leave both at zero. The state is left untouched if a step throws.
template <typename Scalar>
BoundsPair<Scalar> mmq_step(Scalar alpha, Scalar beta_prev, Scalar beta, MMQState<Scalar>& state) {
  using std::abs;
  const Scalar scale = abs(alpha) + beta_prev * beta_prev + beta * beta + state.lambda_hi;
  const Scalar bp2 = beta_prev * beta_prev;
  const Scalar b2 = beta * beta;

  Scalar b, c, d;
  if (state.step == 0) {
    detail::check_pivot(alpha, scale, "zero first pivot");
    b = Scalar(1) / alpha;
    c = Scalar(1);
    d = alpha;
  } else {
    const Scalar denom = state.d * (alpha * state.d - bp2);
    detail::check_pivot(denom, scale * scale, "zero Gauss denominator");
    b = state.b + bp2 * state.c * state.c / denom;
    c = state.c * beta_prev / state.d;
    d = alpha - bp2 / state.d;
  }
  const Scalar d_upper = alpha - state.lambda_lo - bp2 / state.d_upper;
  const Scalar d_lower = alpha - state.lambda_hi - bp2 / state.d_lower;
  detail::check_pivot(d, scale, "zero pivot d");
  // With beta_j = 0 the Gauss value is exact and the Radau pivots are unused.
  if (b2 != Scalar(0)) {
    detail::check_pivot(d_upper, scale, "zero pivot d_upper");
    detail::check_pivot(d_lower, scale, "zero pivot d_lower");
  }

  const Scalar omega_upper = state.lambda_lo + b2 / d_upper;
  const Scalar omega_lower = state.lambda_hi + b2 / d_lower;
  const Scalar den_upper = d * (omega_upper * d - b2);
  const Scalar den_lower = d * (omega_lower * d - b2);
  BoundsPair<Scalar> out;
  if (b2 == Scalar(0)) {
    out = {b, b};
  } else {
    detail::check_pivot(den_upper, scale * scale, "zero upper-bound denominator");
    detail::check_pivot(den_lower, scale * scale, "zero lower-bound denominator");
    out.upper = b + b2 * c * c / den_upper;
    out.lower = b + b2 * c * c / den_lower;
  }

  state.b = b;
  state.c = c;
  state.d = d;
  state.d_upper = d_upper;
  state.d_lower = d_lower;
  ++state.step;
  return out;
}

/// sigma^2 e1' T_k^{-1} e1, the plain Gauss estimate.
template <typename Scalar>
Scalar gauss_oracle(std::span<const Scalar> alphas, std::span<const Scalar> betas, Scalar sigma) {
  const Index k = static_cast<Index>(alphas.size());
  MatrixX<Scalar> t = MatrixX<Scalar>::Zero(k, k);
  for (Index j = 0; j < k; ++j) {
    t(j, j) = alphas[j];
    if (j + 1 < k) t(j, j + 1) = t(j + 1, j) = betas[j];
  }
  VectorX<Scalar> e1 = VectorX<Scalar>::Zero(k);
  e1[0] = Scalar(1);
  return sigma * sigma * t.fullPivLu().solve(e1)[0];
}

/// Gauss-Radau estimate built explicitly: extend T_k by one row and column so
/// that `prescribed` becomes an eigenvalue, then return
/// sigma^2 e1' That^{-1} e1 by a dense solve.
///
/// `alphas` holds alpha_1..alpha_k and `betas` holds beta_1..beta_k (the last
/// one couples T_k to the new row). Prescribing lambda_hi yields the lower
/// bound, lambda_lo the upper bound.
template <typename Scalar>
Scalar gauss_radau_oracle(std::span<const Scalar> alphas, std::span<const Scalar> betas,
                          Scalar sigma, Scalar prescribed) {
  const Index k = static_cast<Index>(alphas.size());
  if (k < 1 || static_cast<Index>(betas.size()) < k)
    throw ParameterError("gauss_radau_oracle needs k alphas and k betas");

  MatrixX<Scalar> t = MatrixX<Scalar>::Zero(k, k);
  for (Index j = 0; j < k; ++j) {
    t(j, j) = alphas[j];
    if (j + 1 < k) t(j, j + 1) = t(j + 1, j) = betas[j];
  }
  const Scalar beta_k = betas[k - 1];
  if (beta_k == Scalar(0)) return gauss_oracle(alphas, betas, sigma);

  // (T_k - phi I) delta = beta_k^2 e_k, alpha_{k+1} = phi + delta_k.
  MatrixX<Scalar> shifted = t - prescribed * MatrixX<Scalar>::Identity(k, k);
  VectorX<Scalar> rhs = VectorX<Scalar>::Zero(k);
  rhs[k - 1] = beta_k * beta_k;
  Eigen::FullPivLU<MatrixX<Scalar>> shifted_lu(shifted);
  if (!shifted_lu.isInvertible())
    throw DegenerateStepError("prescribed node coincides with a Ritz value");
  VectorX<Scalar> delta = shifted_lu.solve(rhs);

  MatrixX<Scalar> extended = MatrixX<Scalar>::Zero(k + 1, k + 1);
  extended.topLeftCorner(k, k) = t;
  extended(k, k) = prescribed + delta[k - 1];
  extended(k - 1, k) = extended(k, k - 1) = beta_k;

  VectorX<Scalar> e1 = VectorX<Scalar>::Zero(k + 1);
  e1[0] = Scalar(1);
  Eigen::FullPivLU<MatrixX<Scalar>> lu(extended);
  if (!lu.isInvertible()) throw DegenerateStepError("extended tridiagonal is singular");
  return sigma * sigma * lu.solve(e1)[0];
}

}  // namespace gprox
