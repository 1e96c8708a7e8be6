#include "lsnsum/lsn_fit.hpp"

#include <cmath>

#include "lsnsum/errors.hpp"

namespace lsnsum {

double cv2_sln(const SumModel& model) {
  const SumMoments sm = sum_moments(model);
  return sm.d2 / (sm.m * sm.m);
}

double cv2_lsn_at(double lambda, double sum_b_tilde) {
  if (!(sum_b_tilde > 0.0))
    throw std::domain_error("cv2_lsn_at: sum_b_tilde must be > 0");
  if (lambda == 0.0) return std::expm1(1.0 / sum_b_tilde);
  const double rs = std::sqrt(sum_b_tilde);
  const double w2 = (1.0 + lambda * lambda) / sum_b_tilde;
  const double phi1 = std_normal_cdf(lambda / rs);
  // May overflow to +inf for huge lambda; the solver treats inf as "above".
  return std::exp(w2) * std_normal_cdf(2.0 * lambda / rs) / (2.0 * phi1 * phi1) -
         1.0;
}

double initial_guess(const PrecisionAnalysis& pa) {
  const double md = pa.max_diag_b_tilde;
  const double under = md * md * pa.sum_b_tilde - 1.0;
  return under > 0.0 ? std::sqrt(under) : 0.0;
}

namespace detail {

LambdaSolve solve_lambda_raw(double cv2_target, double sum_b_tilde,
                             double lambda0) {
  const double at_zero = cv2_lsn_at(0.0, sum_b_tilde);
  if (cv2_target < at_zero - 1e-12 * std::fabs(at_zero))
    throw numeric_error(
        "solve_lambda: target cv^2 below the lambda=0 value (degenerate fit, "
        "lambda_opt would clamp to 0)");
  // Relative tolerance everywhere; cv^2 spans many orders of magnitude.
  auto rel = [cv2_target](double v) { return v / cv2_target - 1.0; };
  if (std::fabs(rel(at_zero)) <= 1e-12)
    return {0.0, 0, std::fabs(rel(at_zero))};

  double lo = 0.0;
  double hi = std::max(2.0 * lambda0, 1.0);
  int iterations = 0;
  while (cv2_lsn_at(hi, sum_b_tilde) < cv2_target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6)
      throw numeric_error("solve_lambda: no sign change up to lambda = 1e6");
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi) && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    ++iterations;
    if (cv2_lsn_at(mid, sum_b_tilde) < cv2_target)
      lo = mid;
    else
      hi = mid;
  }
  // Report whichever endpoint matches better.
  const double r_lo = std::fabs(rel(cv2_lsn_at(lo, sum_b_tilde)));
  const double r_hi = std::fabs(rel(cv2_lsn_at(hi, sum_b_tilde)));
  LambdaSolve out{r_lo <= r_hi ? lo : hi, iterations, std::min(r_lo, r_hi)};
  if (!(out.residual <= 1e-10))
    throw numeric_error("solve_lambda: residual above 1e-10 after bisection");
  return out;
}

}  // namespace detail

double solve_lambda(const SumModel& model, const PrecisionAnalysis& pa) {
  return detail::solve_lambda_raw(cv2_sln(model), pa.sum_b_tilde,
                                  initial_guess(pa))
      .lambda;
}

FitResult fit_lsn(const SumModel& model) {
  PrecisionAnalysis pa = precision_analysis(model);
  const double lambda0 = initial_guess(pa);
  const detail::LambdaSolve sol =
      detail::solve_lambda_raw(cv2_sln(model), pa.sum_b_tilde, lambda0);

  const double s = pa.sum_b_tilde;
  const double lambda = sol.lambda;
  const double omega = std::sqrt((1.0 + lambda * lambda) / s);
  const double m = sum_moments(model).m;
  // The 2 inside the log makes the LSN mean 2 e^eps e^{w^2/2} Phi(beta w)
  // equal m exactly (beta*omega = lambda/sqrt(s)).
  const double epsilon =
      std::log(m) - 0.5 * omega * omega -
      std::log(2.0 * std_normal_cdf(lambda / std::sqrt(s)));

  FitResult fr{SkewNormalParams(lambda, epsilon, omega), lambda0,
               sol.iterations, sol.residual, std::move(pa)};
  return fr;
}

LognormalComponent fit_fenton_wilkinson(const SumModel& model) {
  const SumMoments sm = sum_moments(model);
  const double s2 = std::log1p(sm.d2 / (sm.m * sm.m));
  return LognormalComponent(std::log(sm.m) - 0.5 * s2, std::sqrt(s2));
}

}  // namespace lsnsum
