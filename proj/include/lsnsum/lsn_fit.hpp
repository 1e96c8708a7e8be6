#pragma once

#include "lsnsum/sln_model.hpp"

namespace lsnsum {

// Result of matching an LSN to a SumModel: moments plus lower tail slope.
struct FitResult {
  SkewNormalParams params;
  double lambda0 = 0.0;      // starting guess for the shape
  int iterations = 0;        // bisection steps spent by the solver
  double residual = 0.0;     // relative cv^2 mismatch at the returned shape
  PrecisionAnalysis diagnostics;
};

// Squared coefficient of variation d2/m^2 of the sum.
double cv2_sln(const SumModel& model);

// cv^2 of an LSN whose scale is pinned by the lower-slope constraint
// omega^2 = (1+lambda^2)/sum_b_tilde:
//   e^{omega^2} Phi(2 lambda/sqrt(s)) / (2 Phi^2(lambda/sqrt(s))) - 1.
// Strictly increasing in lambda >= 0.
double cv2_lsn_at(double lambda, double sum_b_tilde);

// Shape guess from the ratio of tail slopes:
// sqrt(max(max_diag^2 * sum_b_tilde - 1, 0)).
double initial_guess(const PrecisionAnalysis& pa);

// Solve cv2_lsn_at(lambda, s) = cv2_sln(model) for lambda >= 0 by bracketed
// bisection. Final relative residual <= 1e-10.
double solve_lambda(const SumModel& model, const PrecisionAnalysis& pa);

// Full fit: lambda from the solver, then
//   omega = sqrt((1+lambda^2)/s),  epsilon = ln m - omega^2/2 - ln(2 Phi(lambda/sqrt(s))).
// The fitted LSN reproduces the sum's mean and cv^2.
FitResult fit_lsn(const SumModel& model);

// Two-moment single-lognormal baseline:
//   sigma^2 = ln(1 + d2/m^2),  mu = ln m - sigma^2/2.
LognormalComponent fit_fenton_wilkinson(const SumModel& model);

namespace detail {
struct LambdaSolve {
  double lambda;
  int iterations;
  double residual;
};
// Core solver on raw inputs; exposed for the error-path unit tests.
LambdaSolve solve_lambda_raw(double cv2_target, double sum_b_tilde,
                             double lambda0);
}  // namespace detail

}  // namespace lsnsum
