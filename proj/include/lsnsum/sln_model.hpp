#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "lsnsum/distributions.hpp"

namespace lsnsum {

// Joint log-domain model of the sum Lambda = sum_i exp(X_i) with
// X ~ N(mu, cov), everything in natural log-power units.
class SumModel {
 public:
  SumModel(Eigen::VectorXd mu_nat, Eigen::MatrixXd cov_nat);

  // cov(i,j) = rho * sigma_i * sigma_j off-diagonal; rho in (-1/(N-1), 1).
  static SumModel equicorrelated(const Eigen::VectorXd& mu_nat,
                                 const Eigen::VectorXd& sigma_nat, double rho);
  static SumModel equicorrelated_db(const Eigen::VectorXd& mu_db,
                                    const Eigen::VectorXd& sigma_db, double rho);
  // Unit-diagonal symmetric PD correlation matrix scaled by the sigmas.
  static SumModel with_correlation(const Eigen::VectorXd& mu_nat,
                                   const Eigen::VectorXd& sigma_nat,
                                   const Eigen::MatrixXd& corr);

  int size() const { return static_cast<int>(mu_.size()); }
  const Eigen::VectorXd& mu() const { return mu_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  LognormalComponent component(int i) const;

  // Lower Cholesky factor of cov, cached for sampling.
  const Eigen::MatrixXd& chol_lower() const { return chol_lower_; }
  bool diagonal_cov() const { return diagonal_; }

 private:
  Eigen::VectorXd mu_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd chol_lower_;
  bool diagonal_;
};

// Exact first two moments of the sum.
struct SumMoments {
  double m;   // E[Lambda]
  double d2;  // Var[Lambda]
};
SumMoments sum_moments(const SumModel& model);

// Precision matrix B = cov^{-1} and the tail-slope quantities built from it.
// Components whose B row sum vanishes are dropped ("reduced" set); the
// surviving block's inverse drives the probability-scale tail slopes.
struct PrecisionAnalysis {
  Eigen::MatrixXd b;                // B = cov^{-1}
  Eigen::VectorXd row_sums;         // B_i = sum_j B(i,j)
  std::vector<int> reduced_index_set;
  int n_tilde = 0;
  Eigen::MatrixXd b_tilde;          // inverse of the reduced covariance
  Eigen::VectorXd b_tilde_row_sums;
  double sum_b_tilde = 0.0;
  double max_diag_b_tilde = 0.0;
  double left_slope = 0.0;          // sqrt(sum_b_tilde)
  double right_slope = 0.0;         // 1 / max diag (diagnostic only)
  bool assumption_ok = false;       // dropped components don't steer the tail
  Eigen::VectorXd w;                // B~^{-1} 1 / (1' B~^{-1} 1)
  Eigen::VectorXd w_tilde;          // w padded back to N with zeros
};
PrecisionAnalysis precision_analysis(const SumModel& model);

// (ln value, Phi^{-1}(p)) pairs; lognormal cdfs plot as straight lines of
// slope 1/sigma. Points with p outside (0,1) are dropped and counted.
struct ProbScaleSeries {
  std::vector<std::pair<double, double>> points;
  std::size_t dropped = 0;
};
ProbScaleSeries prob_scale_transform(
    const std::vector<std::pair<double, Probability>>& cdf_values);

}  // namespace lsnsum
