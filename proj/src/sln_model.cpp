#include "lsnsum/sln_model.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "lsnsum/errors.hpp"

namespace lsnsum {

namespace {

Eigen::MatrixXd scale_correlation(const Eigen::VectorXd& sigma,
                                  const Eigen::MatrixXd& corr) {
  return sigma.asDiagonal() * corr * sigma.asDiagonal();
}

}  // namespace

SumModel::SumModel(Eigen::VectorXd mu_nat, Eigen::MatrixXd cov_nat)
    : mu_(std::move(mu_nat)), cov_(std::move(cov_nat)) {
  const Eigen::Index n = mu_.size();
  if (n < 1) throw std::domain_error("SumModel: need at least one component");
  if (cov_.rows() != n || cov_.cols() != n)
    throw std::domain_error("SumModel: covariance shape does not match mu");
  if (!mu_.allFinite() || !cov_.allFinite())
    throw std::domain_error("SumModel: non-finite parameter");
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::domain_error("SumModel: covariance not symmetric");
  cov_ = 0.5 * (cov_ + cov_.transpose().eval());  // exact symmetry for LLT
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(cov_(i, i) > 0.0))
      throw std::domain_error("SumModel: diagonal variances must be > 0");
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success)
    throw numeric_error("SumModel: covariance is not positive definite");
  chol_lower_ = llt.matrixL();
  diagonal_ = true;
  for (Eigen::Index i = 0; i < n && diagonal_; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (cov_(i, j) != 0.0) {
        diagonal_ = false;
        break;
      }
}

SumModel SumModel::equicorrelated(const Eigen::VectorXd& mu_nat,
                                  const Eigen::VectorXd& sigma_nat, double rho) {
  const Eigen::Index n = mu_nat.size();
  if (sigma_nat.size() != n)
    throw std::domain_error("equicorrelated: mu/sigma length mismatch");
  if (n > 1 && (rho <= -1.0 / static_cast<double>(n - 1) || rho >= 1.0))
    throw std::domain_error("equicorrelated: rho outside (-1/(N-1), 1)");
  Eigen::MatrixXd cov = rho * (sigma_nat * sigma_nat.transpose());
  cov.diagonal() = sigma_nat.cwiseProduct(sigma_nat);
  return SumModel(mu_nat, std::move(cov));
}

SumModel SumModel::equicorrelated_db(const Eigen::VectorXd& mu_db,
                                     const Eigen::VectorXd& sigma_db,
                                     double rho) {
  return equicorrelated(mu_db * kDbToNat, sigma_db * kDbToNat, rho);
}

SumModel SumModel::with_correlation(const Eigen::VectorXd& mu_nat,
                                    const Eigen::VectorXd& sigma_nat,
                                    const Eigen::MatrixXd& corr) {
  const Eigen::Index n = mu_nat.size();
  if (sigma_nat.size() != n || corr.rows() != n || corr.cols() != n)
    throw std::domain_error("with_correlation: dimension mismatch");
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::fabs(corr(i, i) - 1.0) > 1e-12)
      throw std::domain_error("with_correlation: correlation diagonal must be 1");
  return SumModel(mu_nat, scale_correlation(sigma_nat, corr));
}

LognormalComponent SumModel::component(int i) const {
  return LognormalComponent(mu_(i), std::sqrt(cov_(i, i)));
}

SumMoments sum_moments(const SumModel& model) {
  const Eigen::VectorXd& mu = model.mu();
  const Eigen::MatrixXd& cov = model.cov();
  const Eigen::Index n = mu.size();
  // m_i = E[L_i]; cross covariances are m_i m_j (e^{M(i,j)} - 1).
  Eigen::VectorXd mi(n);
  for (Eigen::Index i = 0; i < n; ++i)
    mi(i) = std::exp(mu(i) + 0.5 * cov(i, i));
  double m = mi.sum();
  double d2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d2 += mi(i) * mi(j) * std::expm1(cov(i, j));
  if (d2 < 0.0) d2 = 0.0;
  return {m, d2};
}

PrecisionAnalysis precision_analysis(const SumModel& model) {
  const Eigen::MatrixXd& cov = model.cov();
  const Eigen::Index n = cov.rows();

  PrecisionAnalysis pa;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw numeric_error("precision_analysis: covariance not positive definite");
  pa.b = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pa.row_sums = pa.b.rowwise().sum();

  // Row sums within 1e-10 of the largest |B| entry count as zero.
  const double threshold = 1e-10 * pa.b.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::fabs(pa.row_sums(i)) > threshold)
      pa.reduced_index_set.push_back(static_cast<int>(i));
  pa.n_tilde = static_cast<int>(pa.reduced_index_set.size());
  if (pa.n_tilde == 0)
    throw numeric_error("precision_analysis: every B row sum vanishes");

  Eigen::MatrixXd cov_red(pa.n_tilde, pa.n_tilde);
  for (int a = 0; a < pa.n_tilde; ++a)
    for (int b = 0; b < pa.n_tilde; ++b)
      cov_red(a, b) = cov(pa.reduced_index_set[a], pa.reduced_index_set[b]);
  Eigen::LLT<Eigen::MatrixXd> llt_red(cov_red);
  if (llt_red.info() != Eigen::Success)
    throw numeric_error("precision_analysis: reduced covariance not PD");
  pa.b_tilde = llt_red.solve(Eigen::MatrixXd::Identity(pa.n_tilde, pa.n_tilde));
  pa.b_tilde_row_sums = pa.b_tilde.rowwise().sum();
  pa.sum_b_tilde = pa.b_tilde_row_sums.sum();
  pa.max_diag_b_tilde = pa.b_tilde.diagonal().maxCoeff();
  if (!(pa.sum_b_tilde > 0.0))
    throw numeric_error("precision_analysis: sum of reduced row sums <= 0");
  pa.left_slope = std::sqrt(pa.sum_b_tilde);
  pa.right_slope = 1.0 / pa.max_diag_b_tilde;

  // w = B~^{-1} 1 / (1' B~^{-1} 1); B~^{-1} is just the reduced covariance.
  const Eigen::VectorXd cov_red_rows = cov_red.rowwise().sum();
  pa.w = cov_red_rows / cov_red_rows.sum();
  pa.w_tilde = Eigen::VectorXd::Zero(n);
  for (int a = 0; a < pa.n_tilde; ++a)
    pa.w_tilde(pa.reduced_index_set[a]) = pa.w(a);

  // Dropped components must satisfy |(e_i - w~)' B w~| > 1e-10, i.e. they do
  // not lie on the tail direction the reduced set defines.
  pa.assumption_ok = true;
  if (pa.n_tilde < n) {
    const Eigen::VectorXd bw = pa.b * pa.w_tilde;
    const double wbw = pa.w_tilde.dot(bw);
    std::vector<bool> kept(n, false);
    for (int idx : pa.reduced_index_set) kept[idx] = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (kept[i]) continue;
      if (std::fabs(bw(i) - wbw) <= 1e-10) {
        pa.assumption_ok = false;
        break;
      }
    }
  }
  return pa;
}

ProbScaleSeries prob_scale_transform(
    const std::vector<std::pair<double, Probability>>& cdf_values) {
  ProbScaleSeries out;
  out.points.reserve(cdf_values.size());
  for (const auto& [value, p] : cdf_values) {
    if (p.value() <= 0.0 || p.value() >= 1.0 || !(value > 0.0)) {
      ++out.dropped;
      continue;
    }
    out.points.emplace_back(std::log(value), std_normal_quantile(p));
  }
  return out;
}

}  // namespace lsnsum
