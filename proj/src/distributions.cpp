#include "lsnsum/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lsnsum/errors.hpp"

namespace lsnsum {

namespace {

constexpr double kInvSqrt2Pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::domain_error(std::string(what) + ": non-finite");
}

// Invert a continuous monotone cdf by bracket expansion + bisection.
double invert_cdf(const auto& cdf, double target, double lo, double hi) {
  double flo = cdf(lo), fhi = cdf(hi);
  for (int i = 0; i < 200 && (flo > target || fhi < target); ++i) {
    const double span = hi - lo;
    if (flo > target) lo -= span;
    if (fhi < target) hi += span;
    flo = cdf(lo);
    fhi = cdf(hi);
  }
  if (flo > target || fhi < target)
    throw numeric_error("quantile: failed to bracket the requested level");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LognormalComponent::LognormalComponent(double mu, double sigma)
    : mu_nat(mu), sigma_nat(sigma) {
  require_finite(mu, "LognormalComponent.mu_nat");
  require_finite(sigma, "LognormalComponent.sigma_nat");
  if (sigma <= 0.0)
    throw std::domain_error("LognormalComponent: sigma_nat must be > 0");
}

LognormalComponent LognormalComponent::from_db(double mu_db, double sigma_db) {
  return LognormalComponent(mu_db * kDbToNat, sigma_db * kDbToNat);
}

SkewNormalParams::SkewNormalParams(double lambda_, double epsilon, double omega)
    : lambda(lambda_), epsilon_nat(epsilon), omega_nat(omega) {
  require_finite(lambda_, "SkewNormalParams.lambda");
  require_finite(epsilon, "SkewNormalParams.epsilon_nat");
  require_finite(omega, "SkewNormalParams.omega_nat");
  if (omega <= 0.0)
    throw std::domain_error("SkewNormalParams: omega_nat must be > 0");
}

double SkewNormalParams::beta() const {
  return lambda / std::sqrt(1.0 + lambda * lambda);
}

double lognormal_pdf(double l, const LognormalComponent& c) {
  if (!(l > 0.0)) return 0.0;
  const double z = (std::log(l) - c.mu_nat) / c.sigma_nat;
  return kInvSqrt2Pi / (l * c.sigma_nat) * std::exp(-0.5 * z * z);
}

Probability lognormal_cdf(double l, const LognormalComponent& c) {
  if (!(l > 0.0)) return Probability(0.0);
  return std_normal_cdf((std::log(l) - c.mu_nat) / c.sigma_nat);
}

Moments2 lognormal_moments(const LognormalComponent& c) {
  const double s2 = c.sigma_nat * c.sigma_nat;
  const double mean = std::exp(c.mu_nat + 0.5 * s2);
  const double variance = std::expm1(s2) * std::exp(2.0 * c.mu_nat + s2);
  return {mean, variance};
}

double sn_pdf(double x, const SkewNormalParams& p) {
  const double z = (x - p.epsilon_nat) / p.omega_nat;
  return 2.0 / p.omega_nat * std_normal_pdf(z) * std_normal_cdf(p.lambda * z);
}

Probability sn_cdf(double x, const SkewNormalParams& p) {
  const double z = (x - p.epsilon_nat) / p.omega_nat;
  return Probability(std_normal_cdf(z) - 2.0 * owen_t(z, p.lambda));
}

double sn_quantile(Probability pr, const SkewNormalParams& p) {
  const double pv = pr.value();
  if (pv <= 0.0 || pv >= 1.0)
    throw std::domain_error("sn_quantile: p must lie in (0,1)");
  auto cdf = [&p](double x) { return sn_cdf(x, p).value(); };
  return invert_cdf(cdf, pv, p.epsilon_nat - 10.0 * p.omega_nat,
                    p.epsilon_nat + 10.0 * p.omega_nat);
}

double lsn_pdf(double l, const SkewNormalParams& p) {
  if (!(l > 0.0)) return 0.0;
  return sn_pdf(std::log(l), p) / l;
}

Probability lsn_cdf(double l, const SkewNormalParams& p) {
  if (!(l > 0.0)) return Probability(0.0);
  return sn_cdf(std::log(l), p);
}

double lsn_quantile(Probability pr, const SkewNormalParams& p) {
  return std::exp(sn_quantile(pr, p));
}

Moments2 lsn_moments(const SkewNormalParams& p) {
  if (p.lambda == 0.0)  // plain lognormal; expm1 keeps tiny variances exact
    return lognormal_moments(LognormalComponent(p.epsilon_nat, p.omega_nat));
  const double w = p.omega_nat;
  const double bw = p.beta() * w;
  const double e_w2 = std::exp(w * w);
  const double phi1 = std_normal_cdf(bw);
  const double mean = 2.0 * std::exp(p.epsilon_nat + 0.5 * w * w) * phi1;
  const double variance = 2.0 * std::exp(2.0 * p.epsilon_nat) * e_w2 *
                          (e_w2 * std_normal_cdf(2.0 * bw) - 2.0 * phi1 * phi1);
  return {mean, variance};
}

SkewNormalParams sn_negate(const SkewNormalParams& p) {
  return SkewNormalParams(-p.lambda, -p.epsilon_nat, p.omega_nat);
}

SkewNormalParams sn_add_independent_normal(const SkewNormalParams& p, double m,
                                           double s) {
  require_finite(m, "sn_add_independent_normal.m");
  require_finite(s, "sn_add_independent_normal.s");
  if (s < 0.0)
    throw std::domain_error("sn_add_independent_normal: s must be >= 0");
  const double w2 = p.omega_nat * p.omega_nat;
  const double ratio2 = s * s / w2;
  const double lambda1 =
      p.lambda / std::sqrt((1.0 + p.lambda * p.lambda) * ratio2 + 1.0);
  return SkewNormalParams(lambda1, p.epsilon_nat + m, std::sqrt(w2 + s * s));
}

}  // namespace lsnsum
