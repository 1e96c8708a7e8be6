#pragma once

#include <numbers>

#include "lsnsum/special_fn.hpp"

namespace lsnsum {

// ln(10)/10: multiply dB by this to get natural log-power units.
inline constexpr double kDbToNat = std::numbers::ln10 / 10.0;

// Parameters of a single lognormal L = e^X, X ~ N(mu, sigma^2), natural units.
struct LognormalComponent {
  double mu_nat;
  double sigma_nat;

  LognormalComponent(double mu, double sigma);
  static LognormalComponent from_db(double mu_db, double sigma_db);
  double mu_db() const { return mu_nat / kDbToNat; }
  double sigma_db() const { return sigma_nat / kDbToNat; }
};

// Skew normal SN(lambda, epsilon, omega); also parameterizes the log skew
// normal L = e^X through the same triple.
struct SkewNormalParams {
  double lambda;
  double epsilon_nat;
  double omega_nat;

  SkewNormalParams(double lambda_, double epsilon, double omega);
  double beta() const;  // lambda / sqrt(1 + lambda^2)
};

struct Moments2 {
  double mean;
  double variance;
  double cv2() const { return variance / (mean * mean); }
};

double lognormal_pdf(double l, const LognormalComponent& c);
Probability lognormal_cdf(double l, const LognormalComponent& c);
Moments2 lognormal_moments(const LognormalComponent& c);

// pdf (2/w) phi(z) Phi(lambda z), cdf Phi(z) - 2 T(z, lambda), z = (x-eps)/w.
double sn_pdf(double x, const SkewNormalParams& p);
Probability sn_cdf(double x, const SkewNormalParams& p);
double sn_quantile(Probability pr, const SkewNormalParams& p);

// Log skew normal: the law of e^X for X skew normal. Support (0, inf).
double lsn_pdf(double l, const SkewNormalParams& p);
Probability lsn_cdf(double l, const SkewNormalParams& p);
double lsn_quantile(Probability pr, const SkewNormalParams& p);

// mean = 2 e^eps e^{w^2/2} Phi(beta w);
// variance = 2 e^{2 eps} e^{w^2} (e^{w^2} Phi(2 beta w) - 2 Phi^2(beta w)).
Moments2 lsn_moments(const SkewNormalParams& p);

// If X ~ SN(l,e,w) then -X ~ SN(-l,-e,w).
SkewNormalParams sn_negate(const SkewNormalParams& p);

// X + W for W ~ N(m, s^2) independent: SN stays closed under adding a normal;
// shape shrinks to lambda / sqrt((1+lambda^2) s^2/w^2 + 1).
SkewNormalParams sn_add_independent_normal(const SkewNormalParams& p, double m,
                                           double s);

}  // namespace lsnsum
