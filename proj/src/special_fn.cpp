#include "lsnsum/special_fn.hpp"

#include <cmath>
#include <numbers>

#include "lsnsum/quadrature.hpp"

namespace lsnsum {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;
constexpr double kInv2Pi = 0.5 * std::numbers::inv_pi;

// Acklam's rational approximation to the normal quantile, |rel err| < 1.2e-9.
// Only the p <= 1/2 branches are needed; the caller mirrors the upper half.
double quantile_estimate(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  if (p < 0.02425) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// T(h,a) for 0 <= a <= 1, h >= 0, by adaptive quadrature of the defining
// integrand. Bounded and well conditioned on this wedge.
double owen_t_integral(double h, double a) {
  if (a == 0.0) return 0.0;
  const double half_h2 = 0.5 * h * h;
  // exp(-half_h2) already underflows: the integrand is identically zero.
  if (half_h2 > 745.2) return 0.0;
  auto f = [half_h2](double t) {
    const double s = 1.0 + t * t;
    return std::exp(-half_h2 * s) / s;
  };
  return kInv2Pi * integrate(f, 0.0, a, 1e-15);
}

}  // namespace

double std_normal_pdf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("std_normal_pdf: non-finite x");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

Probability std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("std_normal_cdf: non-finite x");
  return Probability(0.5 * std::erfc(-x * kInvSqrt2));
}

double std_normal_quantile(Probability p) {
  const double pv = p.value();
  if (pv <= 0.0 || pv >= 1.0)
    throw std::domain_error("std_normal_quantile: p must lie in (0,1)");
  // 1 - pv is exact for pv in [1/2, 1), so the symmetry costs nothing.
  if (pv > 0.5) return -std_normal_quantile(Probability(1.0 - pv));

  double x = quantile_estimate(pv);
  // One Halley step on Phi(x) - p. u = residual / pdf stays finite because
  // pdf(x) > 1e-307 wherever Phi(x) is a normal double.
  const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) {
    const double u = (0.5 * std::erfc(-x * kInvSqrt2) - pv) / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double owen_t(double h, double a) {
  if (!std::isfinite(h) || !std::isfinite(a))
    throw std::domain_error("owen_t: non-finite argument");
  const double sign = a < 0.0 ? -1.0 : 1.0;  // odd in a
  a = std::fabs(a);
  h = std::fabs(h);  // even in h
  if (a <= 1.0) return sign * owen_t_integral(h, a);
  // T(h,a) = [Phi(h) + Phi(ah)]/2 - Phi(h)Phi(ah) - T(ah, 1/a) maps the
  // integration range back inside [0,1].
  const double ph = std_normal_cdf(h);
  const double pah = std_normal_cdf(a * h);
  const double t = 0.5 * (ph + pah) - ph * pah - owen_t_integral(a * h, 1.0 / a);
  return sign * t;
}

}  // namespace lsnsum
