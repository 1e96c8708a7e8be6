#pragma once

#include <stdexcept>

namespace lsnsum {

// A probability. Validates on construction; values within 1e-9 of [0,1] are
// clamped (cdf arithmetic like Phi(z) - 2T(z,a) can land an ulp outside).
class Probability {
 public:
  Probability() = default;
  Probability(double v) : v_(validate(v)) {}
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  static double validate(double v) {
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9))
      throw std::domain_error("Probability: value outside [0,1]");
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
  double v_ = 0.0;
};

// Standard normal density phi(x) = e^{-x^2/2}/sqrt(2*pi).
double std_normal_pdf(double x);

// Standard normal cdf Phi(x) = erfc(-x/sqrt(2))/2. Absolute error <= 1e-15.
Probability std_normal_cdf(double x);

// Inverse of Phi on (0,1). Rational initial estimate polished by one Halley
// step of Phi(x) - p, giving near machine precision.
double std_normal_quantile(Probability p);

// Owen's T function, T(h,a) = (1/2pi) * integral_0^a exp(-h^2(1+t^2)/2)/(1+t^2) dt.
// Even in h, odd in a, |T| <= 1/4. Absolute error <= 1e-14.
double owen_t(double h, double a);

}  // namespace lsnsum
