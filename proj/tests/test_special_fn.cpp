#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "lsnsum/special_fn.hpp"

using namespace lsnsum;

namespace {

// Reference values computed with 50-digit arithmetic, rounded to double.
struct CdfPin {
  double x;
  double p;
};
const std::vector<CdfPin> kCdfPins = {
    {-8.0, 6.2209605742717841e-16}, {-5.0, 2.8665157187919391e-7},
    {-2.0, 0.022750131948179207},   {-1.0, 0.15865525393145705},
    {-0.5, 0.3085375387259869},     {0.0, 0.5},
    {0.3, 0.61791142218895263},     {1.0, 0.84134474606854293},
    {2.0, 0.97724986805182079},     {5.0, 0.99999971334842812},
    {8.0, 0.99999999999999938},
};

struct OwenPin {
  double h;
  double a;
  double t;
};
const std::vector<OwenPin> kOwenPins = {
    {1.0, 1.0, 0.066741882165700967},
    {0.5, 2.0, 0.14158060365397839},
    {2.0, 0.5, 0.0086250779855215071},
    {3.0, 10.0, 0.00067494901581504726},
    {0.25, 0.75, 0.098754536099982903},
    {6.0, 5.0, 4.9329382251884907e-10},
    {0.1, 0.999, 0.12412804622641989},
    {4.0, 1.0001, 1.5835120277546011e-5},
    {1.5, -2.5, -0.033402648238960322},
    {0.0, 1.0, 0.125},
};

}  // namespace

TEST_CASE("probability type validates and clamps") {
  CHECK(Probability(0.5).value() == 0.5);
  CHECK(Probability(0.0).value() == 0.0);
  CHECK(Probability(1.0).value() == 1.0);
  // An ulp outside [0,1] is rounding noise from cdf arithmetic: clamp.
  CHECK(Probability(-1e-12).value() == 0.0);
  CHECK(Probability(1.0 + 1e-12).value() == 1.0);
  CHECK_THROWS_AS((Probability(-0.1)), std::domain_error);
  CHECK_THROWS_AS((Probability(1.1)), std::domain_error);
  CHECK_THROWS_AS(Probability(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
}

TEST_CASE("normal pdf pinned values and symmetry") {
  CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(std_normal_pdf(1.0) == doctest::Approx(0.24197072451914335).epsilon(1e-15));
  for (double x = -10.0; x <= 10.0; x += 0.37)
    CHECK(std_normal_pdf(x) == doctest::Approx(std_normal_pdf(-x)).epsilon(1e-15));
}

TEST_CASE("normal cdf pinned values") {
  for (const CdfPin& pin : kCdfPins) {
    CAPTURE(pin.x);
    CHECK(std::fabs(std_normal_cdf(pin.x).value() - pin.p) <= 1e-15);
  }
}

TEST_CASE("normal cdf monotone and complements to 1") {
  double prev = -1.0;
  for (double x = -9.0; x <= 9.0; x += 0.111) {
    const double p = std_normal_cdf(x);
    CHECK(p >= prev);
    prev = p;
    CHECK(std::fabs(p + std_normal_cdf(-x).value() - 1.0) <= 1e-15);
  }
}

TEST_CASE("quantile round trip cdf(quantile(p)) = p") {
  // Relative agreement even deep in the tail, where p is tiny.
  const std::vector<double> ps = {1e-300, 1e-100, 1e-16, 1e-10, 1e-5,  0.001,
                                  0.01,   0.1,    0.25,  0.5,   0.75,  0.9,
                                  0.99,   0.999,  1 - 1e-10, 1 - 1e-13};
  for (double p : ps) {
    CAPTURE(p);
    const double x = std_normal_quantile(Probability(p));
    CHECK(std::isfinite(x));
    CHECK(std::fabs(std_normal_cdf(x).value() - p) <= 1e-12 * p);
  }
}

TEST_CASE("quantile(cdf(x)) recovers x where p has enough resolution") {
  // Below ~x=5, Phi(x) is far enough from 1 that the double p determines x
  // to high accuracy; demand 1e-10 there.
  for (double x = -8.0; x <= 5.0; x += 0.13) {
    CAPTURE(x);
    const double back = std_normal_quantile(std_normal_cdf(x));
    CHECK(std::fabs(back - x) <= 1e-10 * std::max(1.0, std::fabs(x)));
  }
  // Beyond that, p saturates toward 1 in double precision: the best any
  // inverse can do is limited by the spacing of doubles near 1 divided by
  // the density. Allow four half-ulps of 1.0 through that envelope.
  const double ulp_half = std::numeric_limits<double>::epsilon() / 2.0;
  for (double x = 5.05; x <= 8.0; x += 0.1) {
    CAPTURE(x);
    const double back = std_normal_quantile(std_normal_cdf(x));
    const double envelope = 4.0 * ulp_half / std_normal_pdf(x);
    CHECK(std::fabs(back - x) <= std::max(1e-10, envelope));
  }
}

TEST_CASE("quantile symmetry and midpoint") {
  CHECK(std_normal_quantile(Probability(0.5)) == 0.0);
  for (double p = 0.01; p < 0.5; p += 0.017) {
    const double lo = std_normal_quantile(Probability(p));
    const double hi = std_normal_quantile(Probability(1.0 - p));
    CHECK(std::fabs(lo + hi) <= 1e-13 * std::max(1.0, std::fabs(lo)));
  }
}

TEST_CASE("quantile rejects the endpoints") {
  CHECK_THROWS_AS((std_normal_quantile(Probability(0.0))), std::domain_error);
  CHECK_THROWS_AS((std_normal_quantile(Probability(1.0))), std::domain_error);
}

TEST_CASE("owen t pinned values") {
  for (const OwenPin& pin : kOwenPins) {
    CAPTURE(pin.h);
    CAPTURE(pin.a);
    CHECK(std::fabs(owen_t(pin.h, pin.a) - pin.t) <= 1e-14);
  }
}

TEST_CASE("owen t identities on a grid") {
  // T(h,0) = 0; T(0,a) = atan(a)/2pi; T(h,1) = Phi(h)(1-Phi(h))/2;
  // odd in a, even in h.
  for (double h = -6.0; h <= 6.0; h += 0.5) {
    CAPTURE(h);
    CHECK(owen_t(h, 0.0) == 0.0);
    const double p = std_normal_cdf(h);
    CHECK(std::fabs(owen_t(h, 1.0) - 0.5 * p * (1.0 - p)) <= 1e-13);
    for (double a = -5.0; a <= 5.0; a += 0.5) {
      CHECK(std::fabs(owen_t(h, a) + owen_t(h, -a)) <= 1e-13);
      CHECK(std::fabs(owen_t(h, a) - owen_t(-h, a)) <= 1e-13);
    }
  }
  for (double a = -5.0; a <= 5.0; a += 0.25) {
    CAPTURE(a);
    CHECK(std::fabs(owen_t(0.0, a) - std::atan(a) / (2.0 * std::numbers::pi)) <= 1e-13);
  }
  CHECK(std::fabs(owen_t(1.3, 1.0) - 0.043715075384800675) <= 1e-15);
}

TEST_CASE("owen t bounded by 1/4 and decaying in h") {
  for (double h = 0.0; h <= 10.0; h += 0.7)
    for (double a = -8.0; a <= 8.0; a += 0.9)
      CHECK(std::fabs(owen_t(h, a)) <= 0.25 + 1e-15);
  // For fixed a > 0, T decreases as |h| grows.
  for (double a : {0.5, 1.0, 3.0}) {
    double prev = 1.0;
    for (double h = 0.0; h <= 8.0; h += 0.25) {
      const double t = owen_t(h, a);
      CHECK(t <= prev + 1e-15);
      prev = t;
    }
  }
}
