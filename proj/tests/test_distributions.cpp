#include <doctest.h>

#include <cmath>
#include <vector>

#include "lsnsum/distributions.hpp"
#include "lsnsum/montecarlo.hpp"
#include "lsnsum/quadrature.hpp"

using namespace lsnsum;

namespace {

// Exact SN sampler: X = eps + w*(beta*|U0| + sqrt(1-beta^2)*U1).
double sn_draw(const SkewNormalParams& p, CounterRng& rng) {
  const double u0 = rng.normal();
  const double u1 = rng.normal();
  const double b = p.beta();
  return p.epsilon_nat +
         p.omega_nat * (b * std::fabs(u0) + std::sqrt(1.0 - b * b) * u1);
}

double integrate_lsn(const SkewNormalParams& p, int power) {
  // Integrate l^power * pdf over the bulk of the support in log space:
  // substitute l = e^x so the integrand becomes e^{(power)x} sn_pdf(x).
  auto f = [&](double x) {
    return std::exp(static_cast<double>(power) * x) * sn_pdf(x, p);
  };
  const double lo = p.epsilon_nat - (14.0 + 8.0 * power) * p.omega_nat;
  const double hi = p.epsilon_nat + (14.0 + 8.0 * power) * p.omega_nat;
  return integrate(f, lo, hi, 1e-12);
}

}  // namespace

TEST_CASE("db conversions use ln(10)/10") {
  CHECK(kDbToNat == doctest::Approx(0.23025850929940457).epsilon(1e-16));
  const LognormalComponent c = LognormalComponent::from_db(3.0, 6.0);
  CHECK(c.mu_nat == doctest::Approx(3.0 * kDbToNat).epsilon(1e-16));
  CHECK(c.sigma_nat == doctest::Approx(6.0 * kDbToNat).epsilon(1e-16));
  CHECK(c.mu_db() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(c.sigma_db() == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((LognormalComponent(0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS((LognormalComponent(0.0, -1.0)), std::domain_error);
  CHECK_THROWS_AS((SkewNormalParams(1.0, 0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS((SkewNormalParams(1.0, 0.0, -2.0)), std::domain_error);
  const SkewNormalParams p(1.0, 0.0, 1.0);
  CHECK(p.beta() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("lognormal pdf: support, peak, pinned value") {
  const LognormalComponent c(0.0, 1.0);
  CHECK(lognormal_pdf(-1.0, c) == 0.0);
  CHECK(lognormal_pdf(0.0, c) == 0.0);
  CHECK(lognormal_pdf(1.0, c) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-15));
  const LognormalComponent c2(2.0, 1.0);
  CHECK(lognormal_pdf(std::exp(2.0), c2) ==
        doctest::Approx(0.3989422804014327 / std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("lognormal moments: pinned and degenerate") {
  const Moments2 m1 = lognormal_moments(LognormalComponent(0.0, 1.0));
  CHECK(m1.mean == doctest::Approx(1.6487212707001282).epsilon(1e-12));
  CHECK(m1.variance == doctest::Approx(4.670774270471604).epsilon(1e-12));
  const Moments2 m0 = lognormal_moments(LognormalComponent(0.0, 1e-12));
  CHECK(m0.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m0.variance == doctest::Approx(1e-24).epsilon(1e-6));  // expm1 keeps it exact
  const Moments2 ms = lognormal_moments(LognormalComponent(1.0, 1.0));
  CHECK(ms.mean == doctest::Approx(std::exp(1.0) * 1.6487212707001282).epsilon(1e-14));
}

TEST_CASE("sn cdf: normal reduction, quarter point, mc oracle") {
  const SkewNormalParams flat(0.0, 0.3, 2.0);
  for (double x = -5.0; x <= 5.0; x += 0.7)
    CHECK(sn_cdf(x, flat).value() ==
          doctest::Approx(std_normal_cdf((x - 0.3) / 2.0).value()).epsilon(1e-14));

  const SkewNormalParams p1(1.0, 0.4, 1.7);
  CHECK(sn_cdf(0.4, p1).value() == doctest::Approx(0.25).epsilon(1e-13));

  // Pinned from a 10^7-draw sampler run of SN(5,0,1); deep left tail.
  const SkewNormalParams p5(5.0, 0.0, 1.0);
  CHECK(sn_cdf(-1.0, p5).value() ==
        doctest::Approx(4.9876767006582691e-9).epsilon(1e-5));
}

TEST_CASE("sn pdf integrates to cdf increments") {
  const SkewNormalParams p(2.0, -0.5, 0.8);
  for (double x = -3.0; x <= 3.0; x += 0.9) {
    const double inc = integrate(
        [&](double t) { return sn_pdf(t, p); }, x, x + 0.5, 1e-12);
    const double diff = sn_cdf(x + 0.5, p).value() - sn_cdf(x, p).value();
    CHECK(inc == doctest::Approx(diff).epsilon(1e-10));
  }
}

TEST_CASE("lsn pdf/cdf: support and lognormal reduction") {
  const SkewNormalParams p(0.0, 0.2, 1.3);
  const LognormalComponent c(0.2, 1.3);
  CHECK(lsn_pdf(-2.0, p) == 0.0);
  CHECK(lsn_pdf(0.0, p) == 0.0);
  CHECK(lsn_cdf(-2.0, p).value() == 0.0);
  for (double l : {0.01, 0.5, 1.0, 2.0, 40.0}) {
    CHECK(lsn_pdf(l, p) == doctest::Approx(lognormal_pdf(l, c)).epsilon(1e-14));
    CHECK(lsn_cdf(l, p).value() ==
          doctest::Approx(lognormal_cdf(l, c).value()).epsilon(1e-14));
  }
  const SkewNormalParams p1(1.0, 0.7, 2.2);
  CHECK(lsn_cdf(std::exp(0.7), p1).value() == doctest::Approx(0.25).epsilon(1e-13));
  // lsn_pdf(l)*l = sn_pdf(ln l)
  for (double l : {0.3, 1.7, 9.0})
    CHECK(lsn_pdf(l, p1) * l == doctest::Approx(sn_pdf(std::log(l), p1)).epsilon(1e-14));
}

TEST_CASE("lsn pdf integrates to one") {
  for (double lambda : {-3.0, 0.0, 1.0, 5.0})
    for (double omega : {0.2, 1.0, 2.0}) {
      CAPTURE(lambda);
      CAPTURE(omega);
      const SkewNormalParams p(lambda, 0.1, omega);
      CHECK(integrate_lsn(p, 0) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("lsn cdf derivative matches pdf") {
  const SkewNormalParams p(1.0, 0.0, 1.0);
  for (double l : {0.2, 0.8, 1.5, 4.0, 12.0}) {
    CAPTURE(l);
    const double h = 1e-6 * l;
    const double fd =
        (lsn_cdf(l + h, p).value() - lsn_cdf(l - h, p).value()) / (2.0 * h);
    CHECK(fd == doctest::Approx(lsn_pdf(l, p)).epsilon(1e-5));
  }
}

TEST_CASE("lsn moments: pinned values and quadrature cross-check") {
  const Moments2 m0 = lsn_moments(SkewNormalParams(0.0, 0.0, 1.0));
  CHECK(m0.mean == doctest::Approx(1.6487212707001282).epsilon(1e-14));

  // 2 e^{1/2} Phi(1/sqrt(2))
  const Moments2 m1 = lsn_moments(SkewNormalParams(1.0, 0.0, 1.0));
  CHECK(m1.mean == doctest::Approx(2.5068804906473157).epsilon(1e-14));

  for (double lambda : {-3.0, 0.0, 1.0, 5.0})
    for (double omega : {0.2, 1.0, 2.0}) {
      CAPTURE(lambda);
      CAPTURE(omega);
      const SkewNormalParams p(lambda, 0.1, omega);
      const Moments2 m = lsn_moments(p);
      const double q1 = integrate_lsn(p, 1);
      const double q2 = integrate_lsn(p, 2);
      CHECK(m.mean == doctest::Approx(q1).epsilon(1e-8));
      CHECK(m.variance == doctest::Approx(q2 - q1 * q1).epsilon(1e-7));
      // E[L^2] identity
      const double el2 = 2.0 * std::exp(2.0 * p.epsilon_nat) *
                         std::exp(2.0 * omega * omega) *
                         std_normal_cdf(2.0 * p.beta() * omega).value();
      CHECK(m.variance + m.mean * m.mean == doctest::Approx(el2).epsilon(1e-12));
    }
}

TEST_CASE("sn and lsn quantiles invert their cdfs") {
  const SkewNormalParams p(2.0, 0.5, 1.4);
  for (double pr : {0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999}) {
    CAPTURE(pr);
    const double x = sn_quantile(Probability(pr), p);
    CHECK(sn_cdf(x, p).value() == doctest::Approx(pr).epsilon(1e-10));
    const double l = lsn_quantile(Probability(pr), p);
    CHECK(l > 0.0);
    CHECK(lsn_cdf(l, p).value() == doctest::Approx(pr).epsilon(1e-10));
  }
  CHECK_THROWS_AS((sn_quantile(Probability(0.0), p)), std::domain_error);
  CHECK_THROWS_AS((sn_quantile(Probability(1.0), p)), std::domain_error);
}

TEST_CASE("sn negation") {
  const SkewNormalParams p0 = sn_negate(SkewNormalParams(0.0, 1.0, 2.0));
  CHECK(p0.lambda == 0.0);
  CHECK(p0.epsilon_nat == -1.0);
  CHECK(p0.omega_nat == 2.0);

  const SkewNormalParams p(2.0, 0.0, 1.0);
  const SkewNormalParams n = sn_negate(p);
  const SkewNormalParams nn = sn_negate(n);
  CHECK(nn.lambda == p.lambda);
  CHECK(nn.epsilon_nat == p.epsilon_nat);
  CHECK(nn.omega_nat == p.omega_nat);
  for (double x = -4.0; x <= 4.0; x += 0.37)
    CHECK(sn_cdf(x, n).value() ==
          doctest::Approx(1.0 - sn_cdf(-x, p).value()).epsilon(1e-12));
}

TEST_CASE("skewness reflection identity") {
  const SkewNormalParams p(3.0, 0.7, 1.2);
  const SkewNormalParams r = sn_negate(p);
  for (double x = -5.0; x <= 5.0; x += 0.31) {
    const double sum = sn_cdf(p.epsilon_nat + x, p).value() +
                       sn_cdf(r.epsilon_nat - x, r).value();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("adding an independent normal") {
  const SkewNormalParams p(3.0, 0.0, 1.0);
  CHECK_THROWS_AS((sn_add_independent_normal(p, 0.0, -0.5)), std::domain_error);

  const SkewNormalParams same = sn_add_independent_normal(p, 1.5, 0.0);
  CHECK(same.lambda == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(same.epsilon_nat == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(same.omega_nat == doctest::Approx(1.0).epsilon(1e-15));

  const SkewNormalParams flat =
      sn_add_independent_normal(SkewNormalParams(0.0, 0.2, 1.0), 0.3, 2.0);
  CHECK(flat.lambda == 0.0);
  CHECK(flat.epsilon_nat == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(flat.omega_nat == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

  const SkewNormalParams conv = sn_add_independent_normal(p, 0.0, 1.0);
  CHECK(conv.lambda == doctest::Approx(3.0 / std::sqrt(11.0)).epsilon(1e-14));
  CHECK(conv.omega_nat == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("sn-plus-normal closure against simulation") {
  const SkewNormalParams p(3.0, 0.0, 1.0);
  const SkewNormalParams conv = sn_add_independent_normal(p, 0.0, 1.0);
  const std::size_t n = 1000000;
  CounterRng rng(2024);
  std::vector<double> sums(n);
  for (std::size_t i = 0; i < n; ++i) sums[i] = sn_draw(p, rng) + rng.normal();
  const EmpiricalCdf ecdf = EmpiricalCdf::from_unsorted(std::move(sums));
  const double ks = ks_distance(
      [&conv](double x) { return sn_cdf(x, conv); }, ecdf);
  CHECK(ks <= 0.002);
}

TEST_CASE("sn sampler agrees with sn_cdf") {
  // Validates the |U0| construction itself against the analytic cdf.
  const SkewNormalParams p(5.0, 0.0, 1.0);
  const std::size_t n = 1000000;
  CounterRng rng(77);
  std::vector<double> draws(n);
  for (std::size_t i = 0; i < n; ++i) draws[i] = sn_draw(p, rng);
  const EmpiricalCdf ecdf = EmpiricalCdf::from_unsorted(std::move(draws));
  const double ks =
      ks_distance([&p](double x) { return sn_cdf(x, p); }, ecdf);
  CHECK(ks <= 0.002);
}
