#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lsnsum/sln_model.hpp"

namespace lsnsum {

struct SampleSpec {
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint32_t n_streams = 1;
};

// Counter-based generator: deviate k of a run keyed by `seed` is the
// SplitMix64 finalizer of premix(seed) + (k+1)*golden gamma. Any position is
// randomly addressable, so parallel workers can jump without shared state and
// the output cannot depend on how work was split.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : base_(premix(seed)), k_(counter) {}

  double uniform() { return uniform_from(base_, k_++); }  // open (0,1)
  double normal();                                        // Phi^{-1}(uniform)
  std::uint64_t counter() const { return k_; }

  static double uniform_at(std::uint64_t seed, std::uint64_t k) {
    return uniform_from(premix(seed), k);
  }
  static double normal_at(std::uint64_t seed, std::uint64_t k);

 private:
  static std::uint64_t premix(std::uint64_t seed) { return mix(seed); }
  static std::uint64_t mix(std::uint64_t z);
  static double uniform_from(std::uint64_t base, std::uint64_t k);

  std::uint64_t base_;
  std::uint64_t k_;
};

// Sorted Monte Carlo sample of the sum.
class EmpiricalCdf {
 public:
  // Values must already be ascending (checked).
  explicit EmpiricalCdf(std::vector<double> sorted_values);
  static EmpiricalCdf from_unsorted(std::vector<double> values);

  const std::vector<double>& sorted_values() const { return values_; }
  std::size_t n() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// Draw n_samples of Lambda = sum exp(X_i), X ~ N(mu, cov) via the Cholesky
// factor. Deterministic for a fixed seed regardless of threads or n_streams.
EmpiricalCdf sample_sln(const SumModel& model, const SampleSpec& spec,
                        int threads = 1);

// Fraction of samples <= x (right-continuous).
Probability empirical_cdf_at(const EmpiricalCdf& ecdf, double x);

// Inverse ecdf: order statistic of rank ceil(n*p). Requires 1/n <= p <= 1-1/n.
double empirical_quantile(const EmpiricalCdf& ecdf, Probability p);

// Signed quantile gaps 10*log10(q_analytic(p) / q_empirical(p)) at each level;
// the analytic quantile is found by bisection within [min/10, max*10].
std::vector<double> horizontal_deviation_db(
    const std::function<Probability(double)>& analytic_cdf,
    const EmpiricalCdf& ecdf, const std::vector<Probability>& levels);

// Two-sided Kolmogorov-Smirnov statistic sup |F(x) - F_n(x)|.
double ks_distance(const std::function<Probability(double)>& analytic_cdf,
                   const EmpiricalCdf& ecdf);

}  // namespace lsnsum
