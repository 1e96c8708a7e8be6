#include "lsnsum/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lsnsum/errors.hpp"

namespace lsnsum {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// Split a range [0,n) into `parts` nearly equal chunks and run `body(begin,
// end)` on each, using real threads only when parts > 1.
void parallel_chunks(std::uint64_t n, int parts,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  if (parts < 1) parts = 1;
  if (parts == 1 || n < 2) {
    body(0, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(parts);
  const std::uint64_t chunk = (n + parts - 1) / parts;
  for (int t = 0; t < parts; ++t) {
    const std::uint64_t begin = chunk * t;
    const std::uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back(body, begin, end);
  }
  for (auto& w : workers) w.join();
}

}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

double CounterRng::uniform_from(std::uint64_t base, std::uint64_t k) {
  const std::uint64_t bits = mix(base + (k + 1) * kGoldenGamma);
  // 53 mantissa bits, offset half a step: lands strictly inside (0,1).
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() { return std_normal_quantile(uniform()); }

double CounterRng::normal_at(std::uint64_t seed, std::uint64_t k) {
  return std_normal_quantile(uniform_at(seed, k));
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> sorted_values)
    : values_(std::move(sorted_values)) {
  if (values_.empty()) throw std::domain_error("EmpiricalCdf: no samples");
  if (!std::is_sorted(values_.begin(), values_.end()))
    throw std::domain_error("EmpiricalCdf: values not ascending");
}

EmpiricalCdf EmpiricalCdf::from_unsorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return EmpiricalCdf(std::move(values));
}

EmpiricalCdf sample_sln(const SumModel& model, const SampleSpec& spec,
                        int threads) {
  if (spec.n_samples < 1) throw std::domain_error("sample_sln: n_samples >= 1");
  const int n_dim = model.size();
  std::vector<double> out(spec.n_samples);
  const Eigen::MatrixXd& chol = model.chol_lower();
  const Eigen::VectorXd& mu = model.mu();
  const bool diag = model.diagonal_cov();
  Eigen::VectorXd diag_sigma;
  if (diag) diag_sigma = model.cov().diagonal().cwiseSqrt();

  auto body = [&](std::uint64_t begin, std::uint64_t end) {
    Eigen::VectorXd z(n_dim), x(n_dim);
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t k0 = i * static_cast<std::uint64_t>(n_dim);
      double lambda_sum = 0.0;
      if (diag) {
        for (int d = 0; d < n_dim; ++d)
          lambda_sum +=
              std::exp(mu(d) + diag_sigma(d) *
                                   CounterRng::normal_at(spec.seed, k0 + d));
      } else {
        for (int d = 0; d < n_dim; ++d)
          z(d) = CounterRng::normal_at(spec.seed, k0 + d);
        x.noalias() = chol * z;
        for (int d = 0; d < n_dim; ++d) lambda_sum += std::exp(mu(d) + x(d));
      }
      out[i] = lambda_sum;
    }
  };
  parallel_chunks(spec.n_samples, threads, body);
  return EmpiricalCdf::from_unsorted(std::move(out));
}

Probability empirical_cdf_at(const EmpiricalCdf& ecdf, double x) {
  const auto& v = ecdf.sorted_values();
  const auto it = std::upper_bound(v.begin(), v.end(), x);
  return Probability(static_cast<double>(it - v.begin()) /
                     static_cast<double>(v.size()));
}

double empirical_quantile(const EmpiricalCdf& ecdf, Probability p) {
  const double n = static_cast<double>(ecdf.n());
  const double pv = p.value();
  // A single sample is its own quantile at every level.
  if (ecdf.n() == 1) return ecdf.sorted_values().front();
  if (pv < 1.0 / n - 1e-12 || pv > 1.0 - 1.0 / n + 1e-12)
    throw std::domain_error("empirical_quantile: p outside [1/n, 1-1/n]");
  // Rank ceil(n*p) with a little slack so p = k/n hits order statistic k.
  auto rank = static_cast<std::uint64_t>(std::ceil(n * pv - 1e-9));
  if (rank < 1) rank = 1;
  if (rank > ecdf.n()) rank = ecdf.n();
  return ecdf.sorted_values()[rank - 1];
}

std::vector<double> horizontal_deviation_db(
    const std::function<Probability(double)>& analytic_cdf,
    const EmpiricalCdf& ecdf, const std::vector<Probability>& levels) {
  const double lo0 = ecdf.sorted_values().front() / 10.0;
  const double hi0 = ecdf.sorted_values().back() * 10.0;
  std::vector<double> out;
  out.reserve(levels.size());
  for (const Probability& level : levels) {
    const double p = level.value();
    if (analytic_cdf(lo0).value() > p || analytic_cdf(hi0).value() < p)
      throw numeric_error(
          "horizontal_deviation_db: analytic cdf does not bracket the level");
    double lo = lo0, hi = hi0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (analytic_cdf(mid).value() < p)
        lo = mid;
      else
        hi = mid;
    }
    const double q_analytic = 0.5 * (lo + hi);
    const double q_empirical = empirical_quantile(ecdf, level);
    out.push_back(10.0 * std::log10(q_analytic / q_empirical));
  }
  return out;
}

double ks_distance(const std::function<Probability(double)>& analytic_cdf,
                   const EmpiricalCdf& ecdf) {
  const auto& v = ecdf.sorted_values();
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = analytic_cdf(v[i]).value();
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace lsnsum
