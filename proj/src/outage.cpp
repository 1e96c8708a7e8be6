#include "lsnsum/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lsnsum/errors.hpp"

namespace lsnsum {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

struct SinrGeometry {
  double serving_mu;            // -eta ln r
  std::vector<double> mu;       // -eta ln r_j per interferer
  std::vector<double> gain;     // r_j^-eta
  double step_delta_db;         // 10 log10(r^-eta / sum r_j^-eta)
};

SinrGeometry sinr_geometry(const NetworkConfig& cfg, const MobilePlacement& mob) {
  cfg.validate();
  if (!(mob.distance_km > 0.0))
    throw std::domain_error("MobilePlacement: distance_km must be > 0");
  const std::vector<Site> sites = build_hex_network(cfg);
  const double ux = mob.distance_km * std::cos(mob.bearing_rad);
  const double uy = mob.distance_km * std::sin(mob.bearing_rad);
  SinrGeometry g;
  g.mu.reserve(sites.size());
  g.gain.reserve(sites.size());
  double gain_sum = 0.0;
  for (const Site& s : sites) {
    const double r = std::hypot(s.x_km - ux, s.y_km - uy);
    if (!(r > 0.0))
      throw std::domain_error("interference geometry: mobile on top of a BS");
    g.mu.push_back(-cfg.path_loss_eta * std::log(r));
    g.gain.push_back(std::pow(r, -cfg.path_loss_eta));
    gain_sum += g.gain.back();
  }
  g.serving_mu = -cfg.path_loss_eta * std::log(mob.distance_km);
  g.step_delta_db = (g.serving_mu - std::log(gain_sum)) / kDbToNat;
  return g;
}

}  // namespace

double NetworkConfig::rc_km() const { return 0.5 * kSqrt3 * cell_range_km; }

void NetworkConfig::validate() const {
  if (!(cell_range_km > 0.0))
    throw std::domain_error("NetworkConfig: cell_range_km must be > 0");
  if (rings < 1) throw std::domain_error("NetworkConfig: rings must be >= 1");
  if (!(path_loss_eta > 2.0))
    throw std::domain_error("NetworkConfig: path_loss_eta must be > 2");
  if (!(sigma_db >= 0.0))
    throw std::domain_error("NetworkConfig: sigma_db must be >= 0");
  if (!(shadowing_rho >= 0.0 && shadowing_rho < 1.0))
    throw std::domain_error("NetworkConfig: shadowing_rho must be in [0,1)");
}

std::vector<Site> build_hex_network(const NetworkConfig& cfg) {
  cfg.validate();
  // Triangular lattice a*u + b*v, u = 2Rc(1,0), v = 2Rc(1/2, sqrt(3)/2);
  // hex ring index of (a,b) is (|a| + |b| + |a+b|)/2.
  const double spacing = 2.0 * cfg.rc_km();
  std::vector<Site> sites;
  sites.reserve(static_cast<std::size_t>(3 * cfg.rings * (cfg.rings + 1)));
  for (int a = -cfg.rings; a <= cfg.rings; ++a) {
    for (int b = -cfg.rings; b <= cfg.rings; ++b) {
      const int ring = (std::abs(a) + std::abs(b) + std::abs(a + b)) / 2;
      if (ring < 1 || ring > cfg.rings) continue;
      sites.push_back(Site{spacing * (a + 0.5 * b), spacing * (0.5 * kSqrt3 * b)});
    }
  }
  return sites;
}

SumModel interference_model(const NetworkConfig& cfg, const MobilePlacement& mob) {
  if (!(cfg.sigma_db > 0.0))
    throw std::domain_error(
        "interference_model: sigma_db must be > 0 (no shadowing means a "
        "deterministic sum)");
  const SinrGeometry g = sinr_geometry(cfg, mob);
  const Eigen::Index m = static_cast<Eigen::Index>(g.mu.size());
  Eigen::VectorXd mu(m), sigma(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    mu(j) = g.mu[j];
    sigma(j) = cfg.sigma_db * kDbToNat;
  }
  return SumModel::equicorrelated(mu, sigma, cfg.shadowing_rho);
}

OutageModel::OutageModel(const NetworkConfig& cfg, const MobilePlacement& mob) {
  const SinrGeometry g = sinr_geometry(cfg, mob);
  step_delta_db_ = g.step_delta_db;
  if (cfg.sigma_db == 0.0) return;  // deterministic SINR, nothing to fit

  fit_ = fit_lsn(interference_model(cfg, mob));
  const double s = cfg.sigma_db * kDbToNat;
  // ln SINR = serving - interference; negate the fitted SN and add the
  // independent serving normal. The shape flips sign, the scales add.
  difference_ = sn_add_independent_normal(sn_negate(fit_->params),
                                          g.serving_mu, s);
}

Probability OutageModel::probability(double delta_db) const {
  if (!difference_)
    return Probability(step_delta_db_ < delta_db ? 1.0 : 0.0);
  return sn_cdf(delta_db * kDbToNat, *difference_);
}

const SkewNormalParams& OutageModel::difference_params() const {
  if (!difference_)
    throw std::logic_error("OutageModel: no distribution when sigma_db = 0");
  return *difference_;
}

const FitResult& OutageModel::interference_fit() const {
  if (!fit_)
    throw std::logic_error("OutageModel: no fit when sigma_db = 0");
  return *fit_;
}

Probability outage_probability(const NetworkConfig& cfg,
                               const MobilePlacement& mob, double delta_db) {
  return OutageModel(cfg, mob).probability(delta_db);
}

EmpiricalCdf simulate_sinr_db(const NetworkConfig& cfg,
                              const MobilePlacement& mob,
                              const SampleSpec& spec, int threads) {
  if (spec.n_samples < 1)
    throw std::domain_error("simulate_sinr_db: n_samples >= 1");
  const SinrGeometry g = sinr_geometry(cfg, mob);
  const std::size_t m = g.mu.size();
  const double s = cfg.sigma_db * kDbToNat;
  const double rho = cfg.shadowing_rho;
  // Equicorrelated shadowing as one common factor plus i.i.d. parts:
  // X_j = mu_j + s*(sqrt(rho) Z_common + sqrt(1-rho) Z_j). O(M) per sample.
  const double w_common = std::sqrt(rho);
  const double w_own = std::sqrt(1.0 - rho);
  // Fixed stride regardless of rho: slot 0 serving, 1..M interferers,
  // M+1 common factor.
  const std::uint64_t stride = m + 2;

  std::vector<double> out(spec.n_samples);
  auto body = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t k0 = i * stride;
      const double serving =
          g.serving_mu + s * CounterRng::normal_at(spec.seed, k0);
      const double z_common =
          rho > 0.0 ? CounterRng::normal_at(spec.seed, k0 + 1 + m) : 0.0;
      double interference = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double z =
            w_common * z_common +
            w_own * CounterRng::normal_at(spec.seed, k0 + 1 + j);
        interference += g.gain[j] * std::exp(s * z);
      }
      out[i] = (serving - std::log(interference)) / kDbToNat;
    }
  };

  if (cfg.sigma_db == 0.0) {
    std::fill(out.begin(), out.end(), g.step_delta_db);
  } else {
    if (threads < 1) threads = 1;
    if (threads == 1) {
      body(0, spec.n_samples);
    } else {
      std::vector<std::thread> workers;
      const std::uint64_t chunk = (spec.n_samples + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        const std::uint64_t b = chunk * t;
        const std::uint64_t e = std::min<std::uint64_t>(spec.n_samples, b + chunk);
        if (b >= e) break;
        workers.emplace_back(body, b, e);
      }
      for (auto& w : workers) w.join();
    }
  }
  return EmpiricalCdf::from_unsorted(std::move(out));
}

Probability outage_probability_mc(const NetworkConfig& cfg,
                                  const MobilePlacement& mob, double delta_db,
                                  const SampleSpec& spec, int threads) {
  if (cfg.sigma_db == 0.0) {
    cfg.validate();
    const SinrGeometry g = sinr_geometry(cfg, mob);
    return Probability(g.step_delta_db < delta_db ? 1.0 : 0.0);
  }
  const EmpiricalCdf sinr = simulate_sinr_db(cfg, mob, spec, threads);
  // strict "<": step just below delta
  const auto& v = sinr.sorted_values();
  const auto it = std::lower_bound(v.begin(), v.end(), delta_db);
  return Probability(static_cast<double>(it - v.begin()) /
                     static_cast<double>(v.size()));
}

OutageCurve outage_curve(const NetworkConfig& cfg, const MobilePlacement& mob,
                         const std::vector<double>& thresholds_db,
                         const std::optional<SampleSpec>& mc, int threads) {
  OutageCurve curve;
  curve.thresholds_db = thresholds_db;
  std::sort(curve.thresholds_db.begin(), curve.thresholds_db.end());
  const OutageModel model(cfg, mob);
  curve.analytic_p.reserve(curve.thresholds_db.size());
  for (double d : curve.thresholds_db) curve.analytic_p.push_back(model.probability(d));
  if (mc) {
    const EmpiricalCdf sinr = simulate_sinr_db(cfg, mob, *mc, threads);
    const auto& v = sinr.sorted_values();
    curve.mc_p.reserve(curve.thresholds_db.size());
    for (double d : curve.thresholds_db) {
      const auto it = std::lower_bound(v.begin(), v.end(), d);
      curve.mc_p.push_back(Probability(static_cast<double>(it - v.begin()) /
                                       static_cast<double>(v.size())));
    }
  }
  return curve;
}

}  // namespace lsnsum
