#pragma once

#include <optional>
#include <vector>

#include "lsnsum/lsn_fit.hpp"
#include "lsnsum/montecarlo.hpp"

namespace lsnsum {

// Hexagonal-network downlink parameters. Distances in km, shadowing in dB.
struct NetworkConfig {
  double cell_range_km = 1.0;  // R; BS spacing is 2*Rc with Rc = sqrt(3)/2 * R
  int rings = 18;
  double path_loss_eta = 3.0;  // > 2
  double sigma_db = 3.0;       // >= 0 per link
  double shadowing_rho = 0.0;  // pairwise correlation across interferer links

  double rc_km() const;
  void validate() const;
};

// Mobile position relative to the serving BS at the origin. bearing = 0
// points at the nearest interfering BS.
struct MobilePlacement {
  double distance_km = 0.0;  // > 0
  double bearing_rad = 0.0;
};

struct Site {
  double x_km;
  double y_km;
};

// Interfering BS positions on the triangular lattice, rings 1..cfg.rings;
// ring k holds 6k sites, so M = 3*rings*(rings+1).
std::vector<Site> build_hex_network(const NetworkConfig& cfg);

// Interference power sum as a correlated lognormal model: component j has
// mu_j = -eta * ln(r_j), sigma = xi * sigma_db, equicorrelation rho.
// Requires sigma_db > 0 (sigma_db = 0 has no lognormal model).
SumModel interference_model(const NetworkConfig& cfg, const MobilePlacement& mob);

// Analytic outage machinery, built once per (config, placement): fit the
// interference sum, then close signal-minus-interference into a skew normal.
class OutageModel {
 public:
  OutageModel(const NetworkConfig& cfg, const MobilePlacement& mob);

  // P(SINR_dB < delta_db).
  Probability probability(double delta_db) const;

  bool deterministic() const { return !difference_; }
  // Step threshold 10*log10(r^-eta / sum r_j^-eta); the whole curve when
  // sigma_db = 0, and the SINR median shift otherwise.
  double step_delta_db() const { return step_delta_db_; }
  const SkewNormalParams& difference_params() const;
  const FitResult& interference_fit() const;

 private:
  double step_delta_db_;
  std::optional<FitResult> fit_;
  std::optional<SkewNormalParams> difference_;  // SN of ln SINR
};

Probability outage_probability(const NetworkConfig& cfg,
                               const MobilePlacement& mob, double delta_db);

// Direct simulation of the SINR: fraction of samples with SINR_dB < delta_db.
Probability outage_probability_mc(const NetworkConfig& cfg,
                                  const MobilePlacement& mob, double delta_db,
                                  const SampleSpec& spec, int threads = 1);

// Ecdf of simulated SINR in dB (one draw layout shared with
// outage_probability_mc; sigma_db = 0 collapses to a point mass).
EmpiricalCdf simulate_sinr_db(const NetworkConfig& cfg,
                              const MobilePlacement& mob,
                              const SampleSpec& spec, int threads = 1);

struct OutageCurve {
  std::vector<double> thresholds_db;
  std::vector<Probability> analytic_p;
  std::vector<Probability> mc_p;  // empty unless simulation requested
};

OutageCurve outage_curve(const NetworkConfig& cfg, const MobilePlacement& mob,
                         const std::vector<double>& thresholds_db,
                         const std::optional<SampleSpec>& mc = std::nullopt,
                         int threads = 1);

}  // namespace lsnsum
