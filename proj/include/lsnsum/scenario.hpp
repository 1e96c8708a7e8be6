#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsnsum/montecarlo.hpp"
#include "lsnsum/outage.hpp"
#include "lsnsum/sln_model.hpp"

namespace lsnsum {

// Sum scenario: a list of lognormal components (dB units) plus either a
// scalar correlation or a full correlation matrix, MC controls, and the
// probability levels reports are evaluated at.
struct Scenario {
  std::vector<double> means_db;
  std::vector<double> sigmas_db;
  std::optional<double> rho;                    // scalar equicorrelation
  std::optional<Eigen::MatrixXd> correlation;   // or a full matrix
  SampleSpec mc{1000000, 1, 1};
  std::vector<Probability> levels{0.01, 0.1, 0.5, 0.9, 0.99};

  SumModel to_model() const;
};

// Outage scenario: network + one or more mobile placements + threshold grid.
struct NetworkScenario {
  NetworkConfig cfg;
  std::vector<MobilePlacement> placements;
  double delta_min_db = -20.0;
  double delta_max_db = 20.0;
  double delta_step_db = 0.5;
  SampleSpec mc{1000000, 1, 1};

  std::vector<double> threshold_grid() const;
};

// Both files share one flat "key = value" line format ('#' comments). Values
// are doubles, comma/space-separated lists, or ';'-separated matrix rows.
// Throws input_error with a line diagnostic on malformed input.
Scenario parse_scenario_file(const std::string& path);
NetworkScenario parse_network_file(const std::string& path);

// %.17g, enough digits to reproduce the exact double on re-read.
std::string format_double(double v);

}  // namespace lsnsum
