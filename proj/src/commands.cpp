#include "lsnsum/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <set>

#include "lsnsum/errors.hpp"
#include "lsnsum/lsn_fit.hpp"
#include "lsnsum/scenario.hpp"

namespace lsnsum {

namespace {

using nlohmann::json;

int run_guarded(std::ostream& errors, const std::function<int()>& body) {
  try {
    return body();
  } catch (const input_error& e) {
    errors << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const io_error& e) {
    errors << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    errors << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

void apply_overrides(const CommandOptions& opt, SampleSpec& mc,
                     std::vector<Probability>* levels) {
  if (opt.seed) mc.seed = *opt.seed;
  if (opt.samples) {
    if (*opt.samples < 1) throw input_error("--samples must be >= 1");
    mc.n_samples = *opt.samples;
  }
  if (opt.levels && levels) {
    levels->clear();
    for (double p : *opt.levels) {
      if (!(p > 0.0 && p < 1.0))
        throw input_error("--levels entries must lie in (0,1)");
      levels->push_back(Probability(p));
    }
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw io_error("cannot open output file: " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw io_error("failed writing output file: " + path);
}

std::string report_path_for(const std::string& csv_path) {
  const std::size_t dot = csv_path.find_last_of('.');
  const std::size_t slash = csv_path.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash);
  return (has_ext ? csv_path.substr(0, dot) : csv_path) + ".report.json";
}

std::string indexed_path(const std::string& path, std::size_t index,
                         std::size_t total) {
  if (total <= 1) return path;
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash);
  const std::string suffix = "." + std::to_string(index);
  return has_ext ? path.substr(0, dot) + suffix + path.substr(dot)
                 : path + suffix;
}

json fit_record(const FitResult& fr) {
  json j;
  j["lambda"] = fr.params.lambda;
  j["epsilon_nat"] = fr.params.epsilon_nat;
  j["epsilon_db"] = fr.params.epsilon_nat / kDbToNat;
  j["omega_nat"] = fr.params.omega_nat;
  j["omega_db"] = fr.params.omega_nat / kDbToNat;
  j["lambda0"] = fr.lambda0;
  j["residual"] = fr.residual;
  j["iterations"] = fr.iterations;
  j["sum_b_tilde"] = fr.diagnostics.sum_b_tilde;
  j["left_slope"] = fr.diagnostics.left_slope;
  j["right_slope"] = fr.diagnostics.right_slope;
  j["n_reduced"] = fr.diagnostics.n_tilde;
  j["assumption_ok"] = fr.diagnostics.assumption_ok;
  return j;
}

// Probability levels for the comparison grid: 400 evenly spaced interior
// levels plus the requested ones, restricted to what the ecdf can resolve.
std::vector<double> grid_levels(const std::vector<Probability>& requested,
                                std::size_t n_samples) {
  std::set<double> levels;
  for (int k = 1; k <= 400; ++k) levels.insert(k / 401.0);
  for (const Probability& p : requested) levels.insert(p.value());
  const double n = static_cast<double>(n_samples);
  std::vector<double> out;
  for (double p : levels)
    if (p >= 1.0 / n && p <= 1.0 - 1.0 / n) out.push_back(p);
  return out;
}

std::string pscale_field(double p) {
  if (p <= 0.0 || p >= 1.0) return "nan";  // dropped on probability scale
  return format_double(std_normal_quantile(Probability(p)));
}

}  // namespace

int cmd_fit(const std::string& scenario_path, const CommandOptions& opt,
            std::ostream& console, std::ostream& errors) {
  return run_guarded(errors, [&] {
    Scenario sc = parse_scenario_file(scenario_path);
    apply_overrides(opt, sc.mc, &sc.levels);
    const FitResult fr = fit_lsn(sc.to_model());
    const std::string text = fit_record(fr).dump(2) + "\n";
    console << text;
    if (!opt.out_path.empty()) {
      std::ofstream out = open_output(opt.out_path);
      out << text;
      finish_output(out, opt.out_path);
    }
    return kExitOk;
  });
}

int cmd_compare(const std::string& scenario_path, const CommandOptions& opt,
                std::ostream& console, std::ostream& errors) {
  return run_guarded(errors, [&] {
    if (opt.out_path.empty()) throw input_error("compare requires --out <csv>");
    Scenario sc = parse_scenario_file(scenario_path);
    apply_overrides(opt, sc.mc, &sc.levels);

    const SumModel model = sc.to_model();
    const FitResult fr = fit_lsn(model);
    const LognormalComponent fw = fit_fenton_wilkinson(model);
    const EmpiricalCdf ecdf = sample_sln(model, sc.mc, opt.threads);

    std::ofstream out = open_output(opt.out_path);
    out << "x_db,cdf_mc,cdf_lsn,cdf_fw,pscale_mc,pscale_lsn,pscale_fw\n";
    for (double p : grid_levels(sc.levels, ecdf.n())) {
      const double x = empirical_quantile(ecdf, Probability(p));
      const double cdf_mc = empirical_cdf_at(ecdf, x).value();
      const double cdf_lsn = lsn_cdf(x, fr.params).value();
      const double cdf_fw = lognormal_cdf(x, fw).value();
      out << format_double(std::log(x) / kDbToNat) << ','
          << format_double(cdf_mc) << ',' << format_double(cdf_lsn) << ','
          << format_double(cdf_fw) << ',' << pscale_field(cdf_mc) << ','
          << pscale_field(cdf_lsn) << ',' << pscale_field(cdf_fw) << '\n';
    }
    finish_output(out, opt.out_path);

    auto lsn_fn = [&fr](double x) { return lsn_cdf(x, fr.params); };
    auto fw_fn = [&fw](double x) { return lognormal_cdf(x, fw); };
    json report;
    report["scenario"] = scenario_path;
    report["samples"] = sc.mc.n_samples;
    report["seed"] = sc.mc.seed;
    std::vector<double> level_values;
    for (const Probability& p : sc.levels) level_values.push_back(p.value());
    report["levels"] = level_values;
    report["deviation_db_lsn"] = horizontal_deviation_db(lsn_fn, ecdf, sc.levels);
    report["deviation_db_fw"] = horizontal_deviation_db(fw_fn, ecdf, sc.levels);
    report["fit"] = fit_record(fr);
    const std::string rpath = report_path_for(opt.out_path);
    std::ofstream rep = open_output(rpath);
    rep << report.dump(2) << "\n";
    finish_output(rep, rpath);

    console << "wrote " << opt.out_path << " and " << rpath << '\n';
    return kExitOk;
  });
}

int cmd_simulate(const std::string& scenario_path, const CommandOptions& opt,
                 std::ostream& console, std::ostream& errors) {
  return run_guarded(errors, [&] {
    if (opt.out_path.empty()) throw input_error("simulate requires --out <csv>");
    Scenario sc = parse_scenario_file(scenario_path);
    apply_overrides(opt, sc.mc, nullptr);
    const EmpiricalCdf ecdf = sample_sln(sc.to_model(), sc.mc, opt.threads);

    std::ofstream out = open_output(opt.out_path);
    out << "x_db,cdf\n";
    const double n = static_cast<double>(ecdf.n());
    for (std::size_t i = 0; i < ecdf.n(); ++i) {
      out << format_double(std::log(ecdf.sorted_values()[i]) / kDbToNat) << ','
          << format_double(static_cast<double>(i + 1) / n) << '\n';
    }
    finish_output(out, opt.out_path);
    console << "wrote " << opt.out_path << " (" << ecdf.n() << " samples)\n";
    return kExitOk;
  });
}

int cmd_outage(const std::string& network_path, const CommandOptions& opt,
               std::ostream& console, std::ostream& errors) {
  return run_guarded(errors, [&] {
    if (opt.out_path.empty()) throw input_error("outage requires --out <csv>");
    NetworkScenario ns = parse_network_file(network_path);
    apply_overrides(opt, ns.mc, nullptr);
    const std::vector<double> grid = ns.threshold_grid();

    for (std::size_t pi = 0; pi < ns.placements.size(); ++pi) {
      const std::optional<SampleSpec> mc =
          opt.with_mc ? std::optional<SampleSpec>(ns.mc) : std::nullopt;
      const OutageCurve curve =
          outage_curve(ns.cfg, ns.placements[pi], grid, mc, opt.threads);
      const std::string path = indexed_path(opt.out_path, pi, ns.placements.size());
      std::ofstream out = open_output(path);
      out << (opt.with_mc ? "delta_db,p_analytic,p_mc\n" : "delta_db,p_analytic\n");
      for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i) {
        out << format_double(curve.thresholds_db[i]) << ','
            << format_double(curve.analytic_p[i].value());
        if (opt.with_mc) out << ',' << format_double(curve.mc_p[i].value());
        out << '\n';
      }
      finish_output(out, path);
      console << "wrote " << path << " (r = " << ns.placements[pi].distance_km
              << " km)\n";
    }
    return kExitOk;
  });
}

}  // namespace lsnsum
