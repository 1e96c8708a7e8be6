// lsnsum — fit a log skew normal to a sum of correlated lognormals, compare
// it against Monte Carlo and a moment-matched lognormal, and evaluate cell
// outage probability under lognormal shadowing.
#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "lsnsum/commands.hpp"

namespace {

// Shared flags; each subcommand stores into the same options block.
void add_common_flags(CLI::App* cmd, lsnsum::CommandOptions* opt,
                      std::string* path) {
  cmd->add_option("scenario", *path, "scenario file")->required();
  cmd->add_option("--seed", opt->seed, "override the RNG seed");
  cmd->add_option("--samples", opt->samples, "override the MC sample count");
  cmd->add_option("--threads", opt->threads, "worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opt->out_path, "output file path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sum of correlated lognormals: log skew normal fit, Monte Carlo comparison, outage curves"};
  app.require_subcommand(1);

  lsnsum::CommandOptions opt;
  std::string path;
  std::vector<double> levels;

  CLI::App* fit = app.add_subcommand("fit", "print the fitted parameters as JSON");
  add_common_flags(fit, &opt, &path);
  fit->add_option("--levels", levels, "probability levels for reports")->delimiter(',');

  CLI::App* compare = app.add_subcommand(
      "compare", "CSV of simulated/fitted cdfs on a quantile grid plus a deviation report");
  add_common_flags(compare, &opt, &path);
  compare->add_option("--levels", levels, "probability levels for the deviation report")
      ->delimiter(',');

  CLI::App* simulate = app.add_subcommand("simulate", "CSV dump of the simulated ecdf");
  add_common_flags(simulate, &opt, &path);

  CLI::App* outage = app.add_subcommand("outage", "CSV outage curve per mobile placement");
  add_common_flags(outage, &opt, &path);
  outage->add_flag("--mc", opt.with_mc, "add a simulated outage column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lsnsum::kExitInput;
  }
  if (!levels.empty()) opt.levels = levels;

  if (fit->parsed()) return lsnsum::cmd_fit(path, opt, std::cout, std::cerr);
  if (compare->parsed()) return lsnsum::cmd_compare(path, opt, std::cout, std::cerr);
  if (simulate->parsed()) return lsnsum::cmd_simulate(path, opt, std::cout, std::cerr);
  return lsnsum::cmd_outage(path, opt, std::cout, std::cerr);
}
