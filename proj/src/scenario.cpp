#include "lsnsum/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>

#include "lsnsum/errors.hpp"

namespace lsnsum {

namespace {

struct KeyValue {
  std::string value;
  int line;
  bool used = false;
};

// Multimap because some keys (placement r_km) may repeat.
using KvFile = std::multimap<std::string, KeyValue>;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

KvFile read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open input file: " + path);
  KvFile kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw input_error(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw input_error(path + ":" + std::to_string(line_no) +
                        ": empty key or value");
    kv.emplace(key, KeyValue{value, line_no});
  }
  return kv;
}

[[noreturn]] void fail_field(const std::string& path, const KeyValue& kv,
                             const std::string& key, const std::string& why) {
  throw input_error(path + ":" + std::to_string(kv.line) + ": field '" + key +
                    "' " + why);
}

double parse_double(const std::string& path, const KeyValue& kv,
                    const std::string& key, const std::string& token) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    if (!std::isfinite(v)) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail_field(path, kv, key, "has a malformed number '" + token + "'");
  }
}

std::vector<std::string> split_any(const std::string& s, const char* seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::strchr(seps, c)) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

class KvReader {
 public:
  KvReader(std::string path, KvFile kv) : path_(std::move(path)), kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  KeyValue* find(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  double number(const std::string& key, std::optional<double> fallback = {}) {
    KeyValue* kv = find(key);
    if (!kv) {
      if (fallback) return *fallback;
      throw input_error(path_ + ": missing required field '" + key + "'");
    }
    return parse_double(path_, *kv, key, kv->value);
  }

  std::vector<double> number_list(const std::string& key) {
    KeyValue* kv = find(key);
    if (!kv) throw input_error(path_ + ": missing required field '" + key + "'");
    std::vector<double> out;
    for (const std::string& tok : split_any(kv->value, ", \t"))
      out.push_back(parse_double(path_, *kv, key, tok));
    if (out.empty()) fail_field(path_, *kv, key, "has no values");
    return out;
  }

  // All values bound to a repeated key, in file order.
  std::vector<double> repeated_numbers(const std::string& key) {
    std::vector<double> out;
    auto [b, e] = kv_.equal_range(key);
    for (auto it = b; it != e; ++it) {
      it->second.used = true;
      out.push_back(parse_double(path_, it->second, key, it->second.value));
    }
    return out;
  }

  Eigen::MatrixXd matrix(const std::string& key) {
    KeyValue* kv = find(key);
    if (!kv) throw input_error(path_ + ": missing required field '" + key + "'");
    std::vector<std::vector<double>> rows;
    for (const std::string& row : split_any(kv->value, ";")) {
      std::vector<double> r;
      for (const std::string& tok : split_any(row, ", \t"))
        r.push_back(parse_double(path_, *kv, key, tok));
      if (!r.empty()) rows.push_back(std::move(r));
    }
    if (rows.empty()) fail_field(path_, *kv, key, "has no rows");
    const std::size_t n = rows.size();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        fail_field(path_, *kv, key, "is not a square matrix");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  void reject_unknown() const {
    for (const auto& [key, kv] : kv_) {
      if (!kv.used)
        throw input_error(path_ + ":" + std::to_string(kv.line) +
                          ": unknown or duplicate field '" + key + "'");
    }
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  KvFile kv_;
};

std::uint64_t to_count(const std::string& path, const std::string& key, double v,
                       std::uint64_t min_value) {
  if (!(v >= static_cast<double>(min_value)) || v != std::floor(v) || v > 1e18)
    throw input_error(path + ": field '" + key + "' must be an integer >= " +
                      std::to_string(min_value));
  return static_cast<std::uint64_t>(v);
}

void read_sample_spec(KvReader& r, SampleSpec& mc) {
  if (r.has("samples"))
    mc.n_samples = to_count(r.path(), "samples", r.number("samples"), 1);
  if (r.has("seed"))
    mc.seed = to_count(r.path(), "seed", r.number("seed"), 0);
  if (r.has("streams"))
    mc.n_streams =
        static_cast<std::uint32_t>(to_count(r.path(), "streams", r.number("streams"), 1));
}

}  // namespace

SumModel Scenario::to_model() const {
  const Eigen::Index n = static_cast<Eigen::Index>(means_db.size());
  Eigen::VectorXd mu(n), sigma(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mu(i) = means_db[i] * kDbToNat;
    sigma(i) = sigmas_db[i] * kDbToNat;
  }
  if (correlation) return SumModel::with_correlation(mu, sigma, *correlation);
  return SumModel::equicorrelated(mu, sigma, rho.value_or(0.0));
}

Scenario parse_scenario_file(const std::string& path) {
  KvReader r(path, read_kv_file(path));
  Scenario sc;

  sc.means_db = r.number_list("means_db");
  sc.sigmas_db = r.number_list("sigmas_db");

  // Optional component count: scalars broadcast to it.
  if (r.has("n")) {
    const std::size_t n = to_count(path, "n", r.number("n"), 1);
    if (sc.means_db.size() == 1) sc.means_db.assign(n, sc.means_db[0]);
    if (sc.sigmas_db.size() == 1) sc.sigmas_db.assign(n, sc.sigmas_db[0]);
  }
  if (sc.sigmas_db.size() == 1 && sc.means_db.size() > 1)
    sc.sigmas_db.assign(sc.means_db.size(), sc.sigmas_db[0]);
  if (sc.means_db.size() == 1 && sc.sigmas_db.size() > 1)
    sc.means_db.assign(sc.sigmas_db.size(), sc.means_db[0]);
  if (sc.means_db.size() != sc.sigmas_db.size())
    throw input_error(path + ": 'means_db' and 'sigmas_db' lengths differ");
  const std::size_t n = sc.means_db.size();
  for (double s : sc.sigmas_db)
    if (!(s > 0.0))
      throw input_error(path + ": field 'sigmas_db' must be positive");

  const bool has_rho = r.has("rho");
  const bool has_corr = r.has("correlation");
  if (has_rho && has_corr)
    throw input_error(path + ": give either 'rho' or 'correlation', not both");
  if (has_rho) {
    const double rho = r.number("rho");
    if (n > 1 && (rho <= -1.0 / static_cast<double>(n - 1) || rho >= 1.0))
      throw input_error(path + ": field 'rho' outside (-1/(N-1), 1)");
    sc.rho = rho;
  } else if (has_corr) {
    Eigen::MatrixXd corr = r.matrix("correlation");
    if (static_cast<std::size_t>(corr.rows()) != n)
      throw input_error(path + ": field 'correlation' size does not match components");
    if ((corr - corr.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw input_error(path + ": field 'correlation' must be symmetric");
    for (Eigen::Index i = 0; i < corr.rows(); ++i)
      if (std::fabs(corr(i, i) - 1.0) > 1e-12)
        throw input_error(path + ": field 'correlation' must have unit diagonal");
    sc.correlation = std::move(corr);
  }

  read_sample_spec(r, sc.mc);
  if (r.has("levels")) {
    sc.levels.clear();
    for (double p : r.number_list("levels")) {
      if (!(p > 0.0 && p < 1.0))
        throw input_error(path + ": field 'levels' entries must lie in (0,1)");
      sc.levels.push_back(Probability(p));
    }
  }
  r.reject_unknown();

  // Validate the covariance eagerly so bad input fails with exit code 2.
  try {
    (void)sc.to_model();
  } catch (const std::exception& e) {
    throw input_error(path + ": invalid model: " + e.what());
  }
  return sc;
}

NetworkScenario parse_network_file(const std::string& path) {
  KvReader r(path, read_kv_file(path));
  NetworkScenario ns;

  ns.cfg.cell_range_km = r.number("cell_range_km", 1.0);
  ns.cfg.rings = static_cast<int>(to_count(path, "rings", r.number("rings", 18.0), 1));
  ns.cfg.path_loss_eta = r.number("eta");  // no default: every config must say
  ns.cfg.sigma_db = r.number("sigma_db");
  ns.cfg.shadowing_rho = r.number("rho", 0.0);

  const std::vector<double> r_km = r.repeated_numbers("r_km");
  const std::vector<double> r_over_rc = r.repeated_numbers("r_over_rc");
  if (r_km.empty() && r_over_rc.empty())
    throw input_error(path + ": need at least one 'r_km' or 'r_over_rc' placement");
  const double bearing = r.number("bearing_rad", 0.0);
  for (double v : r_km) ns.placements.push_back(MobilePlacement{v, bearing});
  for (double v : r_over_rc)
    ns.placements.push_back(MobilePlacement{v * ns.cfg.rc_km(), bearing});

  ns.delta_min_db = r.number("delta_min_db", -20.0);
  ns.delta_max_db = r.number("delta_max_db", 20.0);
  ns.delta_step_db = r.number("delta_step_db", 0.5);
  if (!(ns.delta_step_db > 0.0) || ns.delta_max_db < ns.delta_min_db)
    throw input_error(path + ": bad threshold grid (need step > 0, max >= min)");

  read_sample_spec(r, ns.mc);
  r.reject_unknown();

  try {
    ns.cfg.validate();
    for (const MobilePlacement& mob : ns.placements)
      if (!(mob.distance_km > 0.0))
        throw std::domain_error("placement distance must be > 0");
  } catch (const std::exception& e) {
    throw input_error(path + ": invalid network: " + e.what());
  }
  return ns;
}

std::vector<double> NetworkScenario::threshold_grid() const {
  std::vector<double> grid;
  const double n_steps = std::floor((delta_max_db - delta_min_db) / delta_step_db + 1e-9);
  for (int i = 0; i <= static_cast<int>(n_steps); ++i)
    grid.push_back(delta_min_db + i * delta_step_db);
  return grid;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace lsnsum
