// weaveq: multipartite-correlation measures for finite-dimensional quantum
// states. Subcommands:
//   ghz-curve      weaving + neural complexity of noisy GHZ states over a
//                  p grid (closed forms, no dense cap)
//   ghz-orders     per-order S^{k->N} and C^(k) columns over a p grid
//   dense-analyze  full correlation report for a state loaded from JSON
//   verify         randomized axiom battery + closed-form/dense cross-check
//
// Exit codes: 0 ok, 1 verification failure, 2 bad configuration,
// 3 I/O error, 4 invalid input state, 5 capacity cap exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weaveq/axioms.hpp"
#include "weaveq/config.hpp"
#include "weaveq/correlations.hpp"
#include "weaveq/errors.hpp"
#include "weaveq/ghz_analytic.hpp"
#include "weaveq/io.hpp"
#include "weaveq/qcore.hpp"
#include "weaveq/verify.hpp"

namespace {

namespace corr = weaveq::correlations;
namespace ghz = weaveq::ghz;
using nlohmann::json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvalidState = 4;
constexpr int kExitCapacity = 5;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// "start:stop:count", both ends included; count == 1 degenerates to start.
std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, stop = 0;
  long count = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count,
                  &tail) != 3)
    throw weaveq::DomainError("p-grid must be start:stop:count, got '" + spec +
                              "'");
  if (count < 1) throw weaveq::DomainError("p-grid count must be >= 1");
  if (!(start >= 0 && start <= stop && stop <= 1))
    throw weaveq::DomainError("p-grid must satisfy 0 <= start <= stop <= 1");
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) {
    if (i == 0)
      grid[i] = start;
    else if (i == count - 1)
      grid[i] = stop;
    else
      grid[i] = start + (stop - start) * static_cast<double>(i) /
                            static_cast<double>(count - 1);
  }
  return grid;
}

// All output goes through a stream chosen once, so stdout and --out paths
// produce identical bytes.
class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw weaveq::Error("cannot write " + path);
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw weaveq::Error("write failed");
    if (!file_.is_open() && !std::cout) throw weaveq::Error("write failed");
  }

private:
  std::ofstream file_;
};

struct CommonOptions {
  std::string log_base = "2";
  int dense_cap = 0; // 0: keep env/default
  std::string out;
  std::string format = "csv";

  void apply() const {
    if (log_base == "2")
      weaveq::config::set_log_base(weaveq::config::LogBase::bits);
    else if (log_base == "e")
      weaveq::config::set_log_base(weaveq::config::LogBase::nats);
    else
      throw weaveq::DomainError("--log-base must be 2 or e");
    if (dense_cap != 0) {
      if (dense_cap < 1 || dense_cap > 30)
        throw weaveq::DomainError("--dense-cap must lie in 1..30");
      weaveq::config::set_dense_cap(dense_cap);
    }
  }
};

void apply_env_dense_cap() {
  if (const char* env = std::getenv("WEAVEQ_DENSE_CAP")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap <= 30) weaveq::config::set_dense_cap(cap);
  }
}

int run_ghz_curve(long long n, const std::string& grid_spec,
                  const CommonOptions& common) {
  const auto grid = parse_grid(grid_spec);
  const std::vector<corr::WeightScheme> schemes = {
      corr::make_weight_scheme(corr::WeightKind::uniform, static_cast<int>(n)),
      corr::make_weight_scheme(corr::WeightKind::linear, static_cast<int>(n))};
  const auto rows = ghz::ghz_sweep(n, grid, schemes, false);

  OutputTarget target(common.out);
  auto& os = target.stream();
  if (common.format == "json") {
    json jrows = json::array();
    for (const auto& row : rows)
      jrows.push_back({{"p", row.p},
                       {"W_uniform", row.weaving[0]},
                       {"W_linear", row.weaving[1]},
                       {"C", row.neural_total}});
    os << json{{"N", n}, {"log_base", common.log_base}, {"rows", jrows}}.dump(1)
       << '\n';
  } else {
    os << "p,W_uniform,W_linear,C\n";
    for (const auto& row : rows)
      os << fmt12(row.p) << ',' << fmt12(row.weaving[0]) << ','
         << fmt12(row.weaving[1]) << ',' << fmt12(row.neural_total) << '\n';
  }
  target.finish();
  return 0;
}

int run_ghz_orders(long long n, const std::string& grid_spec,
                   const CommonOptions& common) {
  const auto grid = parse_grid(grid_spec);
  const auto rows = ghz::ghz_sweep(n, grid, {}, true);

  OutputTarget target(common.out);
  auto& os = target.stream();
  if (common.format == "json") {
    json jrows = json::array();
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.above_k.size(); ++i)
        jrows.push_back({{"p", row.p},
                         {"k", i + 1},
                         {"S_above_k", row.above_k[i]},
                         {"C_k", row.neural_k[i]}});
    os << json{{"N", n}, {"log_base", common.log_base}, {"rows", jrows}}.dump(1)
       << '\n';
  } else {
    os << "p,k,S_above_k,C_k\n";
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.above_k.size(); ++i)
        os << fmt12(row.p) << ',' << (i + 1) << ',' << fmt12(row.above_k[i])
           << ',' << fmt12(row.neural_k[i]) << '\n';
  }
  target.finish();
  return 0;
}

int run_dense_analyze(const std::string& state_path, const std::string& mode_str,
                      const std::string& weights_spec,
                      const CommonOptions& common) {
  std::optional<weaveq::qcore::DensityMatrix> rho;
  try {
    rho = weaveq::io::load_state_file(state_path);
  } catch (const weaveq::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const weaveq::Error& e) {
    std::cerr << "error: invalid state file: " << e.what() << '\n';
    const std::ifstream probe(state_path);
    return probe.good() ? kExitInvalidState : kExitIo;
  }

  const corr::Mode mode = mode_str == "symmetric"
                              ? corr::Mode::symmetric_formula
                              : corr::Mode::exact_minimization;
  const int n = rho->sites();
  const double asymmetry = weaveq::qcore::permutation_asymmetry(*rho);

  corr::CorrelationProfile profile;
  try {
    profile = corr::correlation_profile(*rho, mode);
  } catch (const weaveq::SymmetryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const weaveq::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  }

  json weaving_obj;
  weaving_obj["uniform"] = corr::weaving(
      profile, corr::make_weight_scheme(corr::WeightKind::uniform, n));
  weaving_obj["linear"] = corr::weaving(
      profile, corr::make_weight_scheme(corr::WeightKind::linear, n));
  if (!weights_spec.empty() && weights_spec.rfind("custom:", 0) == 0) {
    const auto values =
        weaveq::io::load_weight_values_file(weights_spec.substr(7));
    weaving_obj["custom"] = corr::weaving(
        profile,
        corr::make_weight_scheme(corr::WeightKind::custom, n, values));
  }

  const auto components = corr::neural_components(*rho);
  json report{
      {"file", state_path},
      {"N", n},
      {"log_base", common.log_base},
      {"mode", corr::to_string(mode)},
      {"symmetry",
       {{"max_asymmetry", asymmetry},
        {"permutation_invariant",
         asymmetry <= weaveq::config::kSymmetryTol}}},
      {"profile", json::parse(weaveq::io::profile_to_json(profile))},
      {"weaving", std::move(weaving_obj)},
      {"neural",
       {{"components", components},
        {"total", corr::neural_complexity(*rho)}}}};

  OutputTarget target(common.out);
  target.stream() << report.dump(1) << '\n';
  target.finish();
  return 0;
}

int run_verify(std::uint64_t seed, int trials, double oracle_scale,
               int oracle_max_n, const CommonOptions& common) {
  const auto battery = weaveq::axioms::run_axiom_battery(seed, trials);

  weaveq::verify::OracleEquivalenceOptions opts;
  opts.analytic_scale = oracle_scale;
  opts.n_max = oracle_max_n;
  const auto oracle = weaveq::verify::check_oracle_equivalence(opts);

  bool failed = !oracle.pass;
  std::printf("oracle equivalence (N=%d..%d): worst |delta| = %.3e  [%s]\n",
              opts.n_min, opts.n_max, oracle.worst,
              oracle.pass ? "PASS" : "FAIL");
  for (const auto& d : oracle.deviations)
    std::printf("  %-10s worst %.3e at N=%d p=%.2f%s\n", d.measure.c_str(),
                d.worst, d.n_sites, d.p,
                d.k >= 0 ? (" k=" + std::to_string(d.k)).c_str() : "");

  std::vector<std::string> witness_paths;
  for (const auto& report : battery) {
    const bool counted = !report.informational;
    if (counted && !report.pass) failed = true;
    std::printf("%-30s trials %-4d worst slack %+.3e  [%s]%s\n",
                report.axiom.c_str(), report.trials, report.worst_violation,
                report.pass ? "PASS" : "FAIL",
                report.informational ? " (informational)" : "");
    if (counted && !report.pass && !report.witness_json.empty()) {
      const std::string path = "weaveq-witness-" + report.axiom + ".json";
      std::ofstream out(path, std::ios::binary);
      out << report.witness_json << '\n';
      if (out) witness_paths.push_back(path);
    }
  }
  for (const auto& path : witness_paths)
    std::printf("witness written: %s\n", path.c_str());

  if (!common.out.empty()) {
    OutputTarget target(common.out);
    json full{{"oracle_equivalence",
               json::parse(weaveq::verify::report_to_json(oracle))},
              {"battery",
               json::parse(weaveq::axioms::battery_to_json(battery))}};
    target.stream() << full.dump(1) << '\n';
    target.finish();
  }
  return failed ? kExitVerifyFailure : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"multipartite correlations, weaving and neural complexity"};
  app.require_subcommand(1);

  CommonOptions common;
  long long n_sites = 0;
  std::string grid_spec = "0:1:101";
  std::string weights_spec;
  std::string mode_str;
  std::string state_path;
  std::uint64_t seed = 1;
  int trials = 50;
  double oracle_scale = 1.0;
  int oracle_max_n = 8;

  const auto add_common = [&](CLI::App* cmd, bool csv_default) {
    cmd->add_option("--log-base", common.log_base, "entropy unit: 2 or e")
        ->check(CLI::IsMember({"2", "e"}));
    cmd->add_option("--dense-cap", common.dense_cap,
                    "dense dimension cap override (qubit count)");
    cmd->add_option("--out", common.out, "output path (default stdout)");
    if (csv_default)
      cmd->add_option("--format", common.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* curve = app.add_subcommand(
      "ghz-curve", "weaving and neural complexity of noisy GHZ states");
  curve->add_option("--n", n_sites, "number of qubits")->required();
  curve->add_option("--p-grid", grid_spec, "mixing grid start:stop:count");
  add_common(curve, true);

  auto* orders = app.add_subcommand(
      "ghz-orders", "per-order correlations and neural components");
  orders->add_option("--n", n_sites, "number of qubits")->required();
  orders->add_option("--p-grid", grid_spec, "mixing grid start:stop:count");
  add_common(orders, true);

  auto* analyze = app.add_subcommand(
      "dense-analyze", "correlation report for a JSON state file");
  analyze->add_option("state_file", state_path, "state JSON file")->required();
  analyze->add_option("--mode", mode_str, "symmetric or exact")
      ->required()
      ->check(CLI::IsMember({"symmetric", "exact"}));
  analyze->add_option("--weights", weights_spec,
                      "extra scheme: custom:<file> (uniform and linear are "
                      "always reported)");
  add_common(analyze, false);

  auto* verify = app.add_subcommand(
      "verify", "axiom battery and closed-form/dense cross-check");
  verify->add_option("--seed", seed, "battery seed");
  verify->add_option("--trials", trials, "trials per axiom")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--oracle-scale", oracle_scale)->group("");
  verify->add_option("--oracle-max-n", oracle_max_n)->group("");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  apply_env_dense_cap();
  try {
    common.apply();
    if (curve->parsed()) return run_ghz_curve(n_sites, grid_spec, common);
    if (orders->parsed()) return run_ghz_orders(n_sites, grid_spec, common);
    if (analyze->parsed())
      return run_dense_analyze(state_path, mode_str, weights_spec, common);
    if (verify->parsed())
      return run_verify(seed, trials, oracle_scale, oracle_max_n, common);
  } catch (const weaveq::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const weaveq::InvalidStateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidState;
  } catch (const weaveq::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const weaveq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitConfig;
}
