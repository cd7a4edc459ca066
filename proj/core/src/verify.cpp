#include "weaveq/verify.hpp"

#include <cmath>

#include <json.hpp>

#include "weaveq/correlations.hpp"
#include "weaveq/errors.hpp"
#include "weaveq/ghz_analytic.hpp"
#include "weaveq/qcore.hpp"

namespace weaveq::verify {

namespace {

using correlations::Mode;

struct Tracker {
  MeasureDeviation dev;

  explicit Tracker(std::string name) { dev.measure = std::move(name); }

  void note(double analytic, double dense, int n, double p, int k = -1) {
    const double diff = std::abs(analytic - dense);
    if (diff > dev.worst) {
      dev.worst = diff;
      dev.n_sites = n;
      dev.p = p;
      dev.k = k;
    }
  }
};

} // namespace

OracleEquivalenceReport check_oracle_equivalence(
    const OracleEquivalenceOptions& options) {
  if (options.n_min < 2 || options.n_max < options.n_min ||
      options.p_steps < 1)
    throw DomainError("check_oracle_equivalence: bad options");

  Tracker marginal("S_marginal");
  Tracker global("S_global");
  Tracker above("S_above_k");
  Tracker component("C_k");
  Tracker w_uniform("W_uniform");
  Tracker w_linear("W_linear");
  Tracker complexity("C");
  const double scale = options.analytic_scale;

  for (int n = options.n_min; n <= options.n_max; ++n) {
    const auto uniform = correlations::make_weight_scheme(
        correlations::WeightKind::uniform, n);
    const auto linear =
        correlations::make_weight_scheme(correlations::WeightKind::linear, n);
    for (int step = 0; step < options.p_steps; ++step) {
      const double p = options.p_steps == 1
                           ? 0.0
                           : static_cast<double>(step) / (options.p_steps - 1);
      const ghz::GhzParams params{n, p};
      const auto rho = qcore::make_ghz_state(n, p);

      for (int k = 1; k < n; ++k) {
        std::vector<int> prefix(k);
        for (int s = 0; s < k; ++s) prefix[s] = s + 1;
        const double dense_sk = qcore::von_neumann_entropy(
            qcore::partial_trace(rho, qcore::SiteSubset(prefix)));
        marginal.note(scale * ghz::ghz_marginal_entropy(params, k), dense_sk,
                      n, p, k);
      }
      global.note(scale * ghz::ghz_global_entropy(params),
                  qcore::von_neumann_entropy(rho), n, p);

      const auto dense_profile =
          correlations::correlation_profile(rho, Mode::symmetric_formula);
      const auto analytic_profile = ghz::ghz_profile(params);
      for (int k = 1; k <= n; ++k)
        above.note(scale * analytic_profile.above(k), dense_profile.above(k),
                   n, p, k);

      const auto dense_components = correlations::neural_components(rho);
      for (int k = 1; k < n; ++k)
        component.note(scale * ghz::ghz_neural_component(params, k),
                       dense_components[k - 1], n, p, k);

      w_uniform.note(scale * ghz::ghz_weaving(params, uniform),
                     correlations::weaving(dense_profile, uniform), n, p);
      w_linear.note(scale * ghz::ghz_weaving(params, linear),
                    correlations::weaving(dense_profile, linear), n, p);
      complexity.note(scale * ghz::ghz_neural_complexity(params),
                      correlations::neural_complexity(rho), n, p);
    }
  }

  OracleEquivalenceReport report;
  for (const auto* t : {&marginal, &global, &above, &component, &w_uniform,
                        &w_linear, &complexity}) {
    report.deviations.push_back(t->dev);
    report.worst = std::max(report.worst, t->dev.worst);
  }
  report.pass = report.worst <= options.tolerance;
  return report;
}

std::string report_to_json(const OracleEquivalenceReport& report, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : report.deviations) {
    nlohmann::json entry{{"measure", d.measure},
                         {"worst", d.worst},
                         {"N", d.n_sites},
                         {"p", d.p}};
    if (d.k >= 0) entry["k"] = d.k;
    arr.push_back(std::move(entry));
  }
  nlohmann::json j{{"deviations", std::move(arr)},
                   {"worst", report.worst},
                   {"pass", report.pass}};
  return j.dump(indent);
}

} // namespace weaveq::verify
