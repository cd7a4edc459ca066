#include "weaveq/ghz_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "weaveq/config.hpp"
#include "weaveq/errors.hpp"
#include "kahan_sum.hpp"

namespace weaveq::ghz {

namespace {

double clamp_report(double x) {
  return (x < 0 && x > -config::kReportClampTol) ? 0.0 : x;
}

// 2^-k with the exponent saturated well past the subnormal range.
double exp2_neg(std::int64_t k) {
  const int e = k > 2000 ? 2000 : static_cast<int>(k);
  return std::ldexp(1.0, -e);
}

// Marginal entropy in log2 units. Eigenvalues of the k-site reduction are
// a = p/2^k + (1-p)/2 (twice) and p/2^k (2^k - 2 times); the degenerate tail
// contributes (p - p*2^{1-k}) * (k - log2 p).
double marginal_bits(double p, std::int64_t k) {
  if (k == 0) return 0.0;
  if (p == 0.0 || k == 1) return 1.0;
  if (p == 1.0) return static_cast<double>(k);
  const double a = 0.5 * (1.0 - p) + p * exp2_neg(k);
  double value = 0.0;
  if (a > 0.0) value -= 2.0 * a * std::log2(a);
  const double tail_mass = p - p * 2.0 * exp2_neg(k);
  value += tail_mass * (static_cast<double>(k) - std::log2(p));
  return value;
}

double global_bits(double p, std::int64_t n) {
  if (p == 0.0) return 0.0;
  if (p == 1.0) return static_cast<double>(n);
  const double pw = exp2_neg(n);
  const double bulk = (p - p * pw) * (static_cast<double>(n) - std::log2(p));
  const double x = -p + p * pw; // q - 1, q = 1 - (1 - 2^-N) p
  const double q = 1.0 + x;
  double top = 0.0;
  if (q > 0.0) top = -q * std::log1p(x) / std::numbers::ln2;
  return bulk + top;
}

double above_bits(double p, std::int64_t n, std::int64_t k, double s_k,
                  double s_rem, double s_n) {
  if (k == n) return 0.0;
  const auto whole = static_cast<double>(n / k);
  double value = whole * s_k - s_n;
  if (n % k != 0) value += s_rem;
  return value;
}

std::vector<double> marginal_table(double p, std::int64_t n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    s[static_cast<std::size_t>(k)] = marginal_bits(p, k);
  return s;
}

void check_k(std::int64_t k, std::int64_t lo, std::int64_t hi,
             const char* what) {
  if (k < lo || k > hi)
    throw DomainError(std::string(what) + ": k = " + std::to_string(k) +
                      " outside " + std::to_string(lo) + ".." +
                      std::to_string(hi));
}

} // namespace

void validate(const GhzParams& params) {
  if (params.n_sites < 2)
    throw DomainError("GhzParams: need at least 2 sites");
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw DomainError("GhzParams: p must lie in [0,1]");
}

double ghz_marginal_entropy(const GhzParams& params, std::int64_t k) {
  validate(params);
  check_k(k, 0, params.n_sites - 1, "ghz_marginal_entropy");
  return marginal_bits(params.p, k) * config::entropy_unit();
}

double ghz_global_entropy(const GhzParams& params) {
  validate(params);
  return global_bits(params.p, params.n_sites) * config::entropy_unit();
}

double ghz_above_k(const GhzParams& params, std::int64_t k) {
  validate(params);
  check_k(k, 1, params.n_sites, "ghz_above_k");
  if (k == params.n_sites) return 0.0;
  const double s_k = marginal_bits(params.p, k);
  const double s_rem = marginal_bits(params.p, params.n_sites % k);
  const double s_n = global_bits(params.p, params.n_sites);
  return clamp_report(above_bits(params.p, params.n_sites, k, s_k, s_rem, s_n) *
                      config::entropy_unit());
}

double ghz_neural_component(const GhzParams& params, std::int64_t k) {
  validate(params);
  check_k(k, 1, params.n_sites - 1, "ghz_neural_component");
  const double n = static_cast<double>(params.n_sites);
  const double s_k = marginal_bits(params.p, k);
  const double s_n = global_bits(params.p, params.n_sites);
  return (n * s_k - static_cast<double>(k) * s_n) / static_cast<double>(k) *
         config::entropy_unit();
}

correlations::CorrelationProfile ghz_profile(const GhzParams& params) {
  validate(params);
  const std::int64_t n = params.n_sites;
  const auto table = marginal_table(params.p, n);
  const double s_n = global_bits(params.p, n);
  const double unit = config::entropy_unit();

  correlations::CorrelationProfile profile;
  profile.n_sites = static_cast<int>(n);
  profile.mode = correlations::Mode::symmetric_formula;
  profile.above_k.resize(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    const double s_k = k < n ? table[static_cast<std::size_t>(k)] : s_n;
    profile.above_k[static_cast<std::size_t>(k - 1)] = clamp_report(
        above_bits(params.p, n, k, s_k, table[static_cast<std::size_t>(n % k)],
                   s_n) *
        unit);
  }
  profile.genuine.resize(static_cast<std::size_t>(n - 1));
  for (std::int64_t k = 2; k <= n; ++k)
    profile.genuine[static_cast<std::size_t>(k - 2)] =
        clamp_report(profile.above_k[static_cast<std::size_t>(k - 2)] -
                     profile.above_k[static_cast<std::size_t>(k - 1)]);
  return profile;
}

double ghz_weaving(const GhzParams& params,
                   const correlations::WeightScheme& scheme) {
  validate(params);
  const std::int64_t n = params.n_sites;
  if (scheme.n_sites() != n)
    throw DomainError("ghz_weaving: weight scheme length mismatch");
  const auto table = marginal_table(params.p, n);
  const double s_n = global_bits(params.p, n);
  detail::KahanSum sum;
  for (std::int64_t k = 1; k < n; ++k)
    sum.add(scheme.big_omega[static_cast<std::size_t>(k - 1)] *
            above_bits(params.p, n, k, table[static_cast<std::size_t>(k)],
                       table[static_cast<std::size_t>(n % k)], s_n));
  return clamp_report(sum.value() * config::entropy_unit());
}

double ghz_neural_complexity(const GhzParams& params) {
  validate(params);
  const std::int64_t n = params.n_sites;
  const auto table = marginal_table(params.p, n);
  const double s_n = global_bits(params.p, n);
  const double nd = static_cast<double>(n);
  detail::KahanSum sum;
  // (k/N) C^(k) accumulated as (N S_k - k S_N)/N: exact cancellation at the
  // white-noise point where S_k = k and S_N = N.
  for (std::int64_t k = 1; k < n; ++k)
    sum.add((nd * table[static_cast<std::size_t>(k)] -
             static_cast<double>(k) * s_n) /
            nd);
  return sum.value() * config::entropy_unit();
}

std::vector<GhzSweepRow> ghz_sweep(
    std::int64_t n_sites, const std::vector<double>& p_grid,
    const std::vector<correlations::WeightScheme>& schemes,
    bool include_orders) {
  for (const auto& scheme : schemes)
    if (scheme.n_sites() != n_sites)
      throw DomainError("ghz_sweep: weight scheme length mismatch");
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0))
      throw DomainError("ghz_sweep: grid value outside [0,1]");

  std::vector<GhzSweepRow> rows;
  rows.reserve(p_grid.size());
  const double unit = config::entropy_unit();
  for (double p : p_grid) {
    const GhzParams params{n_sites, p};
    validate(params);
    const auto table = marginal_table(p, n_sites);
    const double s_n = global_bits(p, n_sites);
    const double nd = static_cast<double>(n_sites);

    GhzSweepRow row;
    row.p = p;
    for (const auto& scheme : schemes) {
      detail::KahanSum sum;
      for (std::int64_t k = 1; k < n_sites; ++k)
        sum.add(scheme.big_omega[static_cast<std::size_t>(k - 1)] *
                above_bits(p, n_sites, k, table[static_cast<std::size_t>(k)],
                           table[static_cast<std::size_t>(n_sites % k)], s_n));
      row.weaving.push_back(clamp_report(sum.value() * unit));
    }
    detail::KahanSum complexity;
    for (std::int64_t k = 1; k < n_sites; ++k)
      complexity.add((nd * table[static_cast<std::size_t>(k)] -
                      static_cast<double>(k) * s_n) /
                     nd);
    row.neural_total = complexity.value() * unit;
    if (include_orders) {
      row.above_k.resize(static_cast<std::size_t>(n_sites - 1));
      row.neural_k.resize(static_cast<std::size_t>(n_sites - 1));
      for (std::int64_t k = 1; k < n_sites; ++k) {
        row.above_k[static_cast<std::size_t>(k - 1)] = clamp_report(
            above_bits(p, n_sites, k, table[static_cast<std::size_t>(k)],
                       table[static_cast<std::size_t>(n_sites % k)], s_n) *
            unit);
        row.neural_k[static_cast<std::size_t>(k - 1)] =
            (nd * table[static_cast<std::size_t>(k)] -
             static_cast<double>(k) * s_n) /
            static_cast<double>(k) * unit;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace weaveq::ghz
