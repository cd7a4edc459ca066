#ifndef WEAVEQ_GHZ_ANALYTIC_HPP
#define WEAVEQ_GHZ_ANALYTIC_HPP

#include <cstdint>
#include <vector>

#include "weaveq/correlations.hpp"

namespace weaveq::ghz {

/// White-noise GHZ mixture (p/2^N) I + (1-p)|GHZ_N><GHZ_N| identified by its
/// parameters alone. No dense cap: every quantity below is evaluated in
/// closed form without materializing a matrix, stable up to N ~ 10^6.
///
/// All 2^k factors are kept in rewritten form (p - p*2^{1-k}, exp2(-k) via
/// ldexp) because 2^N is not representable for large N; underflow of 2^{-k}
/// to zero is harmless since every underflowing term multiplies a vanishing
/// weight.
struct GhzParams {
  std::int64_t n_sites = 2;
  double p = 0;
};

/// Throws DomainError unless N >= 2 and p in [0,1].
void validate(const GhzParams& params);

/// Entropy of the k-site reduced state, k = 0..N-1 (k = 0 gives 0).
/// Exactly one unit for k = 1 at every p.
double ghz_marginal_entropy(const GhzParams& params, std::int64_t k);

/// Entropy of the full N-site state. The near-pure regime is evaluated
/// through log1p so the small-p behaviour survives in double precision.
double ghz_global_entropy(const GhzParams& params);

/// Correlations above order k, k = 1..N (k = N gives exactly 0).
double ghz_above_k(const GhzParams& params, std::int64_t k);

/// Neural-complexity component C^(k) = (N/k) S(rho_k) - S(rho_N), k = 1..N-1.
double ghz_neural_component(const GhzParams& params, std::int64_t k);

/// Full correlation profile in O(N) time.
correlations::CorrelationProfile ghz_profile(const GhzParams& params);

/// sum_k Omega_k S^{k->N} with compensated accumulation.
double ghz_weaving(const GhzParams& params,
                   const correlations::WeightScheme& scheme);

/// sum_k (k/N) C^(k) with compensated accumulation.
double ghz_neural_complexity(const GhzParams& params);

struct GhzSweepRow {
  double p = 0;
  std::vector<double> weaving; // one value per requested scheme
  double neural_total = 0;
  std::vector<double> above_k;  // k = 1..N-1 when orders are requested
  std::vector<double> neural_k; // k = 1..N-1 when orders are requested
};

/// One row per grid point, in grid order. Grid values must lie in [0,1].
std::vector<GhzSweepRow> ghz_sweep(std::int64_t n_sites,
                                   const std::vector<double>& p_grid,
                                   const std::vector<correlations::WeightScheme>& schemes,
                                   bool include_orders);

} // namespace weaveq::ghz

#endif
