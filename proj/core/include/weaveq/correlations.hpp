#ifndef WEAVEQ_CORRELATIONS_HPP
#define WEAVEQ_CORRELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "weaveq/partitions.hpp"
#include "weaveq/qcore.hpp"

namespace weaveq::correlations {

using qcore::DensityMatrix;

/// How correlations-above-k is evaluated.
///
/// symmetric_formula: floor(N/k) S(rho_k) + S(rho_{N mod k}) - S(rho_N) with
/// leading-site marginals; only valid for permutation-invariant states and
/// gated on the measured asymmetry.
///
/// exact_minimization: minimum of sum_i S(rho_{block_i}) - S(rho_N) over every
/// set partition with blocks of at most k sites; works for any state but
/// enumeration is Bell-number sized (hard cap at 10 sites).
enum class Mode { symmetric_formula, exact_minimization };

std::string to_string(Mode mode);

/// Per-state table of correlations above order k and the genuine order-k
/// increments, in the configured unit.
struct CorrelationProfile {
  int n_sites = 0;
  Mode mode = Mode::exact_minimization;
  std::vector<double> above_k; // above_k[k-1] = S^{k->N}, k = 1..N
  std::vector<double> genuine; // genuine[k-2] = S^k,      k = 2..N

  double above(int k) const { return above_k.at(k - 1); }
  double genuine_k(int k) const { return genuine.at(k - 2); }
};

/// Order weights for weaving: big_omega[k-1] = Omega_k >= 0 for k = 1..N-1,
/// and the cumulative small_omega[k-2] = omega_k = sum_{i<k} Omega_i for
/// k = 2..N.
struct WeightScheme {
  std::vector<double> big_omega;
  std::vector<double> small_omega;

  int n_sites() const { return static_cast<int>(big_omega.size()) + 1; }
};

enum class WeightKind { uniform, linear, custom };

/// uniform: Omega_k = 1; linear: Omega_k = k/N; custom: values as given
/// (must be nonnegative, length N-1).
WeightScheme make_weight_scheme(WeightKind kind, int n_sites,
                                const std::vector<double>& custom_values = {});

// -- measures ----------------------------------------------------------------

/// Total correlations sum_i S(rho_[i]) - S(rho_N).
double multi_information(const DensityMatrix& rho);

/// Mean of multi_information over the reduced states of all C(N,k) site
/// clusters of size k; 0 for k = 1.
double cluster_multiinfo_average(const DensityMatrix& rho, int k);

/// Correlations of order higher than k.
double correlations_above_k(const DensityMatrix& rho, int k, Mode mode);

/// Same, also reporting a minimizing partition (exact mode only): the first
/// minimizer in restricted-growth-string order, i.e. the lexicographically
/// smallest witness.
struct MinimizationResult {
  double value = 0;
  SetPartition witness;
};
MinimizationResult correlations_above_k_witness(const DensityMatrix& rho, int k);

double genuine_k_correlations(const CorrelationProfile& profile, int k);

CorrelationProfile correlation_profile(const DensityMatrix& rho, Mode mode);

/// Weighted sum of correlations: sum_k Omega_k S^{k->N}, cross-checked
/// against the equivalent sum_k omega_k S^k form.
double weaving(const CorrelationProfile& profile, const WeightScheme& scheme);

/// C^(k) = S^{1->N}(rho) - (N/k) <S^{1->k}(rho_k)>.
double neural_component(const DensityMatrix& rho, int k);

/// All components C^(1)..C^(N-1), sharing one marginal-entropy cache.
std::vector<double> neural_components(const DensityMatrix& rho);

/// C = sum_{k=1}^{N-1} (k/N) C^(k).
double neural_complexity(const DensityMatrix& rho);

} // namespace weaveq::correlations

#endif
