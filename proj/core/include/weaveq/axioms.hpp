#ifndef WEAVEQ_AXIOMS_HPP
#define WEAVEQ_AXIOMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "weaveq/correlations.hpp"
#include "weaveq/qcore.hpp"

namespace weaveq::axioms {

using correlations::SetPartition;
using correlations::WeightScheme;
using qcore::DensityMatrix;
using qcore::KrausChannel;

/// Slack above which an inequality counts as violated. Sits above
/// eigensolver noise and below any genuine effect.
inline constexpr double kViolationTol = 1e-8;

/// Outcome of a monotonicity check over one or more sampled instances.
/// worst_violation is the largest signed slack seen (positive = inequality
/// broken by that much); witness_json holds the inputs reproducing it.
struct AxiomReport {
  std::string axiom;
  int trials = 0;
  double worst_violation = 0;
  bool pass = true;
  bool informational = false; // never gates a battery verdict
  std::string witness_json;
};

std::string report_to_json(const AxiomReport& report, int indent = -1);
std::string battery_to_json(const std::vector<AxiomReport>& reports,
                            int indent = -1);

enum class ContractMeasure { above_k, weaving, neural };

// Single-instance checks (trials = 1). All correlation quantities are
// evaluated in exact-minimization mode.

/// Appending a disjoint subsystem sigma must not raise correlations above
/// order k (k >= sigma's site count).
AxiomReport check_disjoint_append(const DensityMatrix& rho,
                                  const DensityMatrix& sigma, int k);

/// Single-site channels, one per site, must not raise the chosen measure.
/// The neural measure is recorded as informational: it carries no
/// contractivity guarantee.
AxiomReport check_local_contractivity(const DensityMatrix& rho,
                                      const std::vector<KrausChannel>& channels,
                                      ContractMeasure measure,
                                      const WeightScheme* scheme = nullptr);

/// Discarding n_traced sites must not raise correlations above order
/// k < N - n_traced, whichever sites are kept.
AxiomReport check_partial_trace_monotonicity(const DensityMatrix& rho,
                                             int n_traced, int k);

/// Total correlations dominate the block-wise totals of any partition.
AxiomReport check_superadditivity(const DensityMatrix& rho,
                                  const SetPartition& partition);

/// Deterministic randomized battery: every check above plus a correlation-
/// profile consistency sweep, `trials` instances each, seeded sampling.
std::vector<AxiomReport> run_axiom_battery(std::uint64_t seed, int trials);

/// Re-evaluates a witness produced by any check; returns the violation it
/// reproduces.
double replay_witness(const std::string& witness_json);

} // namespace weaveq::axioms

#endif
