#ifndef WEAVEQ_VERIFY_HPP
#define WEAVEQ_VERIFY_HPP

#include <string>
#include <vector>

namespace weaveq::verify {

struct OracleEquivalenceOptions {
  int n_min = 2;
  int n_max = 8;
  int p_steps = 11; // p = 0, 0.1, ..., 1.0
  double tolerance = 1e-8;
  // Multiplies every closed-form output before comparison. 1.0 in normal
  // operation; tests set it != 1 to prove the check catches a broken engine.
  double analytic_scale = 1.0;
};

struct MeasureDeviation {
  std::string measure;
  double worst = 0;
  int n_sites = 0;
  double p = 0;
  int k = -1; // -1 when the measure carries no order index
};

struct OracleEquivalenceReport {
  std::vector<MeasureDeviation> deviations; // one entry per measure
  double worst = 0;
  bool pass = true;
};

/// Compares every closed-form GHZ quantity against the dense-matrix pipeline
/// (construction, partial trace, eigendecomposition, partition formulas)
/// over a grid of system sizes and mixing parameters: marginal and global
/// entropies, correlations above each order, neural components, both paper
/// weight schemes, and the total neural complexity.
OracleEquivalenceReport check_oracle_equivalence(
    const OracleEquivalenceOptions& options = {});

std::string report_to_json(const OracleEquivalenceReport& report,
                           int indent = -1);

} // namespace weaveq::verify

#endif
