#ifndef WEAVEQ_IO_HPP
#define WEAVEQ_IO_HPP

#include <string>
#include <vector>

#include "weaveq/correlations.hpp"
#include "weaveq/qcore.hpp"

namespace weaveq::io {

/// State file schema:
///   { "local_dims": [d1,...,dN],
///     "matrix": [[[re,im], ...], ...] }   // row-major, square
/// Parsing applies full state validation (Hermiticity, trace, positivity)
/// and the dense capacity cap.
qcore::DensityMatrix parse_state_json(const std::string& text);
qcore::DensityMatrix load_state_file(const std::string& path);

/// indent < 0 emits compact JSON.
std::string state_to_json(const qcore::DensityMatrix& rho, int indent = -1);
void save_state_file(const qcore::DensityMatrix& rho, const std::string& path);

/// { "N": n, "mode": "...", "above_k": [...], "genuine": [...] }
std::string profile_to_json(const correlations::CorrelationProfile& profile,
                            int indent = -1);

/// Custom weight file: JSON array of N-1 nonnegative Omega values.
std::vector<double> parse_weight_values_json(const std::string& text);
std::vector<double> load_weight_values_file(const std::string& path);

} // namespace weaveq::io

#endif
