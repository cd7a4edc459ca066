#ifndef WEAVEQ_CONFIG_HPP
#define WEAVEQ_CONFIG_HPP

namespace weaveq::config {

/// Unit for every entropy and correlation value produced by the library.
enum class LogBase { bits, nats };

LogBase log_base();
void set_log_base(LogBase base);

/// Multiplier taking an internally computed log2 quantity to the configured
/// unit: 1 for bits, ln 2 for nats.
double entropy_unit();

/// Largest qubit-equivalent site count for dense-matrix construction
/// (total dimension capped at 2^dense_cap). Default 12.
int dense_cap();
void set_dense_cap(int cap);

/// Exact set-partition minimization is hard-capped at this many sites
/// (Bell-number enumeration cost). Not configurable.
inline constexpr int kExactMinimizationCap = 10;

/// Tolerances shared across modules.
inline constexpr double kValidationTol = 1e-10;   // Hermiticity/trace/PSD
inline constexpr double kEigClampTol = 1e-12;     // eigenvalues treated as 0
inline constexpr double kSupportWeightTol = 1e-10;// rho-weight making S(rho||sigma) infinite
inline constexpr double kSymmetryTol = 1e-8;      // permutation-invariance gate
inline constexpr double kReportClampTol = 1e-9;   // rounding negatives clamped to 0

} // namespace weaveq::config

#endif
