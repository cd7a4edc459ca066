#ifndef WEAVEQ_QCORE_HPP
#define WEAVEQ_QCORE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "weaveq/errors.hpp"

namespace weaveq::qcore {

using Matrix = Eigen::MatrixXcd;

/// Dense density matrix on a tensor product of local sites.
///
/// Sites are labelled 1..N. Site 1 is the most significant tensor factor:
/// basis index of |x_1 x_2 ... x_N> is x_1*d_2*...*d_N + ... + x_N, matching
/// the row-major Kronecker product convention (tensor_product(a, b) puts a's
/// sites first). Every module in the library follows this ordering.
struct DensityMatrix {
  std::vector<int> local_dims; // dimension per site, site 1 first
  Matrix matrix;               // square, size prod(local_dims)

  int sites() const { return static_cast<int>(local_dims.size()); }
  std::int64_t dim() const;
};

/// Set of site labels, sorted and duplicate-free, 1-based.
struct SiteSubset {
  std::vector<int> indices;

  SiteSubset() = default;
  /// Sorts the labels; throws DomainError on duplicates or labels < 1.
  explicit SiteSubset(std::vector<int> labels);

  int size() const { return static_cast<int>(indices.size()); }
  bool contains(int site) const;
};

/// Kraus representation of a single-site CPTP channel.
struct KrausChannel {
  std::vector<Matrix> kraus_ops; // equal square dimension site_dim
  int site_dim = 0;
};

enum class ChannelKind { depolarizing, amplitude_damping, phase_damping };

struct StateDiagnostics {
  double hermiticity_defect = 0; // max |M - M^dagger|
  double trace_defect = 0;       // |tr M - 1|
  double min_eigenvalue = 0;
  bool pass = false;
};

// -- construction -----------------------------------------------------------

/// White-noise GHZ mixture on N qubits:
/// (p/2^N) I + (1-p) |GHZ_N><GHZ_N|, |GHZ_N> = (|0...0> + |1...1>)/sqrt(2).
DensityMatrix make_ghz_state(int n_sites, double p);

/// Pure N-qubit GHZ state (p = 0 mixture).
DensityMatrix make_pure_ghz(int n_sites);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// rho = G G^dagger / tr(G G^dagger) with G a dim x rank matrix of standard
/// complex normals drawn from a seed-keyed generator. Deterministic per seed
/// across platforms.
DensityMatrix random_density(const std::vector<int>& local_dims, int rank,
                             std::uint64_t seed);

/// Twirl of random_density over the full symmetric group: the average of
/// P rho P^dagger across all N! site permutations of an N-qubit random state.
DensityMatrix random_symmetric_density(int n_sites, std::uint64_t seed);

// -- structure operations ----------------------------------------------------

/// Reduced state on the kept sites, in their induced order.
DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSubset& keep);

/// Relabel sites: site j of the result is site perm[j-1] of the input.
DensityMatrix permute_sites(const DensityMatrix& rho,
                            const std::vector<int>& perm);

/// max |P rho P^dagger - rho| over all adjacent site transpositions P.
/// Returns +inf when the local dimensions are not uniform.
double permutation_asymmetry(const DensityMatrix& rho);

DensityMatrix apply_local_channel(const DensityMatrix& rho, int site,
                                  const KrausChannel& ch);

KrausChannel standard_channel(ChannelKind kind, double param);

// -- spectra and entropies ---------------------------------------------------

/// Ascending eigenvalues of the Hermitized matrix (M + M^dagger)/2.
Eigen::VectorXd eigenvalues(const Matrix& m);

/// -sum l log l over the spectrum in the configured unit; eigenvalues below
/// 1e-12 count as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho||sigma) = -S(rho) - tr(rho log sigma); +inf when rho has weight
/// outside sigma's support.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

StateDiagnostics validate_state(const DensityMatrix& rho);

/// Throws InvalidStateError when diagnostics fail.
void require_valid(const DensityMatrix& rho);

} // namespace weaveq::qcore

#endif
