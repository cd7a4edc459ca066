#include "weaveq/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "weaveq/config.hpp"

namespace weaveq::qcore {

namespace {

using cd = std::complex<double>;

std::int64_t product(const std::vector<int>& dims) {
  std::int64_t d = 1;
  for (int x : dims) d *= x;
  return d;
}

void check_capacity(std::int64_t dim, const char* what) {
  const std::int64_t cap = std::int64_t{1} << config::dense_cap();
  if (dim > cap)
    throw CapacityError(std::string(what) + ": dimension " +
                        std::to_string(dim) + " exceeds dense cap 2^" +
                        std::to_string(config::dense_cap()));
}

// Global strides for the site-1-most-significant index convention.
std::vector<std::int64_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::int64_t> s(dims.size());
  std::int64_t acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

// Deterministic standard normals: Box-Muller over mt19937_64, whose output
// sequence is fully specified by the standard (std::normal_distribution is
// not portable across library implementations).
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = unit_open();
    const double u2 = unit_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  double unit_open() {
    // (0,1): 53 high bits shifted into the mantissa, offset by half an ulp
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  double spare_ = 0;
  bool have_spare_ = false;
};

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_shape(const DensityMatrix& rho, const char* what) {
  if (rho.matrix.rows() != rho.matrix.cols())
    throw DomainError(std::string(what) + ": matrix is not square");
  if (rho.local_dims.empty())
    throw DomainError(std::string(what) + ": no sites");
  for (int d : rho.local_dims)
    if (d < 1) throw DomainError(std::string(what) + ": local dim < 1");
  if (product(rho.local_dims) != rho.matrix.rows())
    throw DomainError(std::string(what) +
                      ": local_dims product does not match matrix size");
}

// -sum l log2 l with sub-tolerance eigenvalues treated as exact zeros,
// in the configured unit.
double entropy_of_spectrum(const Eigen::VectorXd& eigs) {
  double s = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double l = eigs[i];
    if (l >= config::kEigClampTol) s -= l * std::log2(l);
  }
  if (s < 0 && s > -config::kReportClampTol) s = 0;
  return s * config::entropy_unit();
}

} // namespace

std::int64_t DensityMatrix::dim() const { return product(local_dims); }

SiteSubset::SiteSubset(std::vector<int> labels) : indices(std::move(labels)) {
  if (indices.empty()) throw DomainError("SiteSubset: empty site set");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw DomainError("SiteSubset: duplicate site label");
  if (indices.front() < 1) throw DomainError("SiteSubset: labels are 1-based");
}

bool SiteSubset::contains(int site) const {
  return std::binary_search(indices.begin(), indices.end(), site);
}

DensityMatrix make_ghz_state(int n_sites, double p) {
  if (n_sites < 2) throw DomainError("make_ghz_state: need at least 2 sites");
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("make_ghz_state: p must lie in [0,1]");
  if (n_sites > config::dense_cap())
    throw CapacityError("make_ghz_state: " + std::to_string(n_sites) +
                        " qubits exceeds dense cap " +
                        std::to_string(config::dense_cap()));
  const std::int64_t dim = std::int64_t{1} << n_sites;
  DensityMatrix rho;
  rho.local_dims.assign(n_sites, 2);
  rho.matrix = Matrix::Identity(dim, dim) * cd(p / static_cast<double>(dim), 0);
  const double half = 0.5 * (1.0 - p);
  rho.matrix(0, 0) += half;
  rho.matrix(0, dim - 1) += half;
  rho.matrix(dim - 1, 0) += half;
  rho.matrix(dim - 1, dim - 1) += half;
  return rho;
}

DensityMatrix make_pure_ghz(int n_sites) { return make_ghz_state(n_sites, 0.0); }

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  check_shape(a, "tensor_product");
  check_shape(b, "tensor_product");
  const std::int64_t da = a.dim(), db = b.dim();
  check_capacity(da * db, "tensor_product");
  DensityMatrix out;
  out.local_dims = a.local_dims;
  out.local_dims.insert(out.local_dims.end(), b.local_dims.begin(),
                        b.local_dims.end());
  out.matrix.resize(da * db, da * db);
  for (std::int64_t i = 0; i < da; ++i)
    for (std::int64_t j = 0; j < da; ++j)
      out.matrix.block(i * db, j * db, db, db) = a.matrix(i, j) * b.matrix;
  return out;
}

DensityMatrix random_density(const std::vector<int>& local_dims, int rank,
                             std::uint64_t seed) {
  if (rank < 1) throw DomainError("random_density: rank must be >= 1");
  if (local_dims.empty()) throw DomainError("random_density: no sites");
  for (int d : local_dims)
    if (d < 1) throw DomainError("random_density: local dim < 1");
  const std::int64_t dim = product(local_dims);
  check_capacity(dim, "random_density");

  GaussianSource gauss(seed);
  Matrix g(dim, rank);
  for (std::int64_t i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) {
      const double re = gauss();
      const double im = gauss();
      g(i, j) = cd(re, im);
    }
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix{local_dims, std::move(m)};
}

DensityMatrix random_symmetric_density(int n_sites, std::uint64_t seed) {
  if (n_sites < 1) throw DomainError("random_symmetric_density: need sites");
  check_capacity(std::int64_t{1} << n_sites, "random_symmetric_density");
  const std::vector<int> dims(n_sites, 2);
  const DensityMatrix base =
      random_density(dims, static_cast<int>(std::int64_t{1} << n_sites), seed);

  std::vector<int> perm(n_sites);
  std::iota(perm.begin(), perm.end(), 1);
  Matrix acc = Matrix::Zero(base.dim(), base.dim());
  std::int64_t count = 0;
  do {
    acc += permute_sites(base, perm).matrix;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc /= static_cast<double>(count);
  return DensityMatrix{dims, std::move(acc)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSubset& keep) {
  check_shape(rho, "partial_trace");
  const int n = rho.sites();
  if (keep.indices.empty()) throw DomainError("partial_trace: empty keep set");
  if (keep.indices.back() > n)
    throw DomainError("partial_trace: site label out of range");

  std::vector<int> traced;
  for (int s = 1; s <= n; ++s)
    if (!keep.contains(s)) traced.push_back(s);

  const auto strides = strides_of(rho.local_dims);

  // Enumerate the global-index offsets generated by each index group.
  auto offsets_of = [&](const std::vector<int>& sites) {
    std::vector<std::int64_t> offs{0};
    for (int s : sites) {
      const int d = rho.local_dims[s - 1];
      std::vector<std::int64_t> next;
      next.reserve(offs.size() * d);
      for (std::int64_t base : offs)
        for (int x = 0; x < d; ++x) next.push_back(base + x * strides[s - 1]);
      offs = std::move(next);
    }
    return offs;
  };
  const auto kept_off = offsets_of(keep.indices);
  const auto traced_off = offsets_of(traced);

  const auto dk = static_cast<std::int64_t>(kept_off.size());
  DensityMatrix out;
  out.local_dims.reserve(keep.indices.size());
  for (int s : keep.indices) out.local_dims.push_back(rho.local_dims[s - 1]);
  out.matrix = Matrix::Zero(dk, dk);
  for (std::int64_t r = 0; r < dk; ++r)
    for (std::int64_t c = 0; c < dk; ++c) {
      cd acc(0, 0);
      for (std::int64_t t : traced_off)
        acc += rho.matrix(kept_off[r] + t, kept_off[c] + t);
      out.matrix(r, c) = acc;
    }
  return out;
}

DensityMatrix permute_sites(const DensityMatrix& rho,
                            const std::vector<int>& perm) {
  check_shape(rho, "permute_sites");
  const int n = rho.sites();
  if (static_cast<int>(perm.size()) != n)
    throw DomainError("permute_sites: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[p - 1])
      throw DomainError("permute_sites: not a permutation of 1..N");
    seen[p - 1] = true;
  }

  DensityMatrix out;
  out.local_dims.resize(n);
  for (int j = 0; j < n; ++j) out.local_dims[j] = rho.local_dims[perm[j] - 1];

  const auto in_strides = strides_of(rho.local_dims);
  const std::int64_t dim = rho.dim();

  // idx_map[g'] = input index whose digits are the output digits rearranged.
  std::vector<std::int64_t> idx_map(dim);
  const auto out_strides = strides_of(out.local_dims);
  for (std::int64_t g = 0; g < dim; ++g) {
    std::int64_t src = 0;
    for (int j = 0; j < n; ++j) {
      const auto digit = (g / out_strides[j]) % out.local_dims[j];
      src += digit * in_strides[perm[j] - 1];
    }
    idx_map[g] = src;
  }

  out.matrix.resize(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c)
      out.matrix(r, c) = rho.matrix(idx_map[r], idx_map[c]);
  return out;
}

double permutation_asymmetry(const DensityMatrix& rho) {
  check_shape(rho, "permutation_asymmetry");
  const int n = rho.sites();
  if (n == 1) return 0.0;
  for (int d : rho.local_dims)
    if (d != rho.local_dims.front())
      return std::numeric_limits<double>::infinity();

  std::vector<int> perm(n);
  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    std::iota(perm.begin(), perm.end(), 1);
    std::swap(perm[i - 1], perm[i]);
    worst = std::max(worst, max_abs(permute_sites(rho, perm).matrix - rho.matrix));
  }
  return worst;
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, int site,
                                  const KrausChannel& ch) {
  check_shape(rho, "apply_local_channel");
  const int n = rho.sites();
  if (site < 1 || site > n)
    throw DomainError("apply_local_channel: site out of range");
  const int ds = rho.local_dims[site - 1];
  if (ch.site_dim != ds || ch.kraus_ops.empty())
    throw DomainError("apply_local_channel: channel dimension mismatch");
  for (const auto& k : ch.kraus_ops)
    if (k.rows() != ds || k.cols() != ds)
      throw DomainError("apply_local_channel: Kraus operator shape mismatch");

  std::int64_t left = 1, right = 1;
  for (int s = 1; s < site; ++s) left *= rho.local_dims[s - 1];
  for (int s = site + 1; s <= n; ++s) right *= rho.local_dims[s - 1];
  const std::int64_t dim = rho.dim();
  const auto row_of = [&](std::int64_t l, int s, std::int64_t r) {
    return (l * ds + s) * right + r;
  };

  Matrix out = Matrix::Zero(dim, dim);
  Matrix tmp(dim, dim);
  for (const auto& k : ch.kraus_ops) {
    tmp.setZero();
    // tmp = (I (x) K (x) I) rho
    for (std::int64_t l = 0; l < left; ++l)
      for (int s = 0; s < ds; ++s)
        for (int t = 0; t < ds; ++t) {
          const cd kv = k(s, t);
          if (kv == cd(0, 0)) continue;
          for (std::int64_t r = 0; r < right; ++r)
            tmp.row(row_of(l, s, r)) += kv * rho.matrix.row(row_of(l, t, r));
        }
    // out += tmp (I (x) K (x) I)^dagger
    for (std::int64_t l = 0; l < left; ++l)
      for (int s = 0; s < ds; ++s)
        for (int t = 0; t < ds; ++t) {
          const cd kv = std::conj(k(s, t));
          if (kv == cd(0, 0)) continue;
          for (std::int64_t r = 0; r < right; ++r)
            out.col(row_of(l, s, r)) += kv * tmp.col(row_of(l, t, r));
        }
  }
  return DensityMatrix{rho.local_dims, std::move(out)};
}

KrausChannel standard_channel(ChannelKind kind, double param) {
  if (!(param >= 0.0 && param <= 1.0))
    throw DomainError("standard_channel: parameter must lie in [0,1]");
  Matrix id = Matrix::Identity(2, 2);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
  z << 1, 0, 0, -1;

  KrausChannel ch;
  ch.site_dim = 2;
  switch (kind) {
    case ChannelKind::depolarizing: {
      const double l = param;
      ch.kraus_ops = {std::sqrt(1.0 - 0.75 * l) * id, std::sqrt(0.25 * l) * x,
                      std::sqrt(0.25 * l) * y, std::sqrt(0.25 * l) * z};
      break;
    }
    case ChannelKind::amplitude_damping: {
      Matrix k0(2, 2), k1(2, 2);
      k0 << 1, 0, 0, std::sqrt(1.0 - param);
      k1 << 0, std::sqrt(param), 0, 0;
      ch.kraus_ops = {k0, k1};
      break;
    }
    case ChannelKind::phase_damping: {
      Matrix k0(2, 2), k1(2, 2);
      k0 << 1, 0, 0, std::sqrt(1.0 - param);
      k1 << 0, 0, 0, std::sqrt(param);
      ch.kraus_ops = {k0, k1};
      break;
    }
  }
  return ch;
}

Eigen::VectorXd eigenvalues(const Matrix& m) {
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  check_shape(rho, "von_neumann_entropy");
  const double defect = max_abs(rho.matrix - rho.matrix.adjoint());
  if (defect > config::kValidationTol)
    throw DomainError("von_neumann_entropy: matrix is not Hermitian (defect " +
                      std::to_string(defect) + ")");
  return entropy_of_spectrum(eigenvalues(rho.matrix));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_shape(rho, "relative_entropy");
  check_shape(sigma, "relative_entropy");
  if (rho.dim() != sigma.dim())
    throw DomainError("relative_entropy: dimension mismatch");

  const Matrix herm = 0.5 * (sigma.matrix + sigma.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  const auto& eig = solver.eigenvalues();
  const auto& vec = solver.eigenvectors();

  double cross = 0; // tr(rho log2 sigma)
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const double w =
        (vec.col(i).adjoint() * rho.matrix * vec.col(i)).value().real();
    if (eig[i] < config::kEigClampTol) {
      if (w > config::kSupportWeightTol)
        return std::numeric_limits<double>::infinity();
    } else {
      cross += w * std::log2(eig[i]);
    }
  }
  const double s_rho =
      entropy_of_spectrum(eigenvalues(rho.matrix)) / config::entropy_unit();
  return (-s_rho - cross) * config::entropy_unit();
}

StateDiagnostics validate_state(const DensityMatrix& rho) {
  check_shape(rho, "validate_state");
  StateDiagnostics d;
  d.hermiticity_defect = max_abs(rho.matrix - rho.matrix.adjoint());
  d.trace_defect = std::abs(rho.matrix.trace() - cd(1, 0));
  d.min_eigenvalue = eigenvalues(rho.matrix).minCoeff();
  d.pass = d.hermiticity_defect <= config::kValidationTol &&
           d.trace_defect <= config::kValidationTol &&
           d.min_eigenvalue >= -config::kValidationTol;
  return d;
}

void require_valid(const DensityMatrix& rho) {
  const auto d = validate_state(rho);
  if (!d.pass)
    throw InvalidStateError(
        "state validation failed: hermiticity defect " +
        std::to_string(d.hermiticity_defect) + ", trace defect " +
        std::to_string(d.trace_defect) + ", min eigenvalue " +
        std::to_string(d.min_eigenvalue));
}

} // namespace weaveq::qcore
