#include "weaveq/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "weaveq/config.hpp"
#include "kahan_sum.hpp"

namespace weaveq::correlations {

namespace {

double clamp_report(double x) {
  return (x < 0 && x > -config::kReportClampTol) ? 0.0 : x;
}

// Lazily computed entropies of subset marginals, keyed by site bitmask
// (bit i-1 <-> site i). Shared across the k-loop of a profile so each
// marginal is diagonalized once.
class MarginalCache {
public:
  explicit MarginalCache(const DensityMatrix& rho) : rho_(rho) {}

  double subset_entropy(std::uint32_t mask) {
    const auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    double value;
    if (mask == full_mask()) {
      value = qcore::von_neumann_entropy(rho_);
    } else {
      std::vector<int> sites;
      for (int s = 1; s <= rho_.sites(); ++s)
        if (mask & (std::uint32_t{1} << (s - 1))) sites.push_back(s);
      value = qcore::von_neumann_entropy(
          qcore::partial_trace(rho_, qcore::SiteSubset(std::move(sites))));
    }
    cache_.emplace(mask, value);
    return value;
  }

  double full_entropy() { return subset_entropy(full_mask()); }

  double site_entropy(int site) {
    return subset_entropy(std::uint32_t{1} << (site - 1));
  }

  // Marginal of the leading sites {1..k}.
  double prefix_entropy(int k) {
    return subset_entropy((std::uint32_t{1} << k) - 1);
  }

  const DensityMatrix& state() const { return rho_; }

private:
  std::uint32_t full_mask() const {
    return (std::uint32_t{1} << rho_.sites()) - 1;
  }

  const DensityMatrix& rho_;
  std::unordered_map<std::uint32_t, double> cache_;
};

std::uint32_t mask_of(const qcore::SiteSubset& subset) {
  std::uint32_t m = 0;
  for (int s : subset.indices) m |= std::uint32_t{1} << (s - 1);
  return m;
}

double multi_information_impl(MarginalCache& cache) {
  const int n = cache.state().sites();
  double sum = 0;
  for (int s = 1; s <= n; ++s) sum += cache.site_entropy(s);
  return clamp_report(sum - cache.full_entropy());
}

double cluster_average_impl(MarginalCache& cache, int k) {
  const int n = cache.state().sites();
  if (k == 1) return 0.0;
  detail::KahanSum sum;
  std::int64_t count = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double site_sum = 0;
    for (int s = 1; s <= n; ++s)
      if (mask & (std::uint32_t{1} << (s - 1))) site_sum += cache.site_entropy(s);
    sum.add(site_sum - cache.subset_entropy(mask));
    ++count;
  }
  return sum.value() / static_cast<double>(count);
}

void require_symmetric(const DensityMatrix& rho) {
  const double asym = qcore::permutation_asymmetry(rho);
  if (!(asym <= config::kSymmetryTol))
    throw SymmetryError("symmetric formula requires a permutation-invariant "
                        "state; measured asymmetry " +
                            std::to_string(asym),
                        asym);
}

double above_k_symmetric(MarginalCache& cache, int k) {
  const int n = cache.state().sites();
  const int whole = n / k;
  const int rem = n % k;
  double value = whole * cache.prefix_entropy(k) - cache.full_entropy();
  if (rem != 0) value += cache.prefix_entropy(rem);
  return clamp_report(value);
}

double above_k_exact(MarginalCache& cache, int k, SetPartition* witness) {
  const int n = cache.state().sites();
  if (n > config::kExactMinimizationCap)
    throw CapacityError("exact minimization capped at " +
                        std::to_string(config::kExactMinimizationCap) +
                        " sites, got " + std::to_string(n));
  const double s_full = cache.full_entropy();
  double best = std::numeric_limits<double>::infinity();
  for_each_set_partition(n, k, [&](const SetPartition& p) {
    double sum = 0;
    for (const auto& b : p.blocks) sum += cache.subset_entropy(mask_of(b));
    const double value = sum - s_full;
    if (value < best) {
      best = value;
      if (witness) *witness = p;
    }
    return true;
  });
  return clamp_report(best);
}

double above_k_impl(MarginalCache& cache, int k, Mode mode) {
  const int n = cache.state().sites();
  if (k < 1 || k > n)
    throw DomainError("correlations_above_k: k must lie in 1..N");
  if (k == n) return 0.0;
  if (mode == Mode::symmetric_formula) return above_k_symmetric(cache, k);
  return above_k_exact(cache, k, nullptr);
}

CorrelationProfile profile_impl(MarginalCache& cache, Mode mode) {
  const int n = cache.state().sites();
  if (mode == Mode::symmetric_formula) require_symmetric(cache.state());
  CorrelationProfile profile;
  profile.n_sites = n;
  profile.mode = mode;
  profile.above_k.resize(n);
  for (int k = 1; k <= n; ++k) profile.above_k[k - 1] = above_k_impl(cache, k, mode);
  profile.genuine.resize(n - 1);
  for (int k = 2; k <= n; ++k)
    profile.genuine[k - 2] =
        clamp_report(profile.above_k[k - 2] - profile.above_k[k - 1]);
  return profile;
}

} // namespace

std::string to_string(Mode mode) {
  return mode == Mode::symmetric_formula ? "symmetric-formula"
                                         : "exact-minimization";
}

WeightScheme make_weight_scheme(WeightKind kind, int n_sites,
                                const std::vector<double>& custom_values) {
  if (n_sites < 2) throw DomainError("make_weight_scheme: need N >= 2");
  WeightScheme scheme;
  scheme.big_omega.resize(n_sites - 1);
  switch (kind) {
    case WeightKind::uniform:
      std::fill(scheme.big_omega.begin(), scheme.big_omega.end(), 1.0);
      break;
    case WeightKind::linear:
      for (int k = 1; k < n_sites; ++k)
        scheme.big_omega[k - 1] = static_cast<double>(k) / n_sites;
      break;
    case WeightKind::custom:
      if (static_cast<int>(custom_values.size()) != n_sites - 1)
        throw DomainError("make_weight_scheme: custom weights must have N-1 "
                          "entries");
      for (double w : custom_values)
        if (!(w >= 0))
          throw DomainError("make_weight_scheme: weights must be nonnegative");
      scheme.big_omega = custom_values;
      break;
  }
  scheme.small_omega.resize(n_sites - 1);
  double acc = 0;
  for (int k = 2; k <= n_sites; ++k) {
    acc += scheme.big_omega[k - 2];
    scheme.small_omega[k - 2] = acc;
  }
  return scheme;
}

double multi_information(const DensityMatrix& rho) {
  MarginalCache cache(rho);
  return multi_information_impl(cache);
}

double cluster_multiinfo_average(const DensityMatrix& rho, int k) {
  if (k < 1 || k > rho.sites())
    throw DomainError("cluster_multiinfo_average: k must lie in 1..N");
  MarginalCache cache(rho);
  return cluster_average_impl(cache, k);
}

double correlations_above_k(const DensityMatrix& rho, int k, Mode mode) {
  MarginalCache cache(rho);
  if (mode == Mode::symmetric_formula && k >= 1 && k < rho.sites())
    require_symmetric(rho);
  return above_k_impl(cache, k, mode);
}

MinimizationResult correlations_above_k_witness(const DensityMatrix& rho,
                                                int k) {
  const int n = rho.sites();
  if (k < 1 || k > n)
    throw DomainError("correlations_above_k_witness: k must lie in 1..N");
  MarginalCache cache(rho);
  MinimizationResult result;
  if (k == n) {
    result.value = 0.0;
    result.witness.blocks.emplace_back();
    for (int s = 1; s <= n; ++s) result.witness.blocks[0].indices.push_back(s);
    return result;
  }
  result.value = above_k_exact(cache, k, &result.witness);
  return result;
}

double genuine_k_correlations(const CorrelationProfile& profile, int k) {
  if (k < 2 || k > profile.n_sites)
    throw DomainError("genuine_k_correlations: k must lie in 2..N");
  return profile.genuine_k(k);
}

CorrelationProfile correlation_profile(const DensityMatrix& rho, Mode mode) {
  MarginalCache cache(rho);
  return profile_impl(cache, mode);
}

double weaving(const CorrelationProfile& profile, const WeightScheme& scheme) {
  const int n = profile.n_sites;
  if (scheme.n_sites() != n)
    throw DomainError("weaving: weight scheme length mismatch");
  detail::KahanSum big_form;
  for (int k = 1; k <= n - 1; ++k)
    big_form.add(scheme.big_omega[k - 1] * profile.above(k));
  detail::KahanSum small_form;
  for (int k = 2; k <= n; ++k)
    small_form.add(scheme.small_omega[k - 2] * profile.genuine_k(k));
  const double w = big_form.value();
  if (std::abs(w - small_form.value()) > 1e-9)
    throw Error("weaving: Omega-form and omega-form disagree by " +
                std::to_string(std::abs(w - small_form.value())));
  return w;
}

double neural_component(const DensityMatrix& rho, int k) {
  const int n = rho.sites();
  if (k < 1 || k > n - 1)
    throw DomainError("neural_component: k must lie in 1..N-1");
  MarginalCache cache(rho);
  const double mi = multi_information_impl(cache);
  return mi - (static_cast<double>(n) / k) * cluster_average_impl(cache, k);
}

std::vector<double> neural_components(const DensityMatrix& rho) {
  const int n = rho.sites();
  MarginalCache cache(rho);
  const double mi = multi_information_impl(cache);
  std::vector<double> components(n - 1);
  for (int k = 1; k <= n - 1; ++k)
    components[k - 1] =
        mi - (static_cast<double>(n) / k) * cluster_average_impl(cache, k);
  return components;
}

double neural_complexity(const DensityMatrix& rho) {
  const int n = rho.sites();
  const auto components = neural_components(rho);
  detail::KahanSum total;
  for (int k = 1; k <= n - 1; ++k)
    total.add(static_cast<double>(k) / n * components[k - 1]);
  return total.value();
}

} // namespace weaveq::correlations
