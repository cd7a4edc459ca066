#include "weaveq/axioms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include <json.hpp>

#include "weaveq/errors.hpp"
#include "weaveq/io.hpp"

namespace weaveq::axioms {

namespace {

using correlations::CorrelationProfile;
using correlations::Mode;
using nlohmann::json;

constexpr const char* kDisjointAppend = "disjoint-append";
constexpr const char* kContractAboveK = "local-contractivity-above-k";
constexpr const char* kContractWeaving = "local-contractivity-weaving";
constexpr const char* kContractNeural = "neural-contractivity";
constexpr const char* kPartialTrace = "partial-trace-monotonicity";
constexpr const char* kSuperadditivity = "superadditivity";
constexpr const char* kProfileConsistency = "profile-consistency";

json state_json(const DensityMatrix& rho) {
  return json::parse(io::state_to_json(rho));
}

DensityMatrix state_from_json(const json& j) {
  return io::parse_state_json(j.dump());
}

json matrix_json(const qcore::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

qcore::Matrix matrix_from_json(const json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  qcore::Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = std::complex<double>(rows.at(r).at(c).at(0).get<double>(),
                                     rows.at(r).at(c).at(1).get<double>());
  return m;
}

json channels_json(const std::vector<KrausChannel>& channels) {
  json arr = json::array();
  for (const auto& ch : channels) {
    json ops = json::array();
    for (const auto& k : ch.kraus_ops) ops.push_back(matrix_json(k));
    arr.push_back({{"site_dim", ch.site_dim}, {"kraus", std::move(ops)}});
  }
  return arr;
}

std::vector<KrausChannel> channels_from_json(const json& arr) {
  std::vector<KrausChannel> channels;
  for (const auto& jch : arr) {
    KrausChannel ch;
    ch.site_dim = jch.at("site_dim").get<int>();
    for (const auto& op : jch.at("kraus"))
      ch.kraus_ops.push_back(matrix_from_json(op));
    channels.push_back(std::move(ch));
  }
  return channels;
}

json partition_json(const SetPartition& partition) {
  json arr = json::array();
  for (const auto& b : partition.blocks) arr.push_back(b.indices);
  return arr;
}

SetPartition partition_from_json(const json& arr) {
  SetPartition p;
  for (const auto& jb : arr)
    p.blocks.push_back(qcore::SiteSubset(jb.get<std::vector<int>>()));
  return p;
}

AxiomReport make_report(const char* axiom, double violation, json witness,
                        bool informational = false) {
  AxiomReport report;
  report.axiom = axiom;
  report.trials = 1;
  report.worst_violation = violation;
  report.pass = violation <= kViolationTol;
  report.informational = informational;
  report.witness_json = witness.dump();
  return report;
}

DensityMatrix apply_all_channels(const DensityMatrix& rho,
                                 const std::vector<KrausChannel>& channels) {
  if (static_cast<int>(channels.size()) != rho.sites())
    throw DomainError("local contractivity: need one channel per site");
  DensityMatrix out = rho;
  for (int site = 1; site <= rho.sites(); ++site)
    out = qcore::apply_local_channel(out, site, channels[site - 1]);
  return out;
}

// Profile invariants as one signed slack: monotonicity, nonnegativity,
// telescoping, and agreement of the two weaving forms.
double profile_consistency_violation(const DensityMatrix& rho,
                                     const WeightScheme& scheme) {
  const auto profile =
      correlations::correlation_profile(rho, Mode::exact_minimization);
  const int n = profile.n_sites;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 2; k <= n; ++k)
    worst = std::max(worst, profile.above(k) - profile.above(k - 1));
  for (int k = 1; k <= n; ++k) worst = std::max(worst, -profile.above(k));
  double telescoped = 0;
  for (int k = 2; k <= n; ++k) {
    worst = std::max(worst, -profile.genuine_k(k));
    telescoped += profile.genuine_k(k);
  }
  worst = std::max(worst, std::abs(telescoped - profile.above(1)));
  double big_form = 0, small_form = 0;
  for (int k = 1; k <= n - 1; ++k)
    big_form += scheme.big_omega[k - 1] * profile.above(k);
  for (int k = 2; k <= n; ++k)
    small_form += scheme.small_omega[k - 2] * profile.genuine_k(k);
  worst = std::max(worst, std::abs(big_form - small_form));
  return worst;
}

// Deterministic input sampling for the battery. Raw mt19937_64 draws only:
// std::uniform_* distributions are not specified bit-for-bit.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t sub_seed() { return rng_(); }
  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  DensityMatrix random_qubits(int n_sites) {
    const std::vector<int> dims(n_sites, 2);
    const int rank = 1 + below(6);
    return qcore::random_density(dims, rank, sub_seed());
  }

  KrausChannel random_channel() {
    const auto kind = static_cast<qcore::ChannelKind>(below(3));
    return qcore::standard_channel(kind, unit());
  }

  std::vector<KrausChannel> random_channels(int n_sites) {
    std::vector<KrausChannel> channels;
    channels.reserve(n_sites);
    for (int i = 0; i < n_sites; ++i) channels.push_back(random_channel());
    return channels;
  }

  WeightScheme random_scheme(int n_sites) {
    std::vector<double> omega(n_sites - 1);
    for (auto& w : omega) w = 2.0 * unit();
    return correlations::make_weight_scheme(correlations::WeightKind::custom,
                                            n_sites, omega);
  }

  SetPartition random_partition(int n_sites) {
    SetPartition p;
    for (int site = 1; site <= n_sites; ++site) {
      const int blocks = static_cast<int>(p.blocks.size());
      const int b = below(blocks + 1);
      if (b == blocks) p.blocks.emplace_back();
      p.blocks[b].indices.push_back(site);
    }
    return p;
  }

private:
  std::mt19937_64 rng_;
};

void merge(AxiomReport& acc, const AxiomReport& instance) {
  if (acc.trials == 0 || instance.worst_violation > acc.worst_violation) {
    acc.worst_violation = instance.worst_violation;
    acc.witness_json = instance.witness_json;
  }
  acc.trials += instance.trials;
  acc.pass = acc.worst_violation <= kViolationTol;
  acc.informational = instance.informational;
}

json report_json_obj(const AxiomReport& report) {
  json j;
  j["axiom"] = report.axiom;
  j["trials"] = report.trials;
  j["worst_violation"] = report.worst_violation;
  j["pass"] = report.pass;
  if (report.informational) j["informational"] = true;
  j["witness"] = report.witness_json.empty()
                     ? json(nullptr)
                     : json::parse(report.witness_json);
  return j;
}

} // namespace

std::string report_to_json(const AxiomReport& report, int indent) {
  return report_json_obj(report).dump(indent);
}

std::string battery_to_json(const std::vector<AxiomReport>& reports,
                            int indent) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json_obj(r));
  return arr.dump(indent);
}

AxiomReport check_disjoint_append(const DensityMatrix& rho,
                                  const DensityMatrix& sigma, int k) {
  const int n_appended = sigma.sites();
  if (k < n_appended || k > rho.sites())
    throw DomainError("check_disjoint_append: need sigma sites <= k <= N");
  const double before =
      correlations::correlations_above_k(rho, k, Mode::exact_minimization);
  const double after = correlations::correlations_above_k(
      qcore::tensor_product(rho, sigma), k, Mode::exact_minimization);
  json witness{{"axiom", kDisjointAppend},
               {"k", k},
               {"rho", state_json(rho)},
               {"sigma", state_json(sigma)}};
  return make_report(kDisjointAppend, after - before, std::move(witness));
}

AxiomReport check_local_contractivity(const DensityMatrix& rho,
                                      const std::vector<KrausChannel>& channels,
                                      ContractMeasure measure,
                                      const WeightScheme* scheme) {
  const DensityMatrix mapped = apply_all_channels(rho, channels);
  switch (measure) {
    case ContractMeasure::above_k: {
      const auto before =
          correlations::correlation_profile(rho, Mode::exact_minimization);
      const auto after =
          correlations::correlation_profile(mapped, Mode::exact_minimization);
      double violation = -std::numeric_limits<double>::infinity();
      for (int k = 1; k <= rho.sites(); ++k)
        violation = std::max(violation, after.above(k) - before.above(k));
      json witness{{"axiom", kContractAboveK},
                   {"rho", state_json(rho)},
                   {"channels", channels_json(channels)}};
      return make_report(kContractAboveK, violation, std::move(witness));
    }
    case ContractMeasure::weaving: {
      if (scheme == nullptr)
        throw DomainError("check_local_contractivity: weaving needs a scheme");
      const auto before =
          correlations::correlation_profile(rho, Mode::exact_minimization);
      const auto after =
          correlations::correlation_profile(mapped, Mode::exact_minimization);
      const double violation = correlations::weaving(after, *scheme) -
                               correlations::weaving(before, *scheme);
      json witness{{"axiom", kContractWeaving},
                   {"rho", state_json(rho)},
                   {"channels", channels_json(channels)},
                   {"big_omega", scheme->big_omega}};
      return make_report(kContractWeaving, violation, std::move(witness));
    }
    case ContractMeasure::neural:
    default: {
      const double violation = correlations::neural_complexity(mapped) -
                               correlations::neural_complexity(rho);
      json witness{{"axiom", kContractNeural},
                   {"rho", state_json(rho)},
                   {"channels", channels_json(channels)}};
      return make_report(kContractNeural, violation, std::move(witness),
                         /*informational=*/true);
    }
  }
}

AxiomReport check_partial_trace_monotonicity(const DensityMatrix& rho,
                                             int n_traced, int k) {
  const int n = rho.sites();
  if (n_traced < 1 || n_traced >= n)
    throw DomainError("check_partial_trace_monotonicity: bad n_traced");
  if (k < 1 || k >= n - n_traced)
    throw DomainError("check_partial_trace_monotonicity: need k < N - n");
  const double before =
      correlations::correlations_above_k(rho, k, Mode::exact_minimization);
  const int kept = n - n_traced;
  double violation = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) != kept) continue;
    std::vector<int> sites;
    for (int s = 1; s <= n; ++s)
      if (mask & (std::uint32_t{1} << (s - 1))) sites.push_back(s);
    const auto reduced =
        qcore::partial_trace(rho, qcore::SiteSubset(std::move(sites)));
    const double after =
        correlations::correlations_above_k(reduced, k, Mode::exact_minimization);
    violation = std::max(violation, after - before);
  }
  json witness{{"axiom", kPartialTrace},
               {"n_traced", n_traced},
               {"k", k},
               {"rho", state_json(rho)}};
  return make_report(kPartialTrace, violation, std::move(witness));
}

AxiomReport check_superadditivity(const DensityMatrix& rho,
                                  const SetPartition& partition) {
  correlations::validate_set_partition(partition, rho.sites());
  const double total = correlations::multi_information(rho);
  double block_sum = 0;
  for (const auto& block : partition.blocks)
    block_sum +=
        correlations::multi_information(qcore::partial_trace(rho, block));
  json witness{{"axiom", kSuperadditivity},
               {"partition", partition_json(partition)},
               {"rho", state_json(rho)}};
  return make_report(kSuperadditivity, block_sum - total, std::move(witness));
}

std::vector<AxiomReport> run_axiom_battery(std::uint64_t seed, int trials) {
  if (trials < 0) throw DomainError("run_axiom_battery: trials must be >= 0");
  Sampler sampler(seed);

  AxiomReport append{kDisjointAppend, 0, 0, true, false, ""};
  AxiomReport contract_above{kContractAboveK, 0, 0, true, false, ""};
  AxiomReport contract_weaving{kContractWeaving, 0, 0, true, false, ""};
  AxiomReport partial{kPartialTrace, 0, 0, true, false, ""};
  AxiomReport super{kSuperadditivity, 0, 0, true, false, ""};
  AxiomReport profile{kProfileConsistency, 0, 0, true, false, ""};
  AxiomReport neural{kContractNeural, 0, 0, true, true, ""};

  for (int t = 0; t < trials; ++t) {
    {
      const int n = 2 + sampler.below(2);
      const int appended = 1 + sampler.below(std::min(2, 5 - n));
      const int k = appended + sampler.below(n - appended + 1);
      const auto rho = sampler.random_qubits(n);
      const auto sigma = sampler.random_qubits(appended);
      merge(append, check_disjoint_append(rho, sigma, k));
    }
    {
      const int n = 3 + sampler.below(2);
      const auto rho = sampler.random_qubits(n);
      const auto channels = sampler.random_channels(n);
      merge(contract_above, check_local_contractivity(
                                rho, channels, ContractMeasure::above_k));
    }
    {
      const int n = 3 + sampler.below(2);
      const auto rho = sampler.random_qubits(n);
      const auto channels = sampler.random_channels(n);
      const auto scheme = sampler.random_scheme(n);
      merge(contract_weaving,
            check_local_contractivity(rho, channels, ContractMeasure::weaving,
                                      &scheme));
      merge(neural, check_local_contractivity(rho, channels,
                                              ContractMeasure::neural));
    }
    {
      const int n = 4 + sampler.below(2);
      const int n_traced = 1 + sampler.below(2);
      const int k = 1 + sampler.below(n - n_traced - 1);
      const auto rho = sampler.random_qubits(n);
      merge(partial, check_partial_trace_monotonicity(rho, n_traced, k));
    }
    {
      const int n = 4 + sampler.below(2);
      const auto rho = sampler.random_qubits(n);
      merge(super, check_superadditivity(rho, sampler.random_partition(n)));
    }
    {
      const int n = 3 + sampler.below(3);
      const auto rho = sampler.random_qubits(n);
      const auto scheme = sampler.random_scheme(n);
      const double violation = profile_consistency_violation(rho, scheme);
      json witness{{"axiom", kProfileConsistency},
                   {"rho", state_json(rho)},
                   {"big_omega", scheme.big_omega}};
      merge(profile, make_report(kProfileConsistency, violation,
                                 std::move(witness)));
    }
  }

  return {append,  contract_above, contract_weaving, partial,
          super,   profile,        neural};
}

double replay_witness(const std::string& witness_json) {
  const json j = json::parse(witness_json, nullptr, false);
  if (j.is_discarded() || !j.contains("axiom"))
    throw DomainError("replay_witness: malformed witness");
  const std::string axiom = j.at("axiom").get<std::string>();

  if (axiom == kDisjointAppend)
    return check_disjoint_append(state_from_json(j.at("rho")),
                                 state_from_json(j.at("sigma")),
                                 j.at("k").get<int>())
        .worst_violation;
  if (axiom == kContractAboveK)
    return check_local_contractivity(state_from_json(j.at("rho")),
                                     channels_from_json(j.at("channels")),
                                     ContractMeasure::above_k)
        .worst_violation;
  if (axiom == kContractWeaving) {
    const auto rho = state_from_json(j.at("rho"));
    const auto scheme = correlations::make_weight_scheme(
        correlations::WeightKind::custom, rho.sites(),
        j.at("big_omega").get<std::vector<double>>());
    return check_local_contractivity(rho, channels_from_json(j.at("channels")),
                                     ContractMeasure::weaving, &scheme)
        .worst_violation;
  }
  if (axiom == kContractNeural)
    return check_local_contractivity(state_from_json(j.at("rho")),
                                     channels_from_json(j.at("channels")),
                                     ContractMeasure::neural)
        .worst_violation;
  if (axiom == kPartialTrace)
    return check_partial_trace_monotonicity(state_from_json(j.at("rho")),
                                            j.at("n_traced").get<int>(),
                                            j.at("k").get<int>())
        .worst_violation;
  if (axiom == kSuperadditivity)
    return check_superadditivity(state_from_json(j.at("rho")),
                                 partition_from_json(j.at("partition")))
        .worst_violation;
  if (axiom == kProfileConsistency) {
    const auto rho = state_from_json(j.at("rho"));
    const auto scheme = correlations::make_weight_scheme(
        correlations::WeightKind::custom, rho.sites(),
        j.at("big_omega").get<std::vector<double>>());
    return profile_consistency_violation(rho, scheme);
  }
  throw DomainError("replay_witness: unknown axiom id " + axiom);
}

} // namespace weaveq::axioms
