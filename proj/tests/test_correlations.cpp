#include <doctest.h>

#include <cmath>
#include <vector>

#include "weaveq/correlations.hpp"
#include "weaveq/errors.hpp"
#include "weaveq/qcore.hpp"

using namespace weaveq;
using namespace weaveq::correlations;
using qcore::make_ghz_state;
using qcore::random_density;
using qcore::random_symmetric_density;
using qcore::tensor_product;

// Frozen oracle values for the p = 0.5 GHZ mixture, computed independently
// from the eigenvalue structure of the family (marginal spectrum
// {p/2^k + (1-p)/2 (x2), p/2^k (x 2^k-2)}, global spectrum
// {1 - 7p/8, p/8 (x7)} for N = 3) at 60-digit precision.
namespace frozen {
constexpr double mi_3_half = 0.7830828133113007;      // 3 - S(rho_3)
constexpr double above2_3_half = 0.5943609377704335;  // S_2 + S_1 - S_3
constexpr double w_uniform_3_half = 1.3774437510817343;
constexpr double w_linear_3_half = 0.6572682296173893;
constexpr double c_3_half = 0.5943609377704335;
} // namespace frozen

namespace {

qcore::DensityMatrix random_product_state(int n, std::uint64_t seed) {
  auto rho = random_density({2}, 2, seed);
  for (int i = 1; i < n; ++i)
    rho = tensor_product(rho, random_density({2}, 2, seed + 100 * i));
  return rho;
}

} // namespace

TEST_CASE("weight schemes") {
  const auto uniform = make_weight_scheme(WeightKind::uniform, 4);
  CHECK(uniform.big_omega == std::vector<double>{1, 1, 1});
  CHECK(uniform.small_omega == std::vector<double>{1, 2, 3});

  const auto linear = make_weight_scheme(WeightKind::linear, 4);
  CHECK(linear.big_omega[0] == doctest::Approx(0.25));
  CHECK(linear.small_omega[1] == doctest::Approx(0.75)); // omega_3 = (1+2)/4

  CHECK_THROWS_AS(make_weight_scheme(WeightKind::custom, 4, {1, -1, 0}),
                  DomainError);
  CHECK_THROWS_AS(make_weight_scheme(WeightKind::custom, 4, {1, 1}),
                  DomainError);
}

TEST_CASE("delta weights pick out single orders") {
  // Omega = delta_k turns weaving into S^{k->N}; differencing two delta
  // schemes therefore yields the genuine order-k correlations.
  const auto profile =
      correlation_profile(make_ghz_state(4, 0.35), Mode::symmetric_formula);
  const auto delta = [&](int k) {
    std::vector<double> omega(3, 0.0);
    omega[k - 1] = 1.0;
    return make_weight_scheme(WeightKind::custom, 4, omega);
  };
  for (int k = 1; k <= 3; ++k)
    CHECK(weaving(profile, delta(k)) ==
          doctest::Approx(profile.above(k)).epsilon(1e-12));
  CHECK(weaving(profile, delta(2)) - weaving(profile, delta(3)) ==
        doctest::Approx(genuine_k_correlations(profile, 3)).epsilon(1e-9));
}

TEST_CASE("multi_information") {
  CHECK(multi_information(random_product_state(3, 7)) <= 1e-9);
  for (int n : {3, 4, 5})
    CHECK(multi_information(make_ghz_state(n, 0.0)) ==
          doctest::Approx(n).epsilon(1e-9));
  CHECK(multi_information(make_ghz_state(3, 0.5)) ==
        doctest::Approx(frozen::mi_3_half).epsilon(1e-9));
}

TEST_CASE("cluster_multiinfo_average") {
  const auto rho = make_ghz_state(4, 0.25);
  CHECK(cluster_multiinfo_average(rho, 1) == 0.0);

  // permutation invariant: the average equals any single cluster's value
  const auto sym = random_symmetric_density(4, 17);
  const double avg = cluster_multiinfo_average(sym, 2);
  const double single =
      multi_information(qcore::partial_trace(sym, qcore::SiteSubset({1, 2})));
  CHECK(avg == doctest::Approx(single).epsilon(1e-12));

  CHECK(cluster_multiinfo_average(make_ghz_state(5, 0.0), 3) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(cluster_multiinfo_average(rho, 5), DomainError);
}

TEST_CASE("correlations_above_k on pure GHZ") {
  const auto ghz5 = make_ghz_state(5, 0.0);
  const int expected[] = {5, 3, 2, 2};
  for (int k = 1; k <= 4; ++k) {
    CHECK(correlations_above_k(ghz5, k, Mode::symmetric_formula) ==
          doctest::Approx(expected[k - 1]).epsilon(1e-9));
    CHECK(correlations_above_k(ghz5, k, Mode::exact_minimization) ==
          doctest::Approx(expected[k - 1]).epsilon(1e-9));
  }
  CHECK(correlations_above_k(ghz5, 5, Mode::exact_minimization) == 0.0);
}

TEST_CASE("correlations_above_k on the mixed GHZ oracle point") {
  const auto rho = make_ghz_state(3, 0.5);
  CHECK(correlations_above_k(rho, 2, Mode::symmetric_formula) ==
        doctest::Approx(frozen::above2_3_half).epsilon(1e-9));
  CHECK(correlations_above_k(rho, 2, Mode::exact_minimization) ==
        doctest::Approx(frozen::above2_3_half).epsilon(1e-9));
}

TEST_CASE("exact minimization finds the pairing partition for Bell x Bell") {
  const auto bell = make_ghz_state(2, 0.0);
  const auto two = tensor_product(bell, bell);
  CHECK(std::abs(correlations_above_k(two, 2, Mode::exact_minimization)) <=
        1e-9);
  const auto result = correlations_above_k_witness(two, 2);
  CHECK(std::abs(result.value) <= 1e-9);
  REQUIRE(result.witness.blocks.size() == 2);
  CHECK(result.witness.blocks[0].indices == std::vector<int>{1, 2});
  CHECK(result.witness.blocks[1].indices == std::vector<int>{3, 4});
}

TEST_CASE("symmetric mode rejects asymmetric states") {
  const auto asym = tensor_product(
      qcore::random_density({2}, 1, 5), qcore::random_density({2}, 2, 6));
  CHECK_THROWS_AS(correlations_above_k(asym, 1, Mode::symmetric_formula),
                  SymmetryError);
  try {
    correlations_above_k(asym, 1, Mode::symmetric_formula);
  } catch (const SymmetryError& e) {
    CHECK(e.measured_asymmetry > 1e-8);
  }
}

TEST_CASE("genuine_k_correlations") {
  const auto ghz5 = correlation_profile(make_ghz_state(5, 0.0),
                                        Mode::symmetric_formula);
  CHECK(genuine_k_correlations(ghz5, 4) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(genuine_k_correlations(ghz5, 5) == doctest::Approx(2.0).epsilon(1e-9));

  const auto mixed = correlation_profile(make_ghz_state(3, 0.5),
                                         Mode::symmetric_formula);
  CHECK(genuine_k_correlations(mixed, 3) ==
        doctest::Approx(frozen::above2_3_half).epsilon(1e-9));
  CHECK_THROWS_AS(genuine_k_correlations(mixed, 1), DomainError);
  CHECK_THROWS_AS(genuine_k_correlations(mixed, 4), DomainError);
}

TEST_CASE("correlation_profile invariants") {
  SUBCASE("product state is all zero") {
    const auto profile = correlation_profile(random_product_state(4, 11),
                                             Mode::exact_minimization);
    for (double v : profile.above_k) CHECK(std::abs(v) <= 1e-9);
    for (double v : profile.genuine) CHECK(std::abs(v) <= 1e-9);
  }
  SUBCASE("pure GHZ_5") {
    const auto profile =
        correlation_profile(make_ghz_state(5, 0.0), Mode::symmetric_formula);
    const double above[] = {5, 3, 2, 2, 0};
    const double genuine[] = {2, 1, 0, 2};
    for (int k = 1; k <= 5; ++k)
      CHECK(profile.above(k) == doctest::Approx(above[k - 1]).epsilon(1e-9));
    for (int k = 2; k <= 5; ++k)
      CHECK(profile.genuine_k(k) ==
            doctest::Approx(genuine[k - 2]).epsilon(1e-9));
  }
  SUBCASE("random states telescope and stay monotone") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto rho = random_density({2, 2, 2, 2}, 3, 600 + seed);
      const auto profile = correlation_profile(rho, Mode::exact_minimization);
      double total = 0;
      for (int k = 2; k <= 4; ++k) {
        total += profile.genuine_k(k);
        CHECK(profile.above(k) <= profile.above(k - 1) + 1e-9);
        CHECK(profile.genuine_k(k) >= -1e-9);
      }
      CHECK(total == doctest::Approx(multi_information(rho)).epsilon(1e-9));
      CHECK(profile.above(4) == 0.0);
    }
  }
}

TEST_CASE("weaving fixed points") {
  const auto ghz5 = correlation_profile(make_ghz_state(5, 0.0),
                                        Mode::symmetric_formula);
  CHECK(weaving(ghz5, make_weight_scheme(WeightKind::uniform, 5)) ==
        doctest::Approx(12.0).epsilon(1e-9));
  CHECK(weaving(ghz5, make_weight_scheme(WeightKind::linear, 5)) ==
        doctest::Approx(5.0).epsilon(1e-9));

  const auto mixed = correlation_profile(make_ghz_state(3, 0.5),
                                         Mode::symmetric_formula);
  CHECK(weaving(mixed, make_weight_scheme(WeightKind::uniform, 3)) ==
        doctest::Approx(frozen::w_uniform_3_half).epsilon(1e-9));
  CHECK(weaving(mixed, make_weight_scheme(WeightKind::linear, 3)) ==
        doctest::Approx(frozen::w_linear_3_half).epsilon(1e-9));

  CHECK_THROWS_AS(weaving(mixed, make_weight_scheme(WeightKind::uniform, 5)),
                  DomainError);
}

TEST_CASE("weaving dual forms agree for random schemes") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rho = random_density({2, 2, 2, 2}, 2, 700 + seed);
    const auto profile = correlation_profile(rho, Mode::exact_minimization);
    std::vector<double> omega(3);
    for (int i = 0; i < 3; ++i)
      omega[i] = 0.1 + 0.37 * static_cast<double>((seed + i) % 5);
    const auto scheme = make_weight_scheme(WeightKind::custom, 4, omega);
    const double w = weaving(profile, scheme);
    double small_form = 0;
    for (int k = 2; k <= 4; ++k)
      small_form += scheme.small_omega[k - 2] * profile.genuine_k(k);
    CHECK(w == doctest::Approx(small_form).epsilon(1e-9));
  }
}

TEST_CASE("weaving is additive on products") {
  const auto bell = make_ghz_state(2, 0.0);
  const auto bell_profile = correlation_profile(bell, Mode::exact_minimization);
  const auto two = tensor_product(bell, bell);
  const auto two_profile = correlation_profile(two, Mode::exact_minimization);

  // same omega_2: Omega^{(4)} = (a, x, y) matches Omega^{(2)} = (a)
  const auto scheme4 = make_weight_scheme(WeightKind::custom, 4, {0.8, 0.3, 0.4});
  const auto scheme2 = make_weight_scheme(WeightKind::custom, 2, {0.8});
  CHECK(weaving(two_profile, scheme4) ==
        doctest::Approx(2.0 * weaving(bell_profile, scheme2)).epsilon(1e-8));

  const auto u4 = make_weight_scheme(WeightKind::uniform, 4);
  const auto u2 = make_weight_scheme(WeightKind::uniform, 2);
  CHECK(weaving(two_profile, u4) ==
        doctest::Approx(2.0 * weaving(bell_profile, u2)).epsilon(1e-8));
}

TEST_CASE("neural components") {
  const auto rho = random_density({2, 2, 2}, 3, 19);
  CHECK(neural_component(rho, 1) ==
        doctest::Approx(multi_information(rho)).epsilon(1e-12));

  const auto ghz5 = make_ghz_state(5, 0.0);
  for (int k = 1; k <= 4; ++k)
    CHECK(neural_component(ghz5, k) ==
          doctest::Approx(5.0 / k).epsilon(1e-9));

  CHECK(neural_component(make_ghz_state(3, 0.5), 2) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(neural_component(rho, 3), DomainError);

  const auto components = neural_components(ghz5);
  REQUIRE(components.size() == 4);
  for (int k = 1; k <= 4; ++k)
    CHECK(components[k - 1] == doctest::Approx(5.0 / k).epsilon(1e-9));
}

TEST_CASE("neural complexity") {
  for (int n : {3, 4, 5})
    CHECK(neural_complexity(make_ghz_state(n, 0.0)) ==
          doctest::Approx(n - 1.0).epsilon(1e-9));
  CHECK(std::abs(neural_complexity(random_product_state(4, 23))) <= 1e-9);
  CHECK(neural_complexity(make_ghz_state(3, 0.5)) ==
        doctest::Approx(frozen::c_3_half).epsilon(1e-9));
}

TEST_CASE("three-site symmetric states: C equals S_1 + S_2 - S_3 equals S^{2->3}") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto rho = random_symmetric_density(3, 900 + seed);
    const double c = neural_complexity(rho);
    const auto profile = correlation_profile(rho, Mode::symmetric_formula);
    CHECK(c == doctest::Approx(profile.above(2)).epsilon(1e-9));
    const double s1 = qcore::von_neumann_entropy(
        qcore::partial_trace(rho, qcore::SiteSubset({1})));
    const double s2 = qcore::von_neumann_entropy(
        qcore::partial_trace(rho, qcore::SiteSubset({1, 2})));
    const double s3 = qcore::von_neumann_entropy(rho);
    CHECK(c == doctest::Approx(s1 + s2 - s3).epsilon(1e-9));
  }
}

TEST_CASE("local depolarization strictly lowers GHZ total correlations") {
  const auto ghz3 = make_ghz_state(3, 0.0);
  const auto noisy = qcore::apply_local_channel(
      ghz3, 1, qcore::standard_channel(qcore::ChannelKind::depolarizing, 1.0));
  CHECK(multi_information(noisy) < multi_information(ghz3) - 0.5);
}

TEST_CASE("exact minimization respects the site cap") {
  const auto rho = random_density(std::vector<int>(11, 1), 1, 3);
  CHECK(rho.sites() == 11);
  CHECK_THROWS_AS(correlations_above_k(rho, 2, Mode::exact_minimization),
                  CapacityError);
}
