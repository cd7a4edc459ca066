#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weaveq/correlations.hpp"
#include "weaveq/ghz_analytic.hpp"
#include "weaveq/io.hpp"
#include "weaveq/qcore.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_raw(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

CliResult run_cli(const std::string& args) {
  return run_raw(std::string(WEAVEQ_CLI_PATH) + " " + args);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string write_state_file(const weaveq::qcore::DensityMatrix& rho,
                             const std::string& name) {
  weaveq::io::save_state_file(rho, name);
  return name;
}

} // namespace

TEST_CASE("ghz-curve emits the expected table") {
  const auto r = run_cli("ghz-curve --n 3 --p-grid 0:1:3");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "p,W_uniform,W_linear,C\n"
        "0,5,2.33333333333,2\n"
        "0.5,1.37744375108,0.657268229617,0.59436093777\n"
        "1,0,0,0\n");
}

TEST_CASE("output bytes are identical across runs") {
  const auto a = run_cli("ghz-curve --n 6 --p-grid 0:1:17");
  const auto b = run_cli("ghz-curve --n 6 --p-grid 0:1:17");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run_cli("ghz-curve").exit_code == 2);               // missing --n
  CHECK(run_cli("ghz-curve --n 3 --p-grid 2:1:5").exit_code == 2);
  CHECK(run_cli("ghz-curve --n 3 --p-grid nonsense").exit_code == 2);
  CHECK(run_cli("ghz-curve --n 1").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("ghz-curve --n 3 --log-base 10").exit_code == 2);
}

TEST_CASE("ghz-orders covers k = 1..N-1") {
  const auto r = run_cli("ghz-orders --n 5 --p-grid 0:0:1");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5); // header + 4 orders
  CHECK(rows[0] == std::vector<std::string>{"p", "k", "S_above_k", "C_k"});
  const double expected_above[] = {5, 3, 2, 2};
  for (int k = 1; k <= 4; ++k) {
    CHECK(std::stoi(rows[k][1]) == k);
    CHECK(std::stod(rows[k][2]) == doctest::Approx(expected_above[k - 1]));
    CHECK(std::stod(rows[k][3]) == doctest::Approx(5.0 / k));
  }
}

TEST_CASE("re-parsed ghz-orders rows satisfy the profile invariants") {
  const auto r = run_cli("ghz-orders --n 6 --p-grid 0:1:5");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 5 * 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double above = std::stod(rows[i][2]);
    CHECK(above >= 0.0);
    if (std::stoi(rows[i][1]) > 1) {
      const double prev = std::stod(rows[i - 1][2]);
      CHECK(above <= prev + 1e-9);
    }
  }
}

TEST_CASE("ghz-orders at N=50 separates the neural components") {
  // Pure point: S_above_k plateaus at repeated ceiling values while C_k = N/k
  // stays pairwise distinct.
  const auto pure = run_cli("ghz-orders --n 50 --p-grid 0:0:1");
  CHECK(pure.exit_code == 0);
  const auto pure_rows = parse_csv(pure.out);
  REQUIRE(pure_rows.size() == 50); // header + k = 1..49
  int plateau_pairs = 0;
  for (std::size_t i = 2; i < pure_rows.size(); ++i)
    if (std::abs(std::stod(pure_rows[i][2]) -
                 std::stod(pure_rows[i - 1][2])) <= 1e-9)
      ++plateau_pairs;
  CHECK(plateau_pairs > 0);

  // Mid-mixing row: every C_k strictly positive and pairwise distinct.
  const auto mixed = run_cli("ghz-orders --n 50 --p-grid 0.3:0.3:1");
  CHECK(mixed.exit_code == 0);
  const auto rows = parse_csv(mixed.out);
  REQUIRE(rows.size() == 50);
  std::vector<double> c_k;
  for (std::size_t i = 1; i < rows.size(); ++i)
    c_k.push_back(std::stod(rows[i][3]));
  for (double v : c_k) CHECK(v > 0.0);
  for (std::size_t i = 0; i < c_k.size(); ++i)
    for (std::size_t j = i + 1; j < c_k.size(); ++j)
      CHECK(std::abs(c_k[i] - c_k[j]) > 1e-9);
}

TEST_CASE("ghz-curve json format") {
  const auto r = run_cli("ghz-curve --n 4 --p-grid 0:1:3 --format json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("N").get<int>() == 4);
  REQUIRE(j.at("rows").size() == 3);
  CHECK(j.at("rows").at(0).at("C").get<double>() == doctest::Approx(3.0));
}

TEST_CASE("log-base e rescales the curve by ln 2") {
  const auto bits = run_cli("ghz-curve --n 3 --p-grid 0.5:0.5:1");
  const auto nats = run_cli("ghz-curve --n 3 --p-grid 0.5:0.5:1 --log-base e");
  const auto rb = parse_csv(bits.out);
  const auto rn = parse_csv(nats.out);
  for (int col = 1; col <= 3; ++col)
    CHECK(std::stod(rn[1][col]) ==
          doctest::Approx(std::stod(rb[1][col]) * std::numbers::ln2)
              .epsilon(1e-10));
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto direct = run_cli("ghz-curve --n 3 --p-grid 0:1:3");
  const auto to_file =
      run_cli("ghz-curve --n 3 --p-grid 0:1:3 --out weaveq_test_curve.csv");
  CHECK(to_file.exit_code == 0);
  std::ifstream in("weaveq_test_curve.csv", std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == direct.out);
  std::remove("weaveq_test_curve.csv");

  CHECK(run_cli("ghz-curve --n 3 --out /no-such-dir/x.csv").exit_code == 3);
}

TEST_CASE("dense-analyze on a Bell pair") {
  const auto path = write_state_file(weaveq::qcore::make_ghz_state(2, 0.0),
                                     "weaveq_test_bell.json");
  const auto r = run_cli("dense-analyze " + path + " --mode symmetric");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("N").get<int>() == 2);
  CHECK(j.at("symmetry").at("permutation_invariant").get<bool>());
  const auto above = j.at("profile").at("above_k").get<std::vector<double>>();
  REQUIRE(above.size() == 2);
  CHECK(above[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(above[1] == doctest::Approx(0.0));
  // C^(1) is the full multi-information; the weighted total is half of it
  CHECK(j.at("neural").at("components").at(0).get<double>() ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j.at("neural").at("total").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  std::remove(path.c_str());
}

TEST_CASE("dense-analyze matches the closed forms on a GHZ mixture") {
  const auto path = write_state_file(weaveq::qcore::make_ghz_state(3, 0.5),
                                     "weaveq_test_ghz3.json");
  for (const std::string mode : {"symmetric", "exact"}) {
    const auto r = run_cli("dense-analyze " + path + " --mode " + mode);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    const auto profile = weaveq::ghz::ghz_profile({3, 0.5});
    const auto above = j.at("profile").at("above_k").get<std::vector<double>>();
    REQUIRE(above.size() == 3);
    for (int k = 1; k <= 3; ++k)
      CHECK(above[k - 1] == doctest::Approx(profile.above(k)).epsilon(1e-8));
    CHECK(j.at("weaving").at("uniform").get<double>() ==
          doctest::Approx(1.3774437510817343).epsilon(1e-8));
    CHECK(j.at("weaving").at("linear").get<double>() ==
          doctest::Approx(0.6572682296173893).epsilon(1e-8));
    CHECK(j.at("neural").at("total").get<double>() ==
          doctest::Approx(0.5943609377704335).epsilon(1e-8));
  }
  std::remove(path.c_str());
}

TEST_CASE("dense-analyze custom weights") {
  const auto path = write_state_file(weaveq::qcore::make_ghz_state(3, 0.0),
                                     "weaveq_test_ghz3p.json");
  {
    std::ofstream w("weaveq_test_weights.json");
    w << "[2, 0.5]\n";
  }
  const auto r = run_cli("dense-analyze " + path +
                         " --mode symmetric --weights "
                         "custom:weaveq_test_weights.json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  // W = 2 * S^{1->3} + 0.5 * S^{2->3} = 2*3 + 0.5*2
  CHECK(j.at("weaving").at("custom").get<double>() ==
        doctest::Approx(7.0).epsilon(1e-9));
  std::remove(path.c_str());
  std::remove("weaveq_test_weights.json");
}

TEST_CASE("dense-analyze error paths") {
  // 11 sites exceeds the exact-minimization cap
  const auto small = weaveq::qcore::random_density(
      {2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 2, 5);
  const auto path = write_state_file(small, "weaveq_test_11sites.json");
  CHECK(run_cli("dense-analyze " + path + " --mode exact").exit_code == 5);
  std::remove(path.c_str());

  {
    std::ofstream bad("weaveq_test_bad_state.json");
    bad << R"({"local_dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]})";
  }
  CHECK(run_cli("dense-analyze weaveq_test_bad_state.json --mode exact")
            .exit_code == 4);
  std::remove("weaveq_test_bad_state.json");

  CHECK(run_cli("dense-analyze weaveq_missing.json --mode exact").exit_code ==
        3);
  // asymmetric state in symmetric mode is a configuration error
  const auto asym = weaveq::qcore::tensor_product(
      weaveq::qcore::random_density({2}, 1, 8),
      weaveq::qcore::random_density({2}, 2, 9));
  const auto apath = write_state_file(asym, "weaveq_test_asym.json");
  CHECK(run_cli("dense-analyze " + apath + " --mode symmetric").exit_code == 2);
  std::remove(apath.c_str());
}

TEST_CASE("verify exit codes") {
  const auto ok = run_cli("verify --trials 2 --seed 3 --oracle-max-n 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const auto vacuous = run_cli("verify --trials 0 --oracle-max-n 2");
  CHECK(vacuous.exit_code == 0);

  const auto faulty =
      run_cli("verify --trials 1 --seed 3 --oracle-max-n 2 --oracle-scale 0.69");
  CHECK(faulty.exit_code == 1);
  CHECK(faulty.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify report file is deterministic") {
  const std::string cmd =
      "verify --trials 2 --seed 11 --oracle-max-n 3 --out weaveq_test_verify";
  CHECK(run_cli(cmd + "1.json").exit_code == 0);
  CHECK(run_cli(cmd + "2.json").exit_code == 0);
  std::ifstream a("weaveq_test_verify1.json", std::ios::binary);
  std::ifstream b("weaveq_test_verify2.json", std::ios::binary);
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(json::parse(sa.str()).contains("battery"));
  std::remove("weaveq_test_verify1.json");
  std::remove("weaveq_test_verify2.json");
}

TEST_CASE("dense cap env var and flag") {
  const auto bell = weaveq::qcore::make_ghz_state(2, 0.0);
  const auto path = write_state_file(bell, "weaveq_test_cap.json");
  // cap of 1 qubit rejects a 2-qubit state at load time
  const auto r = run_cli("dense-analyze " + path + " --mode exact --dense-cap 1");
  CHECK(r.exit_code == 5);

  const auto via_env = run_raw("WEAVEQ_DENSE_CAP=1 " +
                               std::string(WEAVEQ_CLI_PATH) +
                               " dense-analyze " + path + " --mode exact");
  CHECK(via_env.exit_code == 5);

  // the flag wins over the environment
  const auto flag_wins = run_raw(
      "WEAVEQ_DENSE_CAP=1 " + std::string(WEAVEQ_CLI_PATH) + " dense-analyze " +
      path + " --mode exact --dense-cap 12");
  CHECK(flag_wins.exit_code == 0);
  std::remove(path.c_str());
}
