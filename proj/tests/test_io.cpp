#include <doctest.h>

#include <string>

#include "weaveq/correlations.hpp"
#include "weaveq/errors.hpp"
#include "weaveq/io.hpp"
#include "weaveq/qcore.hpp"

using namespace weaveq;
using namespace weaveq::io;

TEST_CASE("state JSON round-trips bit-exactly") {
  const auto rho = qcore::random_density({2, 3}, 4, 77);
  const auto back = parse_state_json(state_to_json(rho));
  CHECK(back.local_dims == rho.local_dims);
  CHECK((back.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("state parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_state_json("not json"), DomainError);
  CHECK_THROWS_AS(parse_state_json("[1,2,3]"), DomainError);
  CHECK_THROWS_AS(parse_state_json(R"({"local_dims":[2]})"), DomainError);
  CHECK_THROWS_AS(
      parse_state_json(R"({"local_dims":[2],"matrix":[[[1,0]]]})"),
      DomainError);
  CHECK_THROWS_AS(
      parse_state_json(R"({"local_dims":[0],"matrix":[]})"), DomainError);
}

TEST_CASE("state parsing applies validation") {
  // trace 2
  CHECK_THROWS_AS(parse_state_json(
                      R"({"local_dims":[2],
                          "matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]})"),
                  InvalidStateError);
  // not Hermitian
  CHECK_THROWS_AS(parse_state_json(
                      R"({"local_dims":[2],
                          "matrix":[[[0.5,0],[0.4,0]],[[0,0],[0.5,0]]]})"),
                  InvalidStateError);
  // negative eigenvalue
  CHECK_THROWS_AS(parse_state_json(
                      R"({"local_dims":[2],
                          "matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})"),
                  InvalidStateError);
}

TEST_CASE("state parsing enforces the dense cap") {
  std::string dims = "[";
  for (int i = 0; i < 14; ++i) dims += (i ? ",2" : "2");
  dims += "]";
  CHECK_THROWS_AS(
      parse_state_json(R"({"local_dims":)" + dims + R"(,"matrix":[]})"),
      CapacityError);
}

TEST_CASE("save and load through a file") {
  const auto rho = qcore::make_ghz_state(3, 0.25);
  const std::string path = "weaveq_test_state.json";
  save_state_file(rho, path);
  const auto back = load_state_file(path);
  CHECK((back.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(load_state_file("definitely_missing_state.json"), Error);
  std::remove(path.c_str());
}

TEST_CASE("profile serialization") {
  const auto profile = correlations::correlation_profile(
      qcore::make_ghz_state(3, 0.0), correlations::Mode::symmetric_formula);
  const std::string j = profile_to_json(profile);
  CHECK(j.find("\"N\":3") != std::string::npos);
  CHECK(j.find("symmetric-formula") != std::string::npos);
  CHECK(j.find("above_k") != std::string::npos);
  CHECK(j.find("genuine") != std::string::npos);
}

TEST_CASE("weight file parsing") {
  CHECK(parse_weight_values_json("[1, 0.5, 0]") ==
        std::vector<double>{1.0, 0.5, 0.0});
  CHECK_THROWS_AS(parse_weight_values_json("{}"), DomainError);
  CHECK_THROWS_AS(parse_weight_values_json("[\"a\"]"), DomainError);
}
