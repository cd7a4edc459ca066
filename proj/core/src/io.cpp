#include "weaveq/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "weaveq/config.hpp"
#include "weaveq/errors.hpp"

namespace weaveq::io {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw DomainError(std::string(what) + ": malformed JSON");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

qcore::DensityMatrix parse_state_json(const std::string& text) {
  const json j = parse_or_throw(text, "state file");
  if (!j.is_object() || !j.contains("local_dims") || !j.contains("matrix"))
    throw DomainError("state file: expected object with local_dims and matrix");

  qcore::DensityMatrix rho;
  for (const auto& d : j.at("local_dims")) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw DomainError("state file: local_dims must be positive integers");
    rho.local_dims.push_back(d.get<int>());
  }
  if (rho.local_dims.empty()) throw DomainError("state file: no sites");

  std::int64_t dim = 1;
  for (int d : rho.local_dims) {
    dim *= d;
    if (dim > (std::int64_t{1} << config::dense_cap()))
      throw CapacityError("state file: dimension exceeds dense cap 2^" +
                          std::to_string(config::dense_cap()));
  }

  const auto& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != dim)
    throw DomainError("state file: matrix must have prod(local_dims) rows");
  rho.matrix.resize(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim)
      throw DomainError("state file: matrix row " + std::to_string(r) +
                        " has wrong length");
    for (std::int64_t c = 0; c < dim; ++c) {
      const auto& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2)
        throw DomainError("state file: entries must be [re, im] pairs");
      rho.matrix(r, c) = std::complex<double>(entry.at(0).get<double>(),
                                              entry.at(1).get<double>());
    }
  }
  qcore::require_valid(rho);
  return rho;
}

qcore::DensityMatrix load_state_file(const std::string& path) {
  return parse_state_json(read_file(path));
}

std::string state_to_json(const qcore::DensityMatrix& rho, int indent) {
  json j;
  j["local_dims"] = rho.local_dims;
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c)
      row.push_back({rho.matrix(r, c).real(), rho.matrix(r, c).imag()});
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(indent);
}

void save_state_file(const qcore::DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << state_to_json(rho, 1) << '\n';
}

std::string profile_to_json(const correlations::CorrelationProfile& profile,
                            int indent) {
  json j;
  j["N"] = profile.n_sites;
  j["mode"] = correlations::to_string(profile.mode);
  j["above_k"] = profile.above_k;
  j["genuine"] = profile.genuine;
  return j.dump(indent);
}

std::vector<double> parse_weight_values_json(const std::string& text) {
  const json j = parse_or_throw(text, "weight file");
  if (!j.is_array()) throw DomainError("weight file: expected a JSON array");
  std::vector<double> values;
  for (const auto& v : j) {
    if (!v.is_number()) throw DomainError("weight file: entries must be numbers");
    values.push_back(v.get<double>());
  }
  return values;
}

std::vector<double> load_weight_values_file(const std::string& path) {
  return parse_weight_values_json(read_file(path));
}

} // namespace weaveq::io
