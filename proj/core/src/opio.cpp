#include "pcurv/opio.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {

BigInt coeff_from_json(const nlohmann::json& v) {
  if (v.is_string()) return bigint_from_decimal(v.get<std::string>());
  if (v.is_number_integer()) return bigint_from_decimal(v.dump());
  throw FormatError("coefficient must be a decimal string");
}

}  // namespace

OperatorX parse_operator_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("coefficients")) {
    throw FormatError("expected an object with a \"coefficients\" field");
  }
  if (j.contains("variable") && j["variable"] != "x") {
    throw FormatError("only \"x\" operators are supported");
  }
  const auto& rows = j["coefficients"];
  if (!rows.is_array()) throw FormatError("\"coefficients\" must be an array");
  std::vector<IntPoly> coeffs;
  coeffs.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw FormatError("coefficient rows must be arrays");
    std::vector<BigInt> c;
    c.reserve(row.size());
    for (const auto& v : row) c.push_back(coeff_from_json(v));
    coeffs.emplace_back(std::move(c));
  }
  return OperatorX(std::move(coeffs));
}

OperatorX load_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_operator_json(buf.str());
}

std::string operator_to_json(const OperatorX& l) {
  nlohmann::ordered_json j;
  j["variable"] = "x";
  auto rows = nlohmann::ordered_json::array();
  for (const auto& c : l.coeffs()) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& v : c.coeffs()) row.push_back(v.get_str());
    rows.push_back(std::move(row));
  }
  j["coefficients"] = std::move(rows);
  return j.dump();
}

}  // namespace pcurv
