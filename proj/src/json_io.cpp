#include "rinfty/json_io.hpp"

#include <string>

#include "rinfty/errors.hpp"
#include "rinfty/smith.hpp"

namespace rinfty::json_io {

json to_json(const Integer& x) {
  if (fits_i64(x)) return to_i64(x);
  return x.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(static_cast<unsigned long>(j.get<std::uint64_t>()));
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer x;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || x.set_str(s, 10) != 0) throw ParseError("expected a decimal integer, got \"" + s + "\"");
    return x;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

namespace {

std::uint64_t u64_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw ParseError("matrix rows must be non-empty arrays");
    std::vector<Integer> r;
    for (const auto& e : row) r.push_back(integer_from_json(e));
    rows.push_back(std::move(r));
  }
  try {
    return IntMatrix::from_rows(rows);
  } catch (const DimensionError& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  }
}

IntMatrix parse_matrix(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix is not valid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

json to_json(const ComponentAction& a) {
  json j{{"p", a.p()}, {"r", a.r()}, {"d", a.d()}};
  if (a.is_scalar()) {
    j["m"] = a.multiplier();
  } else {
    j["F"] = to_json(a.block().lift());
  }
  return j;
}

ComponentAction action_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("component must be an object");
  const std::uint64_t p = u64_field(j, "p");
  const std::uint64_t r = u64_field(j, "r");
  const std::uint64_t d = u64_field(j, "d");
  if (r == 0 || r > 64 || d == 0 || d > 1u << 20) throw ParseError("component has out-of-range r or d");
  const bool has_f = j.contains("F"), has_m = j.contains("m");
  if (has_f == has_m) throw ParseError("component needs exactly one of \"F\" or \"m\"");
  try {
    if (has_m) return ComponentAction::scalar(p, static_cast<unsigned>(r), static_cast<unsigned>(d), integer_from_json(j.at("m")));
    IntMatrix f = matrix_from_json(j.at("F"));
    if (!f.is_square() || f.rows() != d) throw ParseError("component \"F\" must be a d x d matrix");
    return ComponentAction::matrix(p, static_cast<unsigned>(r), f);
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  } catch (const InvertibilityError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const BlockAutomorphism& phi) {
  json comps = json::array();
  for (const auto& b : phi.blocks) comps.push_back(to_json(b));
  return comps;
}

BlockAutomorphism block_automorphism_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("\"components\" must be a non-empty array");
  BlockAutomorphism phi;
  for (const auto& c : j) phi.blocks.push_back(action_from_json(c));
  try {
    (void)phi.tiled_group();
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
  return phi;
}

json to_json(const WreathAutomorphism& phi) {
  return json{{"k", phi.rank()}, {"M", to_json(phi.base)}, {"components", to_json(phi.lamp_action)}};
}

WreathAutomorphism witness_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("witness must be a JSON object");
  const std::uint64_t k = u64_field(j, "k");
  if (!j.contains("M")) throw ParseError("missing field \"M\"");
  if (!j.contains("components")) throw ParseError("missing field \"components\"");
  IntMatrix m = matrix_from_json(j.at("M"));
  if (!m.is_square() || m.rows() != k) throw ParseError("\"M\" must be a k x k matrix");
  BlockAutomorphism action = block_automorphism_from_json(j.at("components"));
  try {
    return WreathAutomorphism(std::move(m), std::move(action));
  } catch (const InvertibilityError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const WreathAutomorphism& phi, const OrbitCertificate& cert) {
  json j = to_json(phi);
  j["order"] = cert.order ? json(*cert.order) : json(nullptr);
  j["divisors"] = cert.divisors;
  json checks = json::array();
  for (const auto& c : cert.checks) checks.push_back({{"gamma", c.gamma}, {"component", c.component}, {"ok", c.ok}});
  j["checks"] = std::move(checks);
  j["reidemeister_zk"] = to_json(cert.reidemeister_zk);
  j["R"] = cert.reidemeister ? to_json(*cert.reidemeister) : json(nullptr);
  if (!cert.certified()) j["failure"] = cert.failure;
  return j;
}

json to_json(const Classification& c) {
  return json{{"verdict", to_string(c.verdict)},
              {"case", to_string(c.case_tag)},
              {"witness", c.witness ? to_json(*c.witness) : json(nullptr)},
              {"witness_available", c.witness_available},
              {"reason", c.reason}};
}

json to_json(const AbelianElement& a) {
  return a.coords;
}

json to_json(const SmithForm& s) {
  json diag = json::array();
  for (const auto& x : s.diagonal()) diag.push_back(to_json(x));
  return json{{"U", to_json(s.U)}, {"S", to_json(s.S)}, {"V", to_json(s.V)}, {"diagonal", std::move(diag)}};
}

}  // namespace rinfty::json_io
