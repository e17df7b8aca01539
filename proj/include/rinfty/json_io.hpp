#pragma once

#include <string_view>

#include <json.hpp>

#include "rinfty/abelian.hpp"
#include "rinfty/classifier.hpp"
#include "rinfty/matrix.hpp"
#include "rinfty/smith.hpp"
#include "rinfty/wreath.hpp"

// JSON wire formats. Integers are emitted as JSON numbers when they fit in
// 64 bits and as decimal strings otherwise; both forms are accepted on input.
namespace rinfty::json_io {

using nlohmann::json;

json to_json(const Integer& x);
Integer integer_from_json(const json& j);

/// Row-major nested arrays, e.g. [[0,1],[-1,-1]].
json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);
/// Parses matrix text; throws ParseError on malformed input.
IntMatrix parse_matrix(std::string_view text);

/// {"p","r","d","F":[[...]]} or {"p","r","d","m"}.
json to_json(const ComponentAction& a);
ComponentAction action_from_json(const json& j);

json to_json(const BlockAutomorphism& phi);
BlockAutomorphism block_automorphism_from_json(const json& j);

/// {"k", "M", "components":[...]}
json to_json(const WreathAutomorphism& phi);
WreathAutomorphism witness_from_json(const json& j);

/// Witness fields plus "order", "divisors", "checks", "reidemeister_zk", "R"
/// (null unless certified) and "failure" when not certified.
json to_json(const WreathAutomorphism& phi, const OrbitCertificate& cert);

json to_json(const Classification& c);

json to_json(const AbelianElement& a);
json to_json(const SmithForm& s);

}  // namespace rinfty::json_io
