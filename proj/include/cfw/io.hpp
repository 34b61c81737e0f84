#pragma once

// JSON instance files and certificate serialization.
//
// Complex numbers are written as "re+imj" strings; plain JSON numbers are
// accepted as real scalars. Matrices are row-major arrays of rows.
// Read errors carry the JSON pointer of the offending element.

#include <optional>
#include <string>

#include "json.hpp"

#include "cfw/certify.hpp"
#include "cfw/weaving.hpp"

namespace cfw {

using json = nlohmann::ordered_json;

std::string format_complex(Scalar z);
Scalar parse_complex(const json& j, const std::string& where);

json matrix_to_json(const Operator& M);
/// Row-major matrix with `rows` rows (needed when there are no columns).
Operator matrix_from_json(const json& j, Index rows, const std::string& where);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j, Index dim, const std::string& where);

/// A loaded instance: always a fusion family; product lifts also keep the
/// lifted objects.
struct Instance {
  WovenFamily family;
  std::optional<LiftedProduct> lifted;
  /// Provenance (generator name and parameters), echoed into files.
  json source;
};

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j, double rank_tol = kRankTol);

json partition_to_json(const Partition& p);
json universal_bounds_to_json(const UniversalBounds& b);
json certificate_to_json(const Certificate& c);

/// Parses JSON text; syntax errors become InputError with line and column.
json parse_json_text(const std::string& text, const std::string& origin);
json read_json_file(const std::string& path);

/// Thrown for a schema violation at a JSON location.
InputError schema_error(const std::string& where, const std::string& what);

}  // namespace cfw
