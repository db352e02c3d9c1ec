#pragma once

#include "iepg/certificate.hpp"
#include "iepg/errors.hpp"
#include "iepg/graph.hpp"
#include "iepg/json_fwd.hpp"
#include "iepg/multiplicity.hpp"
#include "iepg/ssp.hpp"
#include "iepg/symmat.hpp"

// Wire formats:
//   graph     {"n": int, "edges": [[i, j], ...]}   1-based, i < j on output
//   matrix    {"n": int, "rows": [[...], ...]}
//   spectrum  [{"value": x, "mult": m}, ...]
//   multiplicity matrix  [[row], ...]
// Parsers throw InputError naming the offending field.

namespace iepg {

void to_json(Json& j, const Graph& g);
void from_json(const Json& j, Graph& g);

void to_json(Json& j, const SymMatrix& m);
void from_json(const Json& j, SymMatrix& m);

void to_json(Json& j, const Spectrum& s);

void to_json(Json& j, const MultiplicityMatrix& m);
void from_json(const Json& j, MultiplicityMatrix& m);

void to_json(Json& j, const SspReport& r);
void from_json(const Json& j, SspReport& r);
void to_json(Json& j, const PatternReport& r);
void from_json(const Json& j, PatternReport& r);
void to_json(Json& j, const CompatibilityReport& r);

void to_json(Json& j, const Certificate& c);
void from_json(const Json& j, Certificate& c);

void to_json(Json& j, const VerifyReport& r);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const char* field);

/// `j[field]` or InputError("missing field '<field>'").
const Json& require(const Json& j, const char* field);

/// Parses with field context in error messages.
template <class T>
T parse_field(const Json& j, const char* field) {
  const Json& value = require(j, field);
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field '") + field + "': " + e.what());
  }
}

}  // namespace iepg
