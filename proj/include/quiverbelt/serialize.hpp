#pragma once

// JSON forms of the core types.

#include <json.hpp>

#include "quiverbelt/cycfield.hpp"
#include "quiverbelt/exmatrix.hpp"
#include "quiverbelt/seedgeom.hpp"

namespace qb {

using Json = nlohmann::json;

Json to_json(const FieldElem& a);  // {"level": d, "coeffs": ["p/q", ...], "approx": x}
FieldElem field_from_json(const Json& j);
Json to_json(const IntPoly& p);    // coefficient strings, lowest degree first
Json to_json(const ExchangeMatrix& B);
ExchangeMatrix matrix_from_json(const Json& j);
Json to_json(const PlanarPoint& p);
Json to_json(const PlanarSeed& s);
Json to_json(const SphericalSeed& s);
Json to_json(const ClassificationResult& r);

}  // namespace qb
