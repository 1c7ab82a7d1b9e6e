#pragma once

// JSON forms of the library objects and canonical serialization: sorted keys,
// floats with 17 significant digits, non-finite floats as null.

#include <json.hpp>
#include <string>

#include "dt/arcs.hpp"
#include "dt/boundary.hpp"
#include "dt/cells.hpp"

namespace dt {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j);
/// Throws "bad-input" on a parse error.
Json parse_json(const std::string& text);

Json to_json(const SurfaceSignature& sig);
SurfaceSignature signature_from_json(const Json& j);

Json to_json(const QuasiTriangulation& qt);
/// Builds the structure without validating it; throws "bad-input" on malformed fields.
QuasiTriangulation triangulation_from_json(const Json& j);

/// Map keyed by edge id.
Json edge_map(const EdgeVector& v);
EdgeVector edge_vector_from_json(const Json& j, int edge_count);

/// {"triangulation": ..., "lambda": {id: value}}
Json to_json(const DecoratedStructure& ds);
DecoratedStructure structure_from_json(const Json& j);

/// [[edge, new lambda], ...]
Json to_json(const std::vector<FlipStep>& trace);
Json to_json(const CellDescriptor& cell);
Json to_json(const DevelopedStructure& dev, const DecoratedStructure& ds);
Json to_json(const BoundaryMarking& m);

/// {"triangulation": ..., "arcs": [ids], "weights": [...], "projective": bool}
Json to_json(const WeightedArcFamily& waf);
WeightedArcFamily weighted_family_from_json(const Json& j);

Json to_json(const ModuliPoint& m);
Json to_json(const ArcComplexCatalog& cat);
Json to_json(const FlipGraph& fg);

}  // namespace dt
