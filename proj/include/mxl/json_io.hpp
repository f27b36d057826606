#pragma once

#include "mxl/braids.hpp"
#include "mxl/linker.hpp"
#include "mxl/newton.hpp"
#include "mxl/nondegen.hpp"
#include "mxl/realizer.hpp"

#include <json.hpp>

namespace mxl {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(Complex z);
/// Exact literal in the expression grammar.
Json to_json(const GaussRational& c);
/// Frequency -> exact coefficient, ascending frequency.
Json to_json(const TrigPoly& p);
Json to_json(const LoopPoly& g);
Json to_json(const StructureReport& s);
Json to_json(const NewtonData& nd);
Json to_json(const Verdict& v);
Json to_json(const FaceVerdict& v);
Json to_json(const NondegReport& r);
Json to_json(const BraidWord& w);
Json to_json(const GeometricBraid& b, bool with_samples = false);
Json to_json(const FibrationCertificate& c);
Json to_json(const LinkDescription& d);
Json to_json(const TowerSpec& s);
Json to_json(const RealizationReport& r);

/// Coefficients may be expression literals ("-1/4", "(1+2i)") or numbers, rounded to 2^-40.
GaussRational coefficient_from_json(const Json& j);
/// {"terms": [{"z": a, "zbar": b, "freq": f, "c": ...}]}; throws std::invalid_argument.
LoopPoly loop_from_json(const Json& j);

/// {"levels": [{"word": "1 1", "strands": 2, "affine": false} | {"loop": {...}}]}.
std::vector<TowerInput> tower_from_json(const Json& j, int samples = 1024);

}  // namespace mxl
