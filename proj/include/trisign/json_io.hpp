#pragma once

// JSON serialization of the domain types and atomic report writing.
// Rationals travel as exact "a/b" strings, numeric data as decimal doubles,
// complex numbers as [re, im] pairs.

#include <string>

#include "json.hpp"
#include "trisign/generators.hpp"
#include "trisign/jet.hpp"
#include "trisign/lines.hpp"
#include "trisign/secants.hpp"

namespace trisign {

using Json = nlohmann::ordered_json;

Json to_json(const RatForm& f);
RatForm ratform_from_json(const Json& j);

Json to_json(const JetCurve& C);
JetCurve jetcurve_from_json(const Json& j);

Json to_json(const Hypersurface& X);
Hypersurface hypersurface_from_json(const Json& j);

Json to_json(const SolverConfig& cfg);
// Missing keys keep their defaults, so partial configs are valid inputs.
SolverConfig solverconfig_from_json(const Json& j);

Json to_json(const PlaneConfig& cfg);
PlaneConfig planeconfig_from_json(const Json& j);

Json to_json(const Secant& M);
Json to_json(const SecantReport& rep);

Json to_json(const CrossingReport& rep);

Json to_json(const RealLine& L);

Json to_json(const GeneratedCurve& g);

// Parses a file; malformed JSON throws InvalidInput with the parser's
// line/column annotation prefixed by the path.
Json read_json_file(const std::string& path);

// Writes via a sibling temp file and rename, so readers never observe a
// partial report.  pretty = 2-space indentation, otherwise compact.
void write_json_atomic(const std::string& path, const Json& j, bool pretty);

std::string dump_json(const Json& j, bool pretty);

}  // namespace trisign
