#pragma once

// JSON form of specs, modules and centre reports. Scalars are written as
// canonical scalar strings, objects with sorted keys, so equal inputs give
// byte-identical files.

#include <string>

#include "json.hpp"

#include "qsl21/module.hpp"

namespace qsl21 {

using Json = nlohmann::json;

/// {family, l, lprime, params{...}, base?, transforms?}. Absent parameters
/// are null. params.phi carries phi itself next to the central value phi_l.
Json spec_to_json(const RepSpec& spec);
/// Reads the same schema; a module dump is accepted as well.
RepSpec spec_from_json(const Json& j);

/// spec_to_json plus dim, basis and the eight generator matrices as
/// row-major arrays of scalar strings.
Json module_to_json(const ModuleRep& m);
/// Rebuilds a module from a dump, using the stored matrices verbatim.
ModuleRep module_from_json(const Json& j);

Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

Json centre_report_to_json(const CentreReport& r);
Json relation_checks_to_json(const std::vector<RelationCheck>& checks);

/// Two-space indented dump with a trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace qsl21
