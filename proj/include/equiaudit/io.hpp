#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "equiaudit/bounds.hpp"
#include "equiaudit/complexity.hpp"
#include "equiaudit/domain.hpp"
#include "equiaudit/generators.hpp"
#include "equiaudit/predictors.hpp"

namespace equiaudit {

using nlohmann::json;

/// Canonical serialization: keys sorted (nlohmann's default object order),
/// objects indented two spaces, arrays on one line, doubles rendered with
/// %.17g so every value round-trips and re-serialization is byte-identical.
std::string canonical_dump(const json& value);

json domain_to_json(const DomainSpec& domain, const Provenance* provenance = nullptr);

/// Parses and validates a domain spec document. Validation failures throw
/// InputError whose message starts with a JSON pointer to the fault.
DomainSpec domain_from_json(const json& document);

json audit_to_json(const AuditReport& report);
void write_audit_csv(std::ostream& os, const AuditReport& report);

json bound_to_json(const BoundReport& report);
void write_bound_csv(std::ostream& os, const BoundReport& report);

json predictor_to_json(const PredictorTable& table);

/// Expressivity configuration: {"points": [[...]], "invariance":
/// {"group": ..., "matrices": [...]}} with the same group schema as domain
/// specs.
json point_set_to_json(const PointSet& points);
PointSet point_set_from_json(const json& document);

json rademacher_to_json(const RademacherTable& unconstrained, const RademacherTable& invariant);
void write_rademacher_csv(std::ostream& os, const RademacherTable& unconstrained,
                          const RademacherTable& invariant);

// file helpers
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
json parse_json_file(const std::string& path);

}  // namespace equiaudit
