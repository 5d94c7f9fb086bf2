#pragma once

// Parameter documents: loading, validation and serialization.
//
// A document is JSON (comments allowed) with the sections design, nodes, eol,
// appdev, operation, options, testcases and provenance. Every section is
// optional and is applied on top of the bundled defaults. Unknown keys are
// rejected. Quantities accept either the canonical key (e.g.
// "annual_energy_kwh") or one human-unit alias (e.g. "annual_energy_gwh"),
// never both. serialize() emits canonical keys only.

#include <string>
#include <string_view>
#include <vector>

#include "greenfpga/parameters.hpp"

namespace greenfpga {

enum class Severity { Error, Warning };

std::string_view to_string(Severity s);

struct Finding {
  Severity severity = Severity::Error;
  std::string path;  // dotted field path, e.g. "nodes.10.yield"
  std::string message;
};

// Hard errors for invariant violations, warnings for values outside the
// published plausibility ranges. Never throws.
std::vector<Finding> validate(const ParameterSet& p);

bool has_errors(const std::vector<Finding>& findings);

// Parses the per-node CSV (per cm^2 columns, '#' comment lines). Comment lines
// are returned in `header` when given.
NodeTable parse_node_csv(std::string_view csv, std::string* header = nullptr);

// Bundled defaults (embedded data files). Validated once; cheap to copy.
const ParameterSet& bundled_defaults();

// Bundled testcase library.
const TestcaseLibrary& builtin_testcases();

// Applies `document` on top of `base` and validates the result. Throws
// ParseError, UnknownKeyError or ValidationError (first hard error).
ParameterSet load_parameters(std::string_view document, const ParameterSet& base);
ParameterSet load_parameters(std::string_view document);

// Replaces the node table with a CSV dataset, then validates.
ParameterSet with_node_csv(ParameterSet p, std::string_view csv);

// Canonical JSON document; load_parameters(serialize(p)) == p.
std::string serialize(const ParameterSet& p);

}  // namespace greenfpga
