#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcat/algebroid.hpp"
#include "tcat/bundle.hpp"

namespace tcat {

using nlohmann::json;

// Reads and parses a spec file; InputError on I/O or syntax errors.
json load_spec(const std::string& path);
// Checks the top-level kind; InputError naming the expected kind otherwise.
void expect_kind(const json& j, const std::string& kind);

AlgebroidData algebroid_from_json(const json& j);
json algebroid_to_json(const AlgebroidData& A);

struct BundleSpec {
    TrivialBundle bundle;
    std::optional<PolyMap> lift;
    std::optional<ScalarAction> action;
};
BundleSpec bundle_from_json(const json& j);
Connection connection_from_json(const json& j);

// {"kind": "section", "components": [...]} or a comma-separated list of polynomials.
Section section_from_json(const json& j, const AlgebroidData& A);
Section parse_section(const std::string& text, const AlgebroidData& A);

std::vector<PolyMap> maps_from_json(const json& j);

json polymap_to_json(const PolyMap& f);

}  // namespace tcat
