#pragma once

#include <string>

#include "json.hpp"

#include "bipre/audit.hpp"
#include "bipre/equivalence.hpp"

namespace bipre::io {

using Json = nlohmann::ordered_json;

/// Structured forms. Keys come out in a fixed order and nothing depends on
/// timing or addresses, so equal inputs give byte-identical documents.
Json to_json(const Violation& v);
Json to_json(const ValidationReport& r);
Json to_json(const SumIdReport& r, const GrCategory& G);
Json to_json(const RoundtripReport& r, const GrCategory& G);
Json to_json(const WitnessReport& r);
Json to_json(const Finding& f);
Json to_json(const FinAbGroup& g);
Json to_json(const ModuleBipresheaf& M);
/// Objects, base morphisms per hom set, pure family counts and identities.
Json describe_gr(const GrCategory& G, std::size_t budget);

/// Human-readable forms, one finding per line.
std::string to_text(const Violation& v);
std::string to_text(const ValidationReport& r, const std::string& indent = "  ");
std::string to_text(const SumIdReport& r, const GrCategory& G);
std::string to_text(const RoundtripReport& r, const GrCategory& G);
std::string to_text(const WitnessReport& r);
std::string to_text(const ModuleBipresheaf& M);
std::string describe_gr_text(const GrCategory& G, std::size_t budget);

}  // namespace bipre::io
