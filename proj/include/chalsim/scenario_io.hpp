#pragma once

#include <string>
#include <string_view>

#include "chalsim/model.hpp"

namespace chalsim {

// Parses a scenario document. The schema is strict: unknown keys are
// rejected, currency amounts and fractions must be decimal strings (never
// JSON floats), counts and the seed must be JSON integers. The parsed
// scenario is fully validated before it is returned.
Scenario parse_scenario(std::string_view text);

// Canonical rendering: keys sorted, two-space indent, decimal strings for all
// amounts, trailing newline. parse(serialize(s)) reproduces s, and
// serialize(parse(t)) is byte-stable for any accepted t.
std::string serialize_scenario(const Scenario& scenario);

} // namespace chalsim
