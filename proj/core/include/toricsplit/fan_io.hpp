#pragma once

#include <string>
#include <string_view>

#include "toricsplit/factorize.hpp"
#include "toricsplit/fan.hpp"

namespace toricsplit {

/// Reads a fan document {"dim": n, "rays": [[...], ...], "maximal_cones": [[...], ...]}.
///
/// Rays must be primitive and pairwise distinct; cone entries must index
/// existing rays. Violations throw ParseError; the message carries the JSON
/// path of the offending element (e.g. `maximal_cones[2][1]`) and, for
/// syntax errors, line and column.
Fan parse_fan_json(std::string_view text);

/// Canonical JSON form (sorted keys, compact).
std::string fan_to_json(const Fan& f, int indent = -1);

std::string report_to_json(const ValidationReport& r);
std::string factorization_to_json(const FactorizationResult& r);

/// "line L, column C" for a byte offset into `text`.
std::string describe_offset(std::string_view text, std::size_t offset);

}  // namespace toricsplit
