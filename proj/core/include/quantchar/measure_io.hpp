#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "quantchar/measures.hpp"

namespace quantchar {

// Measure files:
//   {"kind": "dirac",     "params": {"c": 0}}
//   {"kind": "uniform",   "params": {"a": 0, "b": 1}}
//   {"kind": "normal",    "params": {"m": 0, "s": 1}}
//   {"kind": "lognormal", "params": {"m": 0, "s": 1}}
//   {"kind": "discrete",  "atoms": [[0], [1]], "weights": [0.5, 0.5]}
// Discrete atoms may also be bare numbers; omitted weights mean uniform.
// Malformed input throws InvalidArgument naming the offending field.

Measure measure_from_json(std::string_view text);
Measure load_measure(const std::filesystem::path& path);

/// Inverse of measure_from_json; throws Unsupported for sampler-backed laws.
std::string measure_to_json(const Measure& mu);

}  // namespace quantchar
