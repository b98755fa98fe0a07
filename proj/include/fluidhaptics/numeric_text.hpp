#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fluidhaptics {

// Shortest decimal form that parses back to the identical double. Integral
// values keep one decimal place ("50.0") so a reader can tell floats from
// counters on the wire and in CSV output.
std::string to_text(double value);

std::string to_text(std::uint64_t value);

// Strict parsers: the whole token must be consumed. Throw ParseError naming
// the offending token otherwise.
double parse_double(std::string_view token);
std::uint64_t parse_u64(std::string_view token);

} // namespace fluidhaptics
