#include "fluidhaptics/numeric_text.hpp"

#include "fluidhaptics/errors.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace fluidhaptics {

std::string to_text(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw EncodeError("numeric value cannot be formatted");
    }
    std::string out(buf, ptr);
    if (out.find_first_of(".en") == std::string::npos) {
        out += ".0";
    }
    return out;
}

std::string to_text(std::uint64_t value) {
    return std::to_string(value);
}

double parse_double(std::string_view token) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("not a number: '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite number: '" + std::string(token) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view token) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("not an unsigned integer: '" + std::string(token) + "'");
    }
    return value;
}

} // namespace fluidhaptics
