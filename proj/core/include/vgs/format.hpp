#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vgs {

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Empty string for an absent value.
std::string format_optional(const std::optional<double>& value);

// Strict full-field parses; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace vgs
