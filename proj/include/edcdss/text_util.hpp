#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace edcdss {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Case-insensitive substring test.
bool contains_ci(std::string_view haystack, std::string_view needle);

/// Splits on '\n'; a trailing newline does not produce an empty final element.
std::vector<std::string> split_lines(std::string_view text);

/// Single-pass, non-recursive replacement of every occurrence of `from`.
std::string replace_all(std::string_view text, std::string_view from, std::string_view to);

/// Hex-encoded SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

} // namespace edcdss
