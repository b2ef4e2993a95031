#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sectsum {

// Bad flags or flag combinations. The CLI maps this to its own exit code,
// distinct from data errors.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable/unmatchable input data (missing dirs, zero matched ids, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_ascii_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string lower_ascii(std::string_view s);
std::string_view trim_view(std::string_view s);
std::string trim(std::string_view s);

// Collapses every internal whitespace run to a single space and trims the ends.
std::string collapse_ws(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

// Fixed-point decimal rendering, locale-independent.
std::string format_double(double v, int decimals);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Minimal RFC-4180 style CSV handling (quotes fields containing , " or newline).
std::string csv_escape(std::string_view field);
std::vector<std::string> parse_csv_line(std::string_view line);

}  // namespace sectsum
