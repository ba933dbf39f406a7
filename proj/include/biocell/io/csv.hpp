#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biocell::io {

/// Shortest decimal that round-trips to the same double; always '.' as the
/// separator, independent of the global locale.
std::string format_double(double value);

/// Locale-independent parse of the whole field; nullopt if it is not a number.
std::optional<double> parse_double(std::string_view text);

/// Quotes a field when it contains a comma, quote, or line break.
std::string quote_field(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

/// Splits one CSV record (RFC 4180 quoting). Throws std::runtime_error on an
/// unterminated quote.
std::vector<std::string> split_row(std::string_view line);

/// Reads all non-empty records from a stream, tolerating CRLF line ends. Quoted
/// fields may span lines.
std::vector<std::vector<std::string>> read_rows(std::istream& in);

}  // namespace biocell::io
