#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace esg::csv {

struct Row {
  std::size_t line = 0;  // 1-based, header is line 1
  std::vector<std::string> fields;
};

/// Reads a headed CSV. The header must match `columns` exactly (after
/// trimming whitespace and a UTF-8 BOM). Blank lines are skipped; a row
/// with the wrong field count raises ParseError.
std::vector<Row> read(std::istream& in, const std::vector<std::string>& columns);

double to_double(const Row& row, std::size_t column, std::string_view name);

/// Accepts YYYY-MM-DD with a valid month/day range.
bool is_iso_date(std::string_view text);

/// Shortest round-trip decimal form of v ("nan" / "inf" for non-finite).
std::string format(double v);

}  // namespace esg::csv
