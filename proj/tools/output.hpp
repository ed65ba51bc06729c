#pragma once

#include <string>
#include <vector>

namespace alphaidx::cli {

enum class Format { table, csv, json };

using Cells = std::vector<std::string>;

/// Shortest representation that reads back to the same double.
std::string real(double v);
/// Fixed-point with `digits` decimals, for human-facing tables.
std::string fixed(double v, int digits);

/// Space-aligned columns with a `#`-prefixed header line.
std::string text_table(const Cells& header, const std::vector<Cells>& rows);

/// RFC 4180 style; fields containing separators or quotes are quoted.
std::string csv_table(const Cells& header, const std::vector<Cells>& rows);

}  // namespace alphaidx::cli
