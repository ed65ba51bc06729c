#include "output.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace alphaidx::cli {

std::string real(double v) { return fmt::format("{}", v); }

std::string fixed(double v, int digits) { return fmt::format("{:.{}f}", v, digits); }

std::string text_table(const Cells& header, const std::vector<Cells>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  width[0] += 2;  // room for the "# " prefix
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  auto emit = [&](const Cells& cells, bool is_header) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell = (is_header && c == 0) ? "# " + cells[c] : cells[c];
      if (c + 1 < cells.size()) cell.resize(width[c], ' ');
      line += cell;
      if (c + 1 < cells.size()) line += "  ";
    }
    out += line + "\n";
  };
  emit(header, true);
  for (const auto& row : rows) emit(row, false);
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string csv_table(const Cells& header, const std::vector<Cells>& rows) {
  std::string out;
  auto emit = [&](const Cells& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += csv_field(cells[c]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

}  // namespace alphaidx::cli
