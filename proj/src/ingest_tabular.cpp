#include <charconv>
#include <istream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "alphaidx/errors.hpp"
#include "alphaidx/ingest.hpp"
#include "alphaidx/metrics.hpp"

namespace alphaidx {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// One record per line; double quotes protect delimiters, "" is a literal quote.
std::vector<std::string> split_record(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(trim(field));
  return out;
}

struct Table {
  std::map<std::string, std::size_t> columns;
  std::size_t width = 0;
  std::vector<Row> rows;
};

Table read_table(std::istream& in, Delimiter delimiter) {
  const char delim = delimiter == Delimiter::tab ? '\t' : ',';
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_record(line, delim);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) table.columns.emplace(fields[i], i);
      table.width = fields.size();
      have_header = true;
      continue;
    }
    table.rows.push_back({line_no, std::move(fields)});
  }
  return table;
}

std::string missing_columns(const Table& t, std::initializer_list<const char*> names) {
  std::string missing;
  for (const char* n : names) {
    if (!t.columns.contains(n)) missing += (missing.empty() ? "" : ", ") + std::string(n);
  }
  return missing;
}

template <typename T>
bool parse_unsigned(const std::string& s, T& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string row_prefix(const Row& r) { return "row " + std::to_string(r.line) + ": "; }

// Groups in first-appearance order, each with members in first-appearance order.
template <typename Member>
struct Grouping {
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<std::string>> member_order;
  std::map<std::pair<std::string, std::string>, Member> members;

  Member& at(const std::string& g, const std::string& r, bool& fresh) {
    if (!member_order.contains(g)) group_order.push_back(g);
    auto& order = member_order[g];
    const auto key = std::make_pair(g, r);
    fresh = !members.contains(key);
    if (fresh) order.push_back(r);
    return members[key];
  }
};

template <typename Member, typename Build>
Dataset assemble(const Grouping<Member>& grouping, Build build) {
  Dataset ds;
  for (const auto& g : grouping.group_order) {
    std::vector<ResearcherProfile> profiles;
    for (const auto& r : grouping.member_order.at(g)) {
      profiles.push_back(build(r, grouping.members.at({g, r})));
    }
    ds.groups.emplace_back(g, g, std::nullopt, std::move(profiles));
  }
  return ds;
}

void finish(IngestReport& report, Dataset ds) {
  for (const auto& v : validate(ds)) {
    report.errors.push_back("group '" + v.group_id + "'" +
                            (v.member_id.empty() ? "" : " member '" + v.member_id + "'") +
                            ": " + v.reason);
  }
  if (report.errors.empty()) report.dataset = std::move(ds);
}

bool check_shape(const Table& t, IngestReport& report) {
  if (t.rows.empty()) {
    report.errors.push_back("no rows");
    return false;
  }
  return true;
}

}  // namespace

IngestReport read_long_form(std::istream& in, Delimiter delimiter) {
  IngestReport report;
  const Table t = read_table(in, delimiter);
  if (t.columns.empty()) {
    report.errors.push_back("no rows");
    return report;
  }
  if (auto m = missing_columns(t, {"group_id", "researcher_id", "paper_id", "citations"});
      !m.empty()) {
    report.errors.push_back("header is missing column(s): " + m);
    return report;
  }
  if (!check_shape(t, report)) return report;

  const auto gi = t.columns.at("group_id"), ri = t.columns.at("researcher_id"),
             pi = t.columns.at("paper_id"), ci = t.columns.at("citations");
  struct Papers {
    std::vector<CitationCount> citations;
    std::set<std::string> paper_ids;
  };
  Grouping<Papers> grouping;
  for (const auto& row : t.rows) {
    if (row.fields.size() != t.width) {
      report.errors.push_back(row_prefix(row) + "expected " + std::to_string(t.width) +
                              " fields, found " + std::to_string(row.fields.size()));
      continue;
    }
    const auto& g = row.fields[gi];
    const auto& r = row.fields[ri];
    const auto& p = row.fields[pi];
    const auto& c = row.fields[ci];
    bool bad = false;
    if (g.empty()) {
      report.errors.push_back(row_prefix(row) + "blank group_id");
      bad = true;
    }
    if (r.empty()) {
      report.errors.push_back(row_prefix(row) + "blank researcher_id");
      bad = true;
    }
    if (p.empty()) {
      report.errors.push_back(row_prefix(row) + "blank paper_id");
      bad = true;
    }
    CitationCount cites = 0;
    if (!parse_unsigned(c, cites)) {
      report.errors.push_back(row_prefix(row) +
                              "citations must be a non-negative integer, got '" + c + "'");
      bad = true;
    }
    if (bad) continue;
    bool fresh = false;
    auto& papers = grouping.at(g, r, fresh);
    if (!papers.paper_ids.insert(p).second) {
      report.errors.push_back(row_prefix(row) + "duplicate paper_id '" + p +
                              "' for researcher '" + r + "' in group '" + g + "'");
      continue;
    }
    papers.citations.push_back(cites);
  }
  if (!report.errors.empty()) return report;

  finish(report, assemble(grouping, [](const std::string& id, const Papers& p) {
           return ResearcherProfile::from_citations(id, p.citations);
         }));
  return report;
}

IngestReport read_summary_form(std::istream& in, Delimiter delimiter) {
  IngestReport report;
  const Table t = read_table(in, delimiter);
  if (t.columns.empty()) {
    report.errors.push_back("no rows");
    return report;
  }
  if (auto m = missing_columns(t, {"group_id", "researcher_id", "h_index", "total_citations"});
      !m.empty()) {
    report.errors.push_back("header is missing column(s): " + m);
    return report;
  }
  if (!check_shape(t, report)) return report;

  const auto gi = t.columns.at("group_id"), ri = t.columns.at("researcher_id"),
             hi = t.columns.at("h_index"), ti = t.columns.at("total_citations");
  struct Summary {
    HIndex h = 0;
    std::optional<CitationCount> total;
  };
  Grouping<Summary> grouping;
  for (const auto& row : t.rows) {
    // A trailing empty total may be written without its delimiter.
    const bool short_total = row.fields.size() + 1 == t.width && ti + 1 == t.width;
    if (row.fields.size() != t.width && !short_total) {
      report.errors.push_back(row_prefix(row) + "expected " + std::to_string(t.width) +
                              " fields, found " + std::to_string(row.fields.size()));
      continue;
    }
    const auto& g = row.fields[gi];
    const auto& r = row.fields[ri];
    const auto& h = row.fields[hi];
    const std::string total_text = short_total ? std::string() : row.fields[ti];
    bool bad = false;
    if (g.empty()) {
      report.errors.push_back(row_prefix(row) + "blank group_id");
      bad = true;
    }
    if (r.empty()) {
      report.errors.push_back(row_prefix(row) + "blank researcher_id");
      bad = true;
    }
    Summary s;
    if (!parse_unsigned(h, s.h)) {
      report.errors.push_back(row_prefix(row) +
                              "h_index must be a non-negative integer, got '" + h + "'");
      bad = true;
    }
    if (!total_text.empty()) {
      CitationCount total = 0;
      if (!parse_unsigned(total_text, total)) {
        report.errors.push_back(row_prefix(row) +
                                "total_citations must be a non-negative integer, got '" +
                                total_text + "'");
        bad = true;
      } else {
        s.total = total;
      }
    }
    if (bad) continue;
    if (s.total && s.h > *s.total) {
      report.errors.push_back(row_prefix(row) + "h_index " + std::to_string(s.h) +
                              " exceeds total_citations " + std::to_string(*s.total) +
                              " (h papers with >= h citations need >= h citations)");
      continue;
    }
    bool fresh = false;
    auto& slot = grouping.at(g, r, fresh);
    if (!fresh) {
      report.errors.push_back(row_prefix(row) + "duplicate researcher '" + r +
                              "' in group '" + g + "'");
      continue;
    }
    slot = s;
    if (!s.total) {
      report.warnings.push_back(row_prefix(row) + "researcher '" + r + "' in group '" + g +
                                "' has no total_citations; citation-based analyses "
                                "will exclude it");
    }
  }
  if (!report.errors.empty()) return report;

  finish(report, assemble(grouping, [](const std::string& id, const Summary& s) {
           return ResearcherProfile::from_summary(id, s.h, s.total);
         }));
  return report;
}

IngestReport read_tabular(std::istream& in, Delimiter delimiter) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::istringstream probe(text);
  const Table header_only = [&] {
    std::string line;
    while (std::getline(probe, line)) {
      if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if (!trim(line).empty()) break;
    }
    std::istringstream one(line);
    return read_table(one, delimiter);
  }();
  std::istringstream body(text);
  if (header_only.columns.contains("paper_id") || header_only.columns.contains("citations")) {
    return read_long_form(body, delimiter);
  }
  if (header_only.columns.contains("h_index")) return read_summary_form(body, delimiter);
  IngestReport report;
  if (header_only.columns.empty()) {
    report.errors.push_back("no rows");
  } else {
    report.errors.push_back(
        "unrecognised header: expected long form (group_id,researcher_id,paper_id,"
        "citations) or summary form (group_id,researcher_id,h_index,total_citations)");
  }
  return report;
}

}  // namespace alphaidx
