#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "alphaidx/model.hpp"

namespace alphaidx {

struct IngestReport {
  std::optional<Dataset> dataset;  // present iff errors is empty
  std::vector<std::string> warnings;
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
};

enum class Delimiter { comma, tab };

/// Rows `group_id,researcher_id,paper_id,citations`, matched by header name.
/// Member h-index and total are computed from the per-paper counts.
IngestReport read_long_form(std::istream& in, Delimiter delimiter = Delimiter::comma);

/// Rows `group_id,researcher_id,h_index,total_citations`; the last column may
/// be empty.
IngestReport read_summary_form(std::istream& in, Delimiter delimiter = Delimiter::comma);

/// Chooses long or summary form from the header.
IngestReport read_tabular(std::istream& in, Delimiter delimiter = Delimiter::comma);

nlohmann::json write_dataset(const Dataset& dataset);
/// Strict reader: unknown keys, wrong types and invariant violations are
/// reported with JSON-pointer paths.
IngestReport read_dataset(const nlohmann::json& document);
IngestReport read_dataset_text(std::string_view text);

}  // namespace alphaidx
