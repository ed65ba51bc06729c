#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace alphaidx {

using HIndex = std::uint32_t;
using CitationCount = std::uint64_t;

/// One group member. Profiles either carry the per-paper citation list (and
/// the derived h-index and total) or only the summary fields.
struct ResearcherProfile {
  std::string id;
  std::optional<std::vector<CitationCount>> paper_citations;
  HIndex h_index = 0;
  std::optional<CitationCount> total_citations;

  /// Builds a profile whose h-index and total are derived from `citations`.
  static ResearcherProfile from_citations(std::string id,
                                          std::vector<CitationCount> citations);
  static ResearcherProfile from_summary(std::string id, HIndex h_index,
                                        std::optional<CitationCount> total);

  bool has_paper_data() const { return paper_citations.has_value(); }

  bool operator==(const ResearcherProfile&) const = default;
};

/// A named committee or board. Never empty.
class Group {
 public:
  /// Throws InvalidArgument when `members` is empty.
  Group(std::string id, std::string label,
        std::optional<std::string> quality_tag,
        std::vector<ResearcherProfile> members);

  const std::string& id() const { return id_; }
  const std::string& label() const { return label_; }
  const std::optional<std::string>& quality_tag() const { return quality_tag_; }
  const std::vector<ResearcherProfile>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  /// Member h-indexes in member order.
  std::vector<HIndex> h_values() const;

  bool operator==(const Group&) const = default;

 private:
  std::string id_;
  std::string label_;
  std::optional<std::string> quality_tag_;
  std::vector<ResearcherProfile> members_;
};

struct Dataset {
  std::vector<Group> groups;

  bool operator==(const Dataset&) const = default;
};

struct Violation {
  std::string group_id;
  std::string member_id;  // empty for group-level violations
  std::string reason;

  auto operator<=>(const Violation&) const = default;
};

/// Every invariant violation in `dataset`; empty iff the dataset is valid.
std::vector<Violation> validate(const Dataset& dataset);

}  // namespace alphaidx
