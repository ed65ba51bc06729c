#include "alphaidx/model.hpp"

#include <map>
#include <numeric>

#include "alphaidx/errors.hpp"
#include "alphaidx/metrics.hpp"

namespace alphaidx {

ResearcherProfile ResearcherProfile::from_citations(
    std::string id, std::vector<CitationCount> citations) {
  ResearcherProfile p;
  p.id = std::move(id);
  p.h_index = alphaidx::h_index(citations);
  p.total_citations =
      std::accumulate(citations.begin(), citations.end(), CitationCount{0});
  p.paper_citations = std::move(citations);
  return p;
}

ResearcherProfile ResearcherProfile::from_summary(
    std::string id, HIndex h, std::optional<CitationCount> total) {
  ResearcherProfile p;
  p.id = std::move(id);
  p.h_index = h;
  p.total_citations = total;
  return p;
}

Group::Group(std::string id, std::string label,
             std::optional<std::string> quality_tag,
             std::vector<ResearcherProfile> members)
    : id_(std::move(id)),
      label_(std::move(label)),
      quality_tag_(std::move(quality_tag)),
      members_(std::move(members)) {
  if (members_.empty()) {
    throw InvalidArgument("group '" + id_ + "' has no members");
  }
}

std::vector<HIndex> Group::h_values() const {
  std::vector<HIndex> hs;
  hs.reserve(members_.size());
  for (const auto& m : members_) hs.push_back(m.h_index);
  return hs;
}

namespace {

void check_profile(const Group& g, const ResearcherProfile& m,
                   std::vector<Violation>& out) {
  auto add = [&](std::string reason) {
    out.push_back({g.id(), m.id, std::move(reason)});
  };
  if (m.id.empty()) add("blank member id");
  if (m.paper_citations) {
    const auto& cites = *m.paper_citations;
    const HIndex true_h = h_index(cites);
    if (true_h != m.h_index) {
      add("declared h_index " + std::to_string(m.h_index) +
          " but paper_citations give h = " + std::to_string(true_h));
    }
    const CitationCount sum =
        std::accumulate(cites.begin(), cites.end(), CitationCount{0});
    if (!m.total_citations) {
      add("paper_citations present but total_citations missing");
    } else if (*m.total_citations != sum) {
      add("declared total_citations " + std::to_string(*m.total_citations) +
          " but paper_citations sum to " + std::to_string(sum));
    }
    if (m.h_index > cites.size()) {
      add("h_index " + std::to_string(m.h_index) + " exceeds paper count " +
          std::to_string(cites.size()));
    }
  }
  if (m.total_citations && m.h_index > *m.total_citations) {
    add("h_index " + std::to_string(m.h_index) + " exceeds total_citations " +
        std::to_string(*m.total_citations));
  }
}

}  // namespace

std::vector<Violation> validate(const Dataset& dataset) {
  std::vector<Violation> out;

  std::map<std::string, std::size_t> group_ids;
  for (const auto& g : dataset.groups) ++group_ids[g.id()];
  for (const auto& [id, count] : group_ids) {
    if (count > 1) {
      out.push_back({id, "", "duplicate group id (" + std::to_string(count) +
                                 " groups)"});
    }
  }

  for (const auto& g : dataset.groups) {
    if (g.id().empty()) out.push_back({"", "", "blank group id"});
    std::map<std::string, std::size_t> member_ids;
    for (const auto& m : g.members()) {
      ++member_ids[m.id];
      check_profile(g, m, out);
    }
    for (const auto& [id, count] : member_ids) {
      if (count > 1) {
        out.push_back({g.id(), id, "duplicate member id (" +
                                       std::to_string(count) + " entries)"});
      }
    }
  }
  return out;
}

}  // namespace alphaidx
