#include <limits>
#include <set>
#include <string>

#include "alphaidx/errors.hpp"
#include "alphaidx/ingest.hpp"
#include "alphaidx/metrics.hpp"

namespace alphaidx {

using nlohmann::json;

json write_dataset(const Dataset& dataset) {
  json groups = json::array();
  for (const auto& g : dataset.groups) {
    json members = json::array();
    for (const auto& m : g.members()) {
      json jm = {{"id", m.id}, {"h_index", m.h_index}};
      if (m.total_citations) jm["total_citations"] = *m.total_citations;
      if (m.paper_citations) jm["paper_citations"] = *m.paper_citations;
      members.push_back(std::move(jm));
    }
    json jg = {{"id", g.id()}, {"label", g.label()}, {"members", std::move(members)}};
    if (g.quality_tag()) jg["quality_tag"] = *g.quality_tag();
    groups.push_back(std::move(jg));
  }
  return json{{"groups", std::move(groups)}};
}

namespace {

class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back((path.empty() ? "/" : path) + ": " + message);
  }

  bool only_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    bool ok = true;
    for (const auto& [key, _] : obj.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) {
        fail(path + "/" + key, "unknown key");
        ok = false;
      }
    }
    return ok;
  }

  std::optional<std::string> string_field(const json& obj, const std::string& path,
                                          const char* key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "/" + key, "missing required key");
      return std::nullopt;
    }
    if (!it->is_string()) {
      fail(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  template <typename T>
  std::optional<T> unsigned_value(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() ||
        v.get<std::uint64_t>() > std::numeric_limits<T>::max()) {
      fail(path, "expected a non-negative integer");
      return std::nullopt;
    }
    return static_cast<T>(v.get<std::uint64_t>());
  }

  std::optional<ResearcherProfile> member(const json& jm, const std::string& path) {
    if (!jm.is_object()) {
      fail(path, "expected an object");
      return std::nullopt;
    }
    only_keys(jm, path, {"id", "h_index", "total_citations", "paper_citations"});
    const std::size_t before = errors.size();
    ResearcherProfile p;
    if (auto id = string_field(jm, path, "id", true)) p.id = *id;

    if (auto it = jm.find("paper_citations"); it != jm.end() && !it->is_null()) {
      if (!it->is_array()) {
        fail(path + "/paper_citations", "expected an array");
      } else {
        std::vector<CitationCount> cites;
        for (std::size_t i = 0; i < it->size(); ++i) {
          if (auto c = unsigned_value<CitationCount>((*it)[i],
                                                     path + "/paper_citations/" + std::to_string(i))) {
            cites.push_back(*c);
          }
        }
        p.paper_citations = std::move(cites);
      }
    }
    if (auto it = jm.find("total_citations"); it != jm.end() && !it->is_null()) {
      p.total_citations = unsigned_value<CitationCount>(*it, path + "/total_citations");
    }
    if (auto it = jm.find("h_index"); it != jm.end()) {
      if (auto h = unsigned_value<HIndex>(*it, path + "/h_index")) p.h_index = *h;
    } else if (p.paper_citations) {
      p.h_index = h_index(*p.paper_citations);
    } else {
      fail(path + "/h_index", "missing required key");
    }
    if (p.paper_citations && !p.total_citations) {
      CitationCount sum = 0;
      for (auto c : *p.paper_citations) sum += c;
      p.total_citations = sum;
    }
    if (errors.size() != before) return std::nullopt;
    return p;
  }

  std::optional<Group> group(const json& jg, const std::string& path) {
    if (!jg.is_object()) {
      fail(path, "expected an object");
      return std::nullopt;
    }
    only_keys(jg, path, {"id", "label", "quality_tag", "members"});
    const std::size_t before = errors.size();
    auto id = string_field(jg, path, "id", true);
    auto label = string_field(jg, path, "label", false);
    std::optional<std::string> tag;
    if (auto it = jg.find("quality_tag"); it != jg.end() && !it->is_null()) {
      tag = string_field(jg, path, "quality_tag", true);
    }
    std::vector<ResearcherProfile> members;
    const auto it = jg.find("members");
    if (it == jg.end()) {
      fail(path + "/members", "missing required key");
    } else if (!it->is_array()) {
      fail(path + "/members", "expected an array");
    } else if (it->empty()) {
      fail(path + "/members", "a group needs at least one member");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (auto m = member((*it)[i], path + "/members/" + std::to_string(i))) {
          members.push_back(std::move(*m));
        }
      }
    }
    if (errors.size() != before || !id) return std::nullopt;
    return Group(*id, label.value_or(*id), std::move(tag), std::move(members));
  }
};

}  // namespace

IngestReport read_dataset(const json& document) {
  IngestReport report;
  Reader reader;
  Dataset ds;
  if (!document.is_object()) {
    reader.fail("", "expected an object");
  } else {
    reader.only_keys(document, "", {"groups"});
    const auto it = document.find("groups");
    if (it == document.end()) {
      reader.fail("/groups", "missing required key");
    } else if (!it->is_array()) {
      reader.fail("/groups", "expected an array");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (auto g = reader.group((*it)[i], "/groups/" + std::to_string(i))) {
          ds.groups.push_back(std::move(*g));
        }
      }
    }
  }
  report.errors = std::move(reader.errors);
  if (!report.errors.empty()) return report;

  // Map violations back to document paths.
  for (const auto& v : validate(ds)) {
    std::string path = "/groups";
    for (std::size_t gi = 0; gi < ds.groups.size(); ++gi) {
      if (ds.groups[gi].id() != v.group_id) continue;
      path += "/" + std::to_string(gi);
      if (!v.member_id.empty()) {
        const auto& ms = ds.groups[gi].members();
        for (std::size_t mi = 0; mi < ms.size(); ++mi) {
          if (ms[mi].id == v.member_id) {
            path += "/members/" + std::to_string(mi);
            break;
          }
        }
      }
      break;
    }
    report.errors.push_back(path + ": group '" + v.group_id + "'" +
                            (v.member_id.empty() ? "" : " member '" + v.member_id + "'") +
                            ": " + v.reason);
  }
  for (const auto& g : ds.groups) {
    for (const auto& m : g.members()) {
      if (!m.total_citations) {
        report.warnings.push_back("group '" + g.id() + "' member '" + m.id +
                                  "' has no total_citations; citation-based analyses "
                                  "will exclude it");
      }
    }
  }
  if (report.errors.empty()) report.dataset = std::move(ds);
  return report;
}

IngestReport read_dataset_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    IngestReport report;
    report.errors.push_back("malformed JSON near byte " + std::to_string(e.byte));
    return report;
  }
  return read_dataset(doc);
}

}  // namespace alphaidx
