#include "alphaidx/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "alphaidx/errors.hpp"
#include "alphaidx/metrics.hpp"

namespace alphaidx {

namespace {

// Sum of h_group over samples [begin, end).
std::uint64_t sample_range(std::span<const HIndex> hs, std::size_t sample_size,
                           const RandomStream& stream, std::size_t begin,
                           std::size_t end) {
  std::vector<HIndex> pool(hs.size());
  std::uint64_t sum = 0;
  for (std::size_t j = begin; j < end; ++j) {
    std::copy(hs.begin(), hs.end(), pool.begin());
    RandomStream rng = stream.substream(j);
    // Partial Fisher-Yates: pool[0, sample_size) becomes a uniform subset.
    for (std::size_t i = 0; i < sample_size; ++i) {
      const std::size_t pick = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[pick]);
    }
    sum += h_group(std::span<const HIndex>(pool.data(), sample_size));
  }
  return sum;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

double relative_h_group(std::span<const HIndex> hs, std::size_t sample_size,
                        std::size_t n_sample, const RandomStream& stream,
                        unsigned threads) {
  if (n_sample == 0) throw InvalidArgument("n_sample must be at least 1");
  if (sample_size == 0) throw InvalidArgument("sample_size must be at least 1");
  if (sample_size > hs.size()) {
    throw SampleTooLarge("sample size " + std::to_string(sample_size) +
                         " exceeds group size " + std::to_string(hs.size()));
  }

  const std::size_t workers =
      std::min<std::size_t>(resolve_threads(threads), n_sample);
  std::uint64_t total = 0;
  if (workers <= 1) {
    total = sample_range(hs, sample_size, stream, 0, n_sample);
  } else {
    // Integer partial sums make the merge independent of scheduling.
    std::vector<std::uint64_t> partial(workers, 0);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n_sample * w / workers;
        const std::size_t end = n_sample * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
          partial[w] = sample_range(hs, sample_size, stream, begin, end);
        });
      }
    }
    total = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  }
  return static_cast<double>(total) / static_cast<double>(n_sample);
}

double relative_h_group(const Group& target, std::size_t sample_size,
                        std::size_t n_sample, const RandomStream& stream,
                        unsigned threads) {
  const auto hs = target.h_values();
  try {
    return relative_h_group(hs, sample_size, n_sample, stream, threads);
  } catch (const SampleTooLarge& e) {
    throw SampleTooLarge("group '" + target.id() + "': " + e.what());
  }
}

namespace {

void assign_alpha_and_rank(std::vector<RankingRow>& rows, double gini_floor,
                           RankingProvenance& provenance) {
  double denom = 0.0;
  std::vector<double> weight(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    double g = row.gini;
    if (!(g >= gini_floor)) {
      g = gini_floor;
      row.gini_floored = true;
      provenance.floored_groups.push_back(row.group_id);
    }
    weight[i] = row.relative_h_group / g;
    denom += weight[i];
  }
  if (!(denom > 0.0)) {
    throw DegenerateGroup("every relative h-group is zero; alpha undefined");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].alpha = weight[i] / denom;
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.group_id < b.group_id;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  std::sort(provenance.floored_groups.begin(), provenance.floored_groups.end());
}

void require_unique_ids(const std::vector<std::string>& ids) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw InvalidArgument("duplicate group id '" + id + "'");
    }
  }
}

}  // namespace

RankingReport rank(std::span<const Group> groups, const RankingConfig& config) {
  if (groups.size() < 2) {
    throw TooFewGroups("ranking needs at least 2 groups, got " +
                       std::to_string(groups.size()));
  }
  if (config.n_sample == 0) throw InvalidArgument("n_sample must be at least 1");
  if (!(config.gini_floor > 0.0)) {
    throw InvalidArgument("gini_floor must be positive");
  }
  {
    std::vector<std::string> ids;
    for (const auto& g : groups) ids.push_back(g.id());
    require_unique_ids(ids);
  }

  const auto smallest = std::min_element(
      groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.id() < b.id();
      });

  RankingReport report;
  std::size_t sample_size = smallest->size();
  if (config.reference_size) {
    sample_size = *config.reference_size;
    if (sample_size == 0) {
      throw InvalidArgument("reference size must be at least 1");
    }
    if (sample_size > smallest->size()) {
      throw SampleTooLarge("reference size " + std::to_string(sample_size) +
                           " exceeds the smallest group '" + smallest->id() +
                           "' (" + std::to_string(smallest->size()) + ")");
    }
  }
  if (sample_size == smallest->size()) report.reference_group_id = smallest->id();
  report.reference_size = sample_size;
  report.provenance.seed = config.seed;
  report.provenance.n_sample = config.n_sample;
  report.provenance.gini_floor = config.gini_floor;

  const RandomStream master(config.seed);
  report.rows.reserve(groups.size());
  for (std::size_t l = 0; l < groups.size(); ++l) {
    const Group& g = groups[l];
    RankingRow row;
    row.group_id = g.id();
    row.gini = gini(g);
    row.h_group = h_group(g);
    row.relative_h_group = relative_h_group(g, sample_size, config.n_sample,
                                            master.substream(l), config.threads);
    report.rows.push_back(std::move(row));
  }
  assign_alpha_and_rank(report.rows, config.gini_floor, report.provenance);
  return report;
}

RankingReport rank_from_precomputed(std::span<const PrecomputedRow> rows,
                                    double gini_floor) {
  if (rows.empty()) throw InvalidArgument("no rows to rank");
  if (!(gini_floor > 0.0)) throw InvalidArgument("gini_floor must be positive");
  std::vector<std::string> ids;
  for (const auto& r : rows) ids.push_back(r.group_id);
  require_unique_ids(ids);

  RankingReport report;
  report.provenance.gini_floor = gini_floor;
  for (const auto& r : rows) {
    if (!(r.relative_h_group >= 0.0)) {
      throw InvalidArgument("group '" + r.group_id +
                            "': relative h-group must be non-negative");
    }
    RankingRow row;
    row.group_id = r.group_id;
    row.gini = r.gini;
    row.relative_h_group = r.relative_h_group;
    report.rows.push_back(std::move(row));
  }
  assign_alpha_and_rank(report.rows, gini_floor, report.provenance);
  return report;
}

}  // namespace alphaidx
