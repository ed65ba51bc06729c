#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphaidx/model.hpp"
#include "alphaidx/random.hpp"

namespace alphaidx {

struct RankingConfig {
  std::size_t n_sample = 1000;
  std::uint64_t seed = 0;
  /// Overrides the subsample size; must not exceed any group size.
  std::optional<std::size_t> reference_size;
  /// Lower clamp applied to every Gini coefficient before dividing by it.
  double gini_floor = 1e-3;
  /// Worker threads for sampling; 0 selects the hardware concurrency.
  unsigned threads = 1;
};

struct RankingRow {
  std::string group_id;
  double gini = 0.0;
  bool gini_floored = false;
  /// Absent when the row came from precomputed values.
  std::optional<HIndex> h_group;
  double relative_h_group = 0.0;
  double alpha = 0.0;
  std::size_t rank = 0;
};

struct RankingProvenance {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_sample;
  double gini_floor = 1e-3;
  std::vector<std::string> floored_groups;
};

struct RankingReport {
  std::optional<std::string> reference_group_id;
  std::optional<std::size_t> reference_size;
  /// Sorted by rank: descending alpha, ties by group id.
  std::vector<RankingRow> rows;
  RankingProvenance provenance;
};

/// Mean h-group over `n_sample` uniform subsets of size `sample_size` drawn
/// without replacement from `hs`. Sample j uses `stream.substream(j)`, so the
/// result does not depend on `threads`. Throws SampleTooLarge.
double relative_h_group(std::span<const HIndex> hs, std::size_t sample_size,
                        std::size_t n_sample, const RandomStream& stream,
                        unsigned threads = 1);
double relative_h_group(const Group& target, std::size_t sample_size,
                        std::size_t n_sample, const RandomStream& stream,
                        unsigned threads = 1);

/// Full alpha-index ranking. The reference size is that of the smallest group
/// (ties: smallest id) unless overridden. Group l samples from
/// RandomStream(seed).substream(l). Throws TooFewGroups, DegenerateGroup,
/// SampleTooLarge, InvalidArgument.
RankingReport rank(std::span<const Group> groups, const RankingConfig& config);

struct PrecomputedRow {
  std::string group_id;
  double relative_h_group = 0.0;
  double gini = 0.0;
};

/// Only the alpha normalization: alpha_l = (h_l / g_l) / sum_i (h_i / g_i),
/// with g clamped below by `gini_floor`.
RankingReport rank_from_precomputed(std::span<const PrecomputedRow> rows,
                                    double gini_floor = 1e-3);

}  // namespace alphaidx
