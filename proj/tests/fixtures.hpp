#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "alphaidx/distribution.hpp"
#include "alphaidx/model.hpp"
#include "alphaidx/random.hpp"
#include "alphaidx/special_functions.hpp"

namespace fixtures {

// Shapiro-Wilk reference values from scipy.stats.shapiro (scipy 1.15.3).
// numpy default_rng(20240601): 20 standard normal draws, rounded to 4 places.
inline const std::vector<double> sw_normal_sample{
    0.6479, 0.4693, -0.643, -1.1783, -0.1447, 1.2035, 1.3336, 0.9083, 0.3466, 1.6,
    1.2328, -0.2203, -1.062, -0.3646, -0.42, 0.6875, -1.8991, -0.1914, 1.6712, -0.9203};
inline constexpr double sw_normal_W = 0.965265300724846;
inline constexpr double sw_normal_p = 0.6534233298676254;

// Same generator, Student t with one degree of freedom.
inline const std::vector<double> sw_heavy_sample{
    -3.5035, -0.1829, -4.5569, -156.4092, -1.9328, 0.0696, 2.4676, -0.2385, -2.4346, -0.8735,
    1.2594,  -0.6962, 0.4067,  0.3601,    6.511,   2.954,  11.3516, 0.1201,  -0.7769, 0.1022};
inline constexpr double sw_heavy_W = 0.3169781635270309;
inline constexpr double sw_heavy_p = 1.0195638339150433e-08;

inline const std::vector<double> sw_small_sample{2.1, 3.4, 1.9, 5.6, 4.4, 2.2, 3.0, 7.1};
inline constexpr double sw_small_W = 0.8945248783555593;
inline constexpr double sw_small_p = 0.257677816509897;

// numpy default_rng(7): 207 rounded lognormal(2.3, 0.6) draws, h-index like.
inline const std::vector<double> sw_large_sample{
    10, 12, 8, 6, 8, 6, 10, 22, 7, 7, 13, 12, 11, 6, 10, 15, 4, 8, 3, 5, 3, 9, 5, 12, 11, 9,
    2, 7, 10, 11, 4, 7, 6, 6, 19, 6, 10, 17, 7, 9, 11, 10, 5, 10, 23, 4, 17, 11, 7, 33, 16,
    5, 10, 14, 9, 15, 10, 15, 24, 7, 11, 8, 11, 5, 7, 9, 17, 20, 5, 6, 15, 3, 8, 9, 21, 15,
    8, 8, 9, 25, 8, 8, 12, 9, 9, 5, 10, 8, 20, 15, 10, 15, 8, 19, 10, 14, 5, 12, 4, 3, 8, 6,
    11, 38, 6, 7, 11, 13, 9, 9, 15, 14, 5, 10, 10, 5, 12, 6, 18, 11, 11, 7, 9, 3, 5, 12, 3,
    17, 3, 16, 6, 16, 11, 4, 21, 24, 10, 8, 9, 6, 19, 7, 10, 6, 7, 5, 21, 9, 18, 10, 7, 8,
    7, 10, 8, 8, 4, 6, 27, 7, 5, 12, 23, 4, 9, 7, 3, 16, 10, 10, 6, 13, 7, 9, 5, 5, 22, 7,
    12, 10, 8, 7, 15, 8, 9, 10, 20, 15, 13, 7, 4, 18, 18, 9, 14, 16, 16, 17, 8, 25, 5, 17,
    13, 17, 31, 24, 5
};
inline constexpr double sw_large_W = 0.8911617456301224;
inline constexpr double sw_large_p = 4.196231215434611e-11;

// Linear histogram with unit bins centred on 1..40 whose counts are the Giddings function at
// `truth`, each multiplied by (1 + noise * z) with z standard normal.
inline alphaidx::Histogram giddings_histogram(const alphaidx::GiddingsParams& truth,
                                              double noise, std::uint64_t seed) {
  alphaidx::Histogram h;
  alphaidx::RandomStream s(seed);
  for (int i = 0; i <= 40; ++i) h.bin_edges.push_back(0.5 + i);
  for (int i = 1; i <= 40; ++i) {
    const double z = alphaidx::normal_quantile(s.uniform_open());
    h.counts.push_back(alphaidx::giddings_eval(i, truth) * (1.0 + noise * z));
  }
  return h;
}

struct SevenGroupSpec {
  const char* id;
  int size;
  int base;
  int spread;
};

// Members h = round(base + spread * i / (size - 1)). Ordered so that relative
// h-group falls and Gini rises from DOCENG to EASE; EASE is the smallest.
inline const std::vector<SevenGroupSpec> seven_group_specs{
    {"DOCENG", 30, 12, 8}, {"CIKM", 60, 10, 14}, {"CAISE", 40, 9, 15}, {"HSDM", 25, 8, 16},
    {"SEKE", 45, 6, 20},   {"ECDL", 35, 4, 22},  {"EASE", 16, 2, 24}};

inline alphaidx::Dataset seven_group_dataset() {
  alphaidx::Dataset ds;
  for (const auto& spec : seven_group_specs) {
    std::vector<alphaidx::ResearcherProfile> members;
    for (int i = 0; i < spec.size; ++i) {
      const auto h = static_cast<alphaidx::HIndex>(
          std::lround(spec.base + spec.spread * static_cast<double>(i) / (spec.size - 1)));
      members.push_back(alphaidx::ResearcherProfile::from_summary(
          std::string(spec.id) + "-" + std::to_string(i + 1), h,
          static_cast<alphaidx::CitationCount>(h) * h + i));
    }
    ds.groups.emplace_back(spec.id, std::string(spec.id) + "-2005", std::nullopt, std::move(members));
  }
  return ds;
}

// A random dataset satisfying every invariant: a mix of per-paper and
// summary-only members, optional totals and quality tags, odd characters in
// ids and labels.
inline alphaidx::Dataset random_dataset(std::uint64_t seed) {
  alphaidx::RandomStream s(seed);
  alphaidx::Dataset ds;
  const auto n_groups = 1 + s.below(5);
  for (std::uint64_t g = 0; g < n_groups; ++g) {
    std::vector<alphaidx::ResearcherProfile> members;
    const auto n_members = 1 + s.below(12);
    for (std::uint64_t m = 0; m < n_members; ++m) {
      std::string id = "r" + std::to_string(m) + (s.below(4) == 0 ? " \"é,x\"" : "");
      if (s.below(2) == 0) {
        std::vector<alphaidx::CitationCount> cites(s.below(15));
        for (auto& c : cites) c = s.below(5) == 0 ? 0 : s.below(200);
        members.push_back(alphaidx::ResearcherProfile::from_citations(std::move(id), std::move(cites)));
      } else {
        const auto h = static_cast<alphaidx::HIndex>(s.below(40));
        std::optional<alphaidx::CitationCount> total;
        if (s.below(3) != 0) total = static_cast<alphaidx::CitationCount>(h) * h + s.below(1000);
        members.push_back(alphaidx::ResearcherProfile::from_summary(std::move(id), h, total));
      }
    }
    std::optional<std::string> tag;
    if (s.below(2) == 0) tag = std::string(1, static_cast<char>('A' + s.below(3)));
    const std::string gid = "group-" + std::to_string(g) + (s.below(3) == 0 ? "/ü" : "");
    ds.groups.emplace_back(gid, "Label " + std::to_string(s.below(1000)), tag, std::move(members));
  }
  return ds;
}

}  // namespace fixtures
