#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "alphaidx/model.hpp"

namespace alphaidx {

/// Largest k such that at least k entries are >= k. Zero for no papers.
HIndex h_index(std::span<const CitationCount> citations);

struct GroupSummary {
  double mean_h = 0.0;
  /// (var(h)/n)^(1/2) with the unbiased sample variance; 0 for n = 1.
  double stderr_h = 0.0;
};

GroupSummary group_summary(std::span<const HIndex> hs);
GroupSummary group_summary(const Group& group);

struct LorenzPoint {
  double f = 0.0;    // i/n
  double phi = 0.0;  // cumulative share of total h held by the i poorest
};

/// Points (i/n, Phi_i) for i = 1..n over ascending h. The origin is implicit.
struct LorenzCurve {
  std::vector<LorenzPoint> points;
};

/// Throws DegenerateGroup when every h is zero.
LorenzCurve lorenz_curve(std::span<const HIndex> hs);
LorenzCurve lorenz_curve(const Group& group);

/// Trapezoidal Gini coefficient g = 1 - (1/n) sum_k [Phi_k + Phi_{k-1}] with
/// Phi_0 = 0 and Phi_n = 1. The sum is carried out on integer cumulative
/// totals, so equal h-indexes give exactly 0. Throws DegenerateGroup.
double gini(std::span<const HIndex> hs);
double gini(const Group& group);

/// Largest H such that at least H members have h >= H, found as the crossing
/// of psi_i = n - i + 1 with the identity over ascending h.
HIndex h_group(std::span<const HIndex> hs);
HIndex h_group(const Group& group);

struct PsiPoint {
  HIndex h = 0;
  std::size_t psi = 0;  // n - i + 1

  bool operator==(const PsiPoint&) const = default;
};

std::vector<PsiPoint> psi_curve(std::span<const HIndex> hs);
std::vector<PsiPoint> psi_curve(const Group& group);

struct GroupMetrics {
  std::size_t n = 0;
  double mean_h = 0.0;
  double stderr_h = 0.0;
  HIndex h_group = 0;
  double gini = 0.0;
  LorenzCurve lorenz;
};

/// All per-group metrics at once. Throws DegenerateGroup for all-zero groups.
GroupMetrics group_metrics(const Group& group);

}  // namespace alphaidx
