#include "alphaidx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "alphaidx/errors.hpp"

namespace alphaidx {

__extension__ using u128 = unsigned __int128;

HIndex h_index(std::span<const CitationCount> citations) {
  std::vector<CitationCount> sorted(citations.begin(), citations.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  HIndex h = 0;
  while (h < sorted.size() && sorted[h] >= h + 1) ++h;
  return h;
}

GroupSummary group_summary(std::span<const HIndex> hs) {
  if (hs.empty()) throw InvalidArgument("group_summary: empty group");
  const double n = static_cast<double>(hs.size());
  double sum = 0.0;
  for (HIndex h : hs) sum += h;
  const double mean = sum / n;
  if (hs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (HIndex h : hs) ss += (h - mean) * (h - mean);
  const double var = ss / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

GroupSummary group_summary(const Group& group) {
  return group_summary(group.h_values());
}

namespace {

std::vector<HIndex> sorted_ascending(std::span<const HIndex> hs) {
  std::vector<HIndex> v(hs.begin(), hs.end());
  std::sort(v.begin(), v.end());
  return v;
}

// Cumulative sums C_i = h_1 + ... + h_i over ascending h, C_0 = 0.
std::vector<std::uint64_t> cumulative(const std::vector<HIndex>& asc) {
  std::vector<std::uint64_t> c(asc.size() + 1, 0);
  for (std::size_t i = 0; i < asc.size(); ++i) c[i + 1] = c[i] + asc[i];
  return c;
}

}  // namespace

LorenzCurve lorenz_curve(std::span<const HIndex> hs) {
  if (hs.empty()) throw InvalidArgument("lorenz_curve: empty group");
  const auto asc = sorted_ascending(hs);
  const auto c = cumulative(asc);
  const std::uint64_t total = c.back();
  if (total == 0) {
    throw DegenerateGroup("all h-indexes are zero; Lorenz curve undefined");
  }
  const std::size_t n = asc.size();
  LorenzCurve curve;
  curve.points.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    curve.points.push_back({static_cast<double>(i) / static_cast<double>(n),
                            static_cast<double>(c[i]) /
                                static_cast<double>(total)});
  }
  return curve;
}

LorenzCurve lorenz_curve(const Group& group) {
  try {
    return lorenz_curve(group.h_values());
  } catch (const DegenerateGroup&) {
    throw DegenerateGroup("group '" + group.id() +
                          "': all h-indexes are zero; Lorenz curve undefined");
  }
}

double gini(std::span<const HIndex> hs) {
  if (hs.empty()) throw InvalidArgument("gini: empty group");
  const auto asc = sorted_ascending(hs);
  const auto c = cumulative(asc);
  const std::uint64_t total = c.back();
  if (total == 0) {
    throw DegenerateGroup("all h-indexes are zero; Gini coefficient undefined");
  }
  const std::uint64_t n = asc.size();
  // n * total * sum_k [Phi_k + Phi_{k-1}] = total * sum_k [C_k + C_{k-1}]
  // divided out once; numerator and denominator stay exact integers.
  u128 trapezoid = 0;
  for (std::size_t k = 1; k <= n; ++k) trapezoid += c[k] + c[k - 1];
  const u128 scale = static_cast<u128>(n) * total;
  return static_cast<double>(scale - trapezoid) / static_cast<double>(scale);
}

double gini(const Group& group) {
  try {
    return gini(group.h_values());
  } catch (const DegenerateGroup&) {
    throw DegenerateGroup("group '" + group.id() +
                          "': all h-indexes are zero; Gini coefficient undefined");
  }
}

HIndex h_group(std::span<const HIndex> hs) {
  const auto asc = sorted_ascending(hs);
  const std::size_t n = asc.size();
  HIndex best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto psi = static_cast<HIndex>(n - i);
    best = std::max(best, std::min(asc[i], psi));
  }
  return best;
}

HIndex h_group(const Group& group) { return h_group(group.h_values()); }

std::vector<PsiPoint> psi_curve(std::span<const HIndex> hs) {
  const auto asc = sorted_ascending(hs);
  std::vector<PsiPoint> out;
  out.reserve(asc.size());
  for (std::size_t i = 0; i < asc.size(); ++i) {
    out.push_back({asc[i], asc.size() - i});
  }
  return out;
}

std::vector<PsiPoint> psi_curve(const Group& group) {
  return psi_curve(group.h_values());
}

GroupMetrics group_metrics(const Group& group) {
  const auto hs = group.h_values();
  GroupMetrics m;
  m.n = hs.size();
  const auto summary = group_summary(hs);
  m.mean_h = summary.mean_h;
  m.stderr_h = summary.stderr_h;
  m.h_group = h_group(hs);
  m.gini = gini(group);
  m.lorenz = lorenz_curve(group);
  return m;
}

}  // namespace alphaidx
