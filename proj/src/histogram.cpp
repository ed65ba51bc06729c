#include <algorithm>
#include <cmath>
#include <string>

#include "alphaidx/distribution.hpp"
#include "alphaidx/errors.hpp"

namespace alphaidx {

std::vector<double> Histogram::centers() const {
  std::vector<double> c;
  c.reserve(bins());
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
    c.push_back(0.5 * (bin_edges[i] + bin_edges[i + 1]));
  }
  return c;
}

std::vector<double> Histogram::widths() const {
  std::vector<double> w;
  w.reserve(bins());
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
    w.push_back(bin_edges[i + 1] - bin_edges[i]);
  }
  return w;
}

Histogram build_histogram(std::span<const double> x, BinningMode mode,
                          double width_or_ratio) {
  if (x.empty()) throw BadBinSpec("build_histogram: no data");
  for (double v : x) {
    if (!std::isfinite(v)) throw BadBinSpec("build_histogram: non-finite value");
  }
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it, hi = *hi_it;

  Histogram hist;
  hist.mode = mode;
  constexpr std::size_t kMaxBins = 1'000'000;
  if (mode == BinningMode::linear) {
    if (!(width_or_ratio > 1e-12)) {
      throw BadBinSpec("bin width must exceed 1e-12");
    }
    const double span = (hi - lo) / width_or_ratio;
    if (span > static_cast<double>(kMaxBins)) {
      throw BadBinSpec("bin width too small for the data range");
    }
    const auto count = static_cast<std::size_t>(std::floor(span)) + 1;
    for (std::size_t j = 0; j <= count; ++j) {
      hist.bin_edges.push_back(lo + static_cast<double>(j) * width_or_ratio);
    }
  } else {
    if (!(width_or_ratio > 1.0 + 1e-12)) {
      throw BadBinSpec("geometric bin ratio must exceed 1");
    }
    if (!(lo > 0.0)) {
      throw BadBinSpec("geometric bins need strictly positive data");
    }
    hist.bin_edges.push_back(lo);
    for (std::size_t j = 1; hist.bin_edges.back() <= hi; ++j) {
      if (j > kMaxBins) throw BadBinSpec("bin ratio too close to 1");
      hist.bin_edges.push_back(lo * std::pow(width_or_ratio, static_cast<double>(j)));
    }
  }
  // Rounding in lo + j*w may leave the top edge at hi; extend once.
  while (hist.bin_edges.back() <= hi) {
    const double step = mode == BinningMode::linear
                            ? width_or_ratio
                            : hist.bin_edges.back() * (width_or_ratio - 1.0);
    hist.bin_edges.push_back(hist.bin_edges.back() + step);
  }

  hist.counts.assign(hist.bin_edges.size() - 1, 0.0);
  for (double v : x) {
    const auto it = std::upper_bound(hist.bin_edges.begin(), hist.bin_edges.end(), v);
    const auto bin = static_cast<std::size_t>(it - hist.bin_edges.begin()) - 1;
    hist.counts[bin] += 1.0;
  }
  return hist;
}

}  // namespace alphaidx
