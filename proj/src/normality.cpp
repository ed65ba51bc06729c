#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "alphaidx/distribution.hpp"
#include "alphaidx/errors.hpp"
#include "alphaidx/special_functions.hpp"

// Shapiro-Wilk W and p-value following Royston's AS R94 (uncensored case).

namespace alphaidx {

namespace {

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

constexpr std::array<double, 6> kC1 = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr std::array<double, 6> kC2 = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr std::array<double, 4> kC3 = {0.5440, -0.39978, 0.025054, -6.714e-4};
constexpr std::array<double, 4> kC4 = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr std::array<double, 4> kC5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr std::array<double, 3> kC6 = {-0.4803, -0.082676, 0.0030302};
constexpr std::array<double, 2> kG = {-2.273, 0.459};

// Coefficients a_1..a_{n/2} for the upper half of the order statistics.
std::vector<double> sw_coefficients(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }
  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

  std::size_t first_scaled = 1;
  double fac = 0.0;
  if (n > 5) {
    const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[0] = a1;
    a[1] = a2;
    first_scaled = 2;
  } else {
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    a[0] = a1;
  }
  for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

double sw_p_value(std::size_t n, double w) {
  const double an = static_cast<double>(n);
  if (n == 3) {
    constexpr double kPi6 = 6.0 / std::numbers::pi;
    constexpr double kStqr = std::numbers::pi / 3.0;
    const double p = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
    return std::clamp(p, 0.0, 1.0);
  }
  const double w1 = 1.0 - w;
  if (!(w1 > 0.0)) return 1.0;
  double y = std::log(w1);
  double mean = 0.0, sd = 1.0;
  if (n <= 11) {
    const double gamma = poly(kG, an);
    if (y >= gamma) return 1e-19;
    y = -std::log(gamma - y);
    mean = poly(kC3, an);
    sd = std::exp(poly(kC4, an));
  } else {
    const double ln_n = std::log(an);
    mean = poly(kC5, ln_n);
    sd = std::exp(poly(kC6, ln_n));
  }
  return normal_upper_tail((y - mean) / sd);
}

}  // namespace

NormalityReport shapiro_wilk(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3 || n > 5000) {
    throw SampleSizeOutOfRange("shapiro_wilk: n must lie in [3, 5000], got " +
                               std::to_string(n));
  }
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  const double scale = std::max(std::abs(sorted.front()), std::abs(sorted.back()));
  if (!(range > 1e-14 * scale) || range == 0.0) {
    throw ZeroVariance("shapiro_wilk: all values are equal");
  }

  const auto a = sw_coefficients(n);
  // Work on range-scaled data as AS R94 does.
  double mean = 0.0;
  for (double& v : sorted) {
    v /= range;
    mean += v;
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  double numerator = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    numerator += a[i] * (sorted[n - 1 - i] - sorted[i]);
  }
  const double w = std::min(1.0, numerator * numerator / ss);

  NormalityReport report;
  report.W = w;
  report.p_value = std::clamp(sw_p_value(n, w), 0.0, 1.0);
  report.kurtosis = kurtosis(x);
  report.skewness = skewness(x);
  report.normal_at_5pct = report.p_value > 0.05;
  return report;
}

}  // namespace alphaidx
