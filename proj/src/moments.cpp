#include <algorithm>
#include <cmath>
#include <string>

#include "alphaidx/distribution.hpp"
#include "alphaidx/errors.hpp"
#include "alphaidx/special_functions.hpp"

namespace alphaidx {

PowerLawFit power_law_slope(std::span<const HxPair> pairs) {
  PowerLawFit fit;
  double sx = 0.0, sy = 0.0;
  std::vector<std::pair<double, double>> logs;
  logs.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (!(p.h > 0.0) || !(p.x > 0.0)) {
      ++fit.points_dropped;
      continue;
    }
    logs.emplace_back(std::log(p.h), std::log(p.x));
    sx += logs.back().first;
    sy += logs.back().second;
  }
  fit.points_used = logs.size();
  if (logs.size() < 2) {
    throw InsufficientData("power_law_slope: need at least 2 pairs with h > 0 "
                           "and x > 0, got " + std::to_string(logs.size()));
  }
  const double n = static_cast<double>(logs.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (!(sxx > 0.0)) {
    throw InsufficientData("power_law_slope: all h values are identical");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

namespace {

double log_moment_ratio(double k, double beta) {
  return log_gamma((k + 1.0) / beta) + (k - 1.0) * log_gamma(1.0 / beta) -
         k * log_gamma(2.0 / beta);
}

void check_k_beta(double k, double beta) {
  if (!(k >= 1.0)) throw DomainError("moment order k must be >= 1");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
}

}  // namespace

double theoretical_moment_ratio(double k, double beta) {
  check_k_beta(k, beta);
  return std::exp(log_moment_ratio(k, beta));
}

double empirical_moment_ratio(double k, std::span<const double> x) {
  if (!(k >= 1.0)) throw DomainError("moment order k must be >= 1");
  if (x.empty()) throw InsufficientData("empirical_moment_ratio: no data");
  double sum = 0.0;
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("empirical_moment_ratio: data must be positive");
    sum += v;
  }
  if (k == 1.0) return 1.0;
  const double n = static_cast<double>(x.size());
  const double mean = sum / n;
  // <(x/mean)^k> equals n^(k-1) sum x^k / (sum x)^k without overflowing.
  double acc = 0.0;
  for (double v : x) acc += std::pow(v / mean, k);
  return acc / n;
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int i = 20; i <= 34; i += 2) grid.push_back(i / 100.0);
  return grid;
}

std::vector<double> default_k_grid() {
  std::vector<double> grid;
  for (int i = 10; i <= 30; ++i) grid.push_back(i / 10.0);
  return grid;
}

StretchedExpFit fit_beta(std::span<const double> x,
                         std::span<const double> beta_grid,
                         std::span<const double> k_grid, ObjectiveSpace space) {
  if (x.size() < 10) {
    throw InsufficientData("fit_beta: need at least 10 values, got " +
                           std::to_string(x.size()));
  }
  if (beta_grid.empty() || k_grid.empty()) {
    throw InvalidArgument("fit_beta: grids must be non-empty");
  }
  for (double b : beta_grid) check_k_beta(1.0, b);
  for (double k : k_grid) check_k_beta(k, 1.0);

  StretchedExpFit fit;
  fit.grid.assign(beta_grid.begin(), beta_grid.end());
  fit.k_grid.assign(k_grid.begin(), k_grid.end());

  // ln x once; each R_k is then exp/log work only.
  double sum = 0.0;
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("fit_beta: data must be positive");
    sum += v;
  }
  const double log_mean = std::log(sum / static_cast<double>(x.size()));
  std::vector<double> log_scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    log_scaled[i] = std::log(x[i]) - log_mean;
  }
  std::vector<double> log_r;
  for (double k : k_grid) {
    double r = 1.0;
    if (k != 1.0) {
      double acc = 0.0;
      for (double ls : log_scaled) acc += std::exp(k * ls);
      r = acc / static_cast<double>(x.size());
    }
    fit.empirical_ratios.push_back(r);
    log_r.push_back(std::log(r));
  }

  std::size_t best = 0;
  for (std::size_t b = 0; b < beta_grid.size(); ++b) {
    double objective = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
      const double log_m = log_moment_ratio(k_grid[i], beta_grid[b]);
      const double resid = space == ObjectiveSpace::log
                               ? log_m - log_r[i]
                               : std::exp(log_m) - fit.empirical_ratios[i];
      objective += resid * resid;
    }
    fit.objective_per_beta.push_back(objective);
    if (objective < fit.objective_per_beta[best]) best = b;
  }
  fit.beta = beta_grid[best];
  return fit;
}

namespace {

struct CentralMoments {
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> x) {
  if (x.size() < 2) {
    throw InsufficientData("need at least 2 values, got " +
                           std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / n;
  CentralMoments c;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    c.m2 += d2;
    c.m3 += d2 * d;
    c.m4 += d2 * d2;
  }
  c.m2 /= n;
  c.m3 /= n;
  c.m4 /= n;
  // Relative to the data scale; exact ties leave rounding-level residue.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (!(c.m2 > 1e-28 * scale * scale) || c.m2 == 0.0) {
    throw ZeroVariance("sample variance is zero");
  }
  return c;
}

}  // namespace

double kurtosis(std::span<const double> x) {
  const auto c = central_moments(x);
  return c.m4 / (c.m2 * c.m2) - 3.0;
}

double skewness(std::span<const double> x) {
  const auto c = central_moments(x);
  return c.m3 / std::pow(c.m2, 1.5);
}

}  // namespace alphaidx
