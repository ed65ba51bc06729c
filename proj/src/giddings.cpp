#include <algorithm>
#include <cmath>
#include <string>

#include "alphaidx/distribution.hpp"
#include "alphaidx/errors.hpp"
#include "alphaidx/nelder_mead.hpp"
#include "alphaidx/random.hpp"
#include "alphaidx/special_functions.hpp"

namespace alphaidx {

double giddings_eval(double h, const GiddingsParams& p) {
  if (!(h > 0.0)) throw DomainError("giddings_eval: h must be positive");
  if (!(p.w > 0.0) || !(p.h_c > 0.0)) {
    throw DomainError("giddings_eval: w and h_c must be positive");
  }
  // I1(z) exp(-(h + h_c)/w) = I1e(z) exp(z - (h + h_c)/w), and
  // z - (h + h_c)/w = -(sqrt(h) - sqrt(h_c))^2 / w <= 0, so nothing overflows.
  const double z = 2.0 * std::sqrt(p.h_c * h) / p.w;
  const double gap = std::sqrt(h) - std::sqrt(p.h_c);
  const double peak = (p.A / p.w) * std::sqrt(p.h_c / h) * bessel_i1_scaled(z) *
                      std::exp(-gap * gap / p.w);
  return p.H0 + peak;
}

namespace {

GiddingsParams from_search(std::span<const double> t) {
  return {t[0], std::exp(t[1]), std::exp(t[2]), std::exp(t[3])};
}

GiddingsParams initial_guess(const Histogram& hist,
                             const std::vector<double>& centers) {
  const auto& counts = hist.counts;
  const auto widths = hist.widths();
  const auto peak_it = std::max_element(counts.begin(), counts.end());
  const auto peak = static_cast<std::size_t>(peak_it - counts.begin());
  const double half = 0.5 * *peak_it;

  std::size_t left = peak, right = peak;
  while (left > 0 && counts[left - 1] >= half) --left;
  while (right + 1 < counts.size() && counts[right + 1] >= half) ++right;
  const double fwhm = hist.bin_edges[right + 1] - hist.bin_edges[left];

  double area = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) area += counts[i] * widths[i];

  GiddingsParams g;
  g.h_c = centers[peak];
  g.w = 0.5 * fwhm;
  g.A = std::max(area, 1e-12);
  g.H0 = *std::min_element(counts.begin(), counts.end());
  return g;
}

}  // namespace

GiddingsFit fit_giddings(const Histogram& hist, const GiddingsFitOptions& options) {
  if (hist.counts.size() + 1 != hist.bin_edges.size()) {
    throw InvalidArgument("fit_giddings: histogram edges and counts disagree");
  }
  const auto non_empty = std::count_if(hist.counts.begin(), hist.counts.end(),
                                       [](double c) { return c > 0.0; });
  if (non_empty < 6) {
    throw InsufficientData("fit_giddings: need at least 6 non-empty bins, got " +
                           std::to_string(non_empty));
  }
  if (options.restarts < 1) throw InvalidArgument("fit_giddings: restarts < 1");
  const auto centers = hist.centers();
  if (!(centers.front() > 0.0)) {
    throw DomainError("fit_giddings: bin centres must be positive");
  }

  const auto objective = [&](std::span<const double> t) {
    const GiddingsParams p = from_search(t);
    double ss = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double r = giddings_eval(centers[i], p) - hist.counts[i];
      ss += r * r;
    }
    return ss;
  };

  const GiddingsParams guess = initial_guess(hist, centers);
  const double max_count = *std::max_element(hist.counts.begin(), hist.counts.end());
  RandomStream jitter_stream = RandomStream(options.seed).substream(0);

  NelderMeadOptions nm;
  nm.tolerance = options.tolerance;
  nm.max_evaluations = options.max_evaluations;

  GiddingsFit best;
  bool have_best = false;
  bool any_converged = false;
  for (int r = 0; r < options.restarts; ++r) {
    GiddingsParams start = guess;
    if (r > 0) {
      auto jitter = [&](double v) {
        return v * (1.0 + options.jitter * (2.0 * jitter_stream.uniform_open() - 1.0));
      };
      start = {jitter(guess.H0), jitter(guess.A), jitter(guess.w), jitter(guess.h_c)};
    }
    std::vector<double> t = {start.H0, std::log(start.A), std::log(start.w),
                             std::log(start.h_c)};
    const double h0_step = 0.1 * std::max(std::abs(start.H0), 0.01 * max_count);
    const std::vector<double> step = {h0_step, 0.1, 0.1, 0.1};

    // Re-seed the simplex at the previous optimum until it stops moving;
    // a single run can collapse before reaching the minimum.
    NelderMeadResult run = nelder_mead(objective, t, step, nm);
    for (int polish = 0; polish < 4; ++polish) {
      const std::vector<double> small_step = {
          0.01 * std::max(std::abs(run.x[0]), 0.01 * max_count), 0.01, 0.01, 0.01};
      NelderMeadResult again = nelder_mead(objective, run.x, small_step, nm);
      const bool improved = again.value < run.value * (1.0 - 1e-12);
      run = again.value <= run.value ? again : run;
      if (!improved) break;
    }

    any_converged = any_converged || run.converged;
    if (!have_best || run.value < best.residual_ss) {
      best.params = from_search(run.x);
      best.residual_ss = run.value;
      best.converged = run.converged;
      have_best = true;
    }
  }
  if (!any_converged) {
    throw FitDiverged("fit_giddings: no restart reached the simplex tolerance");
  }
  return best;
}

}  // namespace alphaidx
