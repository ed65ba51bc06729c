#include "alphaidx/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "alphaidx/errors.hpp"

namespace alphaidx {

namespace {

double diameter_of(const std::vector<std::vector<double>>& simplex,
                   std::size_t best) {
  double d = 0.0;
  for (std::size_t v = 0; v < simplex.size(); ++v) {
    for (std::size_t i = 0; i < simplex[v].size(); ++i) {
      d = std::max(d, std::abs(simplex[v][i] - simplex[best][i]));
    }
  }
  return d;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             std::span<const double> step,
                             const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0 || step.size() != dim) {
    throw InvalidArgument("nelder_mead: start and step must have equal, non-zero size");
  }
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& p) {
    ++result.evaluations;
    const double v = f(p);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step[i];
  std::vector<double> values(dim + 1);
  for (std::size_t v = 0; v <= dim; ++v) values[v] = eval(simplex[v]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    result.diameter = diameter_of(simplex, best);
    if (result.diameter < options.tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t i = 0; i < dim; ++i) {
      trial[i] = centroid[i] + kReflect * (centroid[i] - simplex[worst][i]);
    }
    const double reflected = eval(trial);

    if (reflected < values[best]) {
      for (std::size_t i = 0; i < dim; ++i) {
        trial2[i] = centroid[i] + kExpand * (trial[i] - centroid[i]);
      }
      const double expanded = eval(trial2);
      if (expanded < reflected) {
        simplex[worst] = trial2;
        values[worst] = expanded;
      } else {
        simplex[worst] = trial;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = reflected;
      continue;
    }

    // Contraction, outside if the reflection improved on the worst point.
    const bool outside = reflected < values[worst];
    const auto& anchor = outside ? trial : simplex[worst];
    for (std::size_t i = 0; i < dim; ++i) {
      trial2[i] = centroid[i] + kContract * (anchor[i] - centroid[i]);
    }
    const double contracted = eval(trial2);
    if (contracted < (outside ? reflected : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = contracted;
      continue;
    }

    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == best) continue;
      for (std::size_t i = 0; i < dim; ++i) {
        simplex[v][i] = simplex[best][i] + kShrink * (simplex[v][i] - simplex[best][i]);
      }
      values[v] = eval(simplex[v]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace alphaidx
