#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace alphaidx {

struct NelderMeadOptions {
  double tolerance = 1e-9;  // stop once the simplex diameter falls below this
  std::size_t max_evaluations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  double diameter = 0.0;  // max infinity-norm distance from the best vertex
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex minimisation starting from `start` with an initial simplex
/// offset by `step` along each axis.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             std::span<const double> step,
                             const NelderMeadOptions& options = {});

}  // namespace alphaidx
