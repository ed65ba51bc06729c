#pragma once

#include <span>
#include <string>
#include <vector>

#include "alphaidx/model.hpp"
#include "alphaidx/random.hpp"

namespace alphaidx {

/// How exp[-(x/x0)^beta] is read.
enum class StretchedExpForm {
  /// As the density N(x); (x/x0)^beta is Gamma(1/beta)-distributed. This is
  /// the law whose moment ratios theoretical_moment_ratio describes.
  density,
  /// As the survival function P(X > x) (a Weibull law).
  survival,
};

struct StretchedExpParams {
  double beta = 0.28;
  double x0 = 1.0;
  StretchedExpForm form = StretchedExpForm::density;
};

/// Inverse CDF at u in (0, 1). Throws InvalidArgument for bad parameters.
double stretched_exp_quantile(const StretchedExpParams& params, double u);

/// n inverse-CDF draws, consuming one uniform per draw from `stream`.
std::vector<double> sample_stretched_exp(const StretchedExpParams& params,
                                         std::size_t n, RandomStream& stream);

/// Summary-only group whose members carry the given h-indexes. Member ids
/// are "<id>-<k>" with k starting at 1. Throws InvalidArgument when empty.
Group synth_group(const std::string& id, std::span<const HIndex> member_hs);

}  // namespace alphaidx
