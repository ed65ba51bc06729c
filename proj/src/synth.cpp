#include "alphaidx/synth.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "alphaidx/errors.hpp"

namespace alphaidx {

namespace {

void check_params(const StretchedExpParams& p) {
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
    throw InvalidArgument("stretched exponential: beta must be positive");
  }
  if (!(p.x0 > 0.0) || !std::isfinite(p.x0)) {
    throw InvalidArgument("stretched exponential: x0 must be positive");
  }
}

}  // namespace

double stretched_exp_quantile(const StretchedExpParams& p, double u) {
  check_params(p);
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidArgument("stretched exponential quantile: u must lie in (0, 1)");
  }
  double t = 0.0;  // (x/x0)^beta
  if (p.form == StretchedExpForm::survival) {
    t = -std::log1p(-u);
  } else {
    t = boost::math::gamma_p_inv(1.0 / p.beta, u);
  }
  return p.x0 * std::pow(t, 1.0 / p.beta);
}

std::vector<double> sample_stretched_exp(const StretchedExpParams& params,
                                         std::size_t n, RandomStream& stream) {
  check_params(params);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(stretched_exp_quantile(params, stream.uniform_open()));
  }
  return out;
}

Group synth_group(const std::string& id, std::span<const HIndex> member_hs) {
  if (member_hs.empty()) {
    throw InvalidArgument("synth_group: group '" + id + "' needs at least one member");
  }
  std::vector<ResearcherProfile> members;
  members.reserve(member_hs.size());
  for (std::size_t i = 0; i < member_hs.size(); ++i) {
    members.push_back(ResearcherProfile::from_summary(
        id + "-" + std::to_string(i + 1), member_hs[i], std::nullopt));
  }
  return Group(id, id, std::nullopt, std::move(members));
}

}  // namespace alphaidx
