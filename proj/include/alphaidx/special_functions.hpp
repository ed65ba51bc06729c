#pragma once

namespace alphaidx {

/// Largest argument accepted by bessel_i1 before the result overflows.
inline constexpr double kBesselI1MaxArgument = 700.0;

/// Modified Bessel function of the first kind, order 1, on [0, 700].
/// Power series below 15, asymptotic expansion above. Throws DomainError for
/// negative x and OverflowError above the guard.
double bessel_i1(double x);

/// exp(-x) * I1(x) for x >= 0; never overflows.
double bessel_i1_scaled(double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Upper tail of the standard normal, P(Z > z).
double normal_upper_tail(double z);

/// Standard normal quantile for p in (0, 1).
double normal_quantile(double p);

}  // namespace alphaidx
