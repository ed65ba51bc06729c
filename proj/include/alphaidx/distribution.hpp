#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace alphaidx {

// ---------------------------------------------------------------------------
// Citations versus h-index

struct HxPair {
  double h = 0.0;
  double x = 0.0;
};

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log of the prefactor
  std::size_t points_used = 0;
  std::size_t points_dropped = 0;  // pairs with h <= 0 or x <= 0
};

/// OLS slope of ln x on ln h. Throws InsufficientData with fewer than two
/// usable pairs (or when every usable h is identical).
PowerLawFit power_law_slope(std::span<const HxPair> pairs);

// ---------------------------------------------------------------------------
// Stretched-exponential moment matching

/// M_k = Gamma((k+1)/beta) Gamma(1/beta)^(k-1) / Gamma(2/beta)^k, the ratio
/// <x^k>/<x>^k for a density proportional to exp[-(x/x0)^beta]. x0 cancels.
double theoretical_moment_ratio(double k, double beta);

/// R_k = <x^k>/<x>^k = n^(k-1) sum x^k / (sum x)^k. Exactly 1 for k = 1.
double empirical_moment_ratio(double k, std::span<const double> x);

enum class ObjectiveSpace { log, raw };

struct StretchedExpFit {
  double beta = 0.0;
  std::vector<double> grid;
  std::vector<double> objective_per_beta;
  std::vector<double> k_grid;
  std::vector<double> empirical_ratios;  // R_k for each k_grid entry
};

/// 0.20, 0.22, ..., 0.34
std::vector<double> default_beta_grid();
/// 1.0, 1.1, ..., 3.0
std::vector<double> default_k_grid();

/// Grid search for the beta minimising sum_k (ln M_k(beta) - ln R_k)^2 (or
/// the raw-space residuals). Ties go to the earlier grid entry. Throws
/// InsufficientData for n < 10, InvalidArgument for empty grids and
/// DomainError for non-positive data.
StretchedExpFit fit_beta(std::span<const double> x,
                         std::span<const double> beta_grid,
                         std::span<const double> k_grid,
                         ObjectiveSpace space = ObjectiveSpace::log);

// ---------------------------------------------------------------------------
// Histograms

enum class BinningMode { linear, geometric };

/// Bins are half-open [e_j, e_{j+1}). Counts are stored as reals so that
/// modelled (non-integer) histograms can be fitted; build_histogram always
/// produces whole numbers.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<double> counts;
  BinningMode mode = BinningMode::linear;

  std::size_t bins() const { return counts.size(); }
  std::vector<double> centers() const;
  std::vector<double> widths() const;
};

/// Linear bins start at min(x) with the given width; geometric edges are
/// min(x) * ratio^j. The last edge lies strictly above max(x). Throws
/// BadBinSpec.
Histogram build_histogram(std::span<const double> x, BinningMode mode,
                          double width_or_ratio);

// ---------------------------------------------------------------------------
// Giddings fit of the h-index histogram

struct GiddingsParams {
  double H0 = 0.0;   // baseline
  double A = 0.0;    // amplitude
  double w = 1.0;    // width
  double h_c = 1.0;  // centre
};

struct GiddingsFit {
  GiddingsParams params;
  double residual_ss = 0.0;
  bool converged = false;
};

/// H(h) = H0 + (A/w) sqrt(h_c/h) I1(2 sqrt(h_c h)/w) exp(-(h + h_c)/w).
/// Throws DomainError unless h, w and h_c are positive.
double giddings_eval(double h, const GiddingsParams& params);

struct GiddingsFitOptions {
  int restarts = 8;
  double jitter = 0.5;           // relative jitter on restarts 1..n-1
  double tolerance = 1e-9;       // simplex diameter
  std::size_t max_evaluations = 40000;  // per restart
  std::uint64_t seed = 0x6769646469ULL;
};

/// Least-squares fit of giddings_eval at the bin centres to the counts using
/// a multi-start Nelder-Mead search over (H0, ln A, ln w, ln h_c). Throws
/// InsufficientData with fewer than 6 non-empty bins and FitDiverged when no
/// restart converges.
GiddingsFit fit_giddings(const Histogram& hist,
                         const GiddingsFitOptions& options = {});

// ---------------------------------------------------------------------------
// Shape statistics and normality

/// Excess kurtosis mu4/mu2^2 - 3 with population central moments.
double kurtosis(std::span<const double> x);
/// mu3/mu2^(3/2).
double skewness(std::span<const double> x);

struct NormalityReport {
  double W = 0.0;
  double p_value = 0.0;
  double kurtosis = 0.0;
  double skewness = 0.0;
  bool normal_at_5pct = false;
};

/// Shapiro-Wilk W with Royston's (1995) coefficient and p-value
/// approximations, 3 <= n <= 5000. Throws SampleSizeOutOfRange, ZeroVariance.
NormalityReport shapiro_wilk(std::span<const double> x);

}  // namespace alphaidx
