#pragma once

// Monte Carlo expected utility of constant-weight strategies, used as an
// independent check on the closed-form value functions and the optimal
// weights.
//
// Paths come in antithetic pairs: pair k draws from substream k and its
// partner uses the negated increments. Utilities are accumulated as
// exp(log|u| - shift) so strongly negative exponents do not overflow; the
// shift is reported alongside the scaled mean.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "esg/market_model.hpp"
#include "esg/preferences.hpp"

namespace esg {

struct McOptions {
  std::size_t nSteps = 0;  // 0: one step per period, ceil(T)
  unsigned threads = 0;
};

struct McEstimate {
  double estimate = 0.0;       // signed E[u]; may over/underflow for extreme exponents
  double standardError = 0.0;  // of `estimate`
  double logShift = 0.0;       // estimate = sign * exp(logShift) * scaledMean
  double scaledMean = 0.0;
  double scaledError = 0.0;
  double sign = -1.0;
  std::size_t nPaths = 0;      // paths used (always even)

  /// (estimate - reference) / standardError computed in the shifted scale,
  /// where the reference is sign * exp(logAbsReference).
  double z_score(double logAbsReference) const;
};

/// Sums of Brownian increments over the horizon, one triple per antithetic
/// pair. Shared across strategies for common-random-number comparisons.
struct ShockSums {
  double horizon = 0.0;
  std::vector<double> m, g, b;
};

ShockSums draw_shocks(double T, std::size_t nSteps, std::size_t nPairs, std::uint64_t seed,
                      unsigned threads = 0);

/// Expected utility at initial index values of one (x_m = x_g = x_b = 1)
/// for a fixed strategy evaluated on pre-drawn shocks.
McEstimate expected_utility_on(const ShockSums& shocks, const ModelParams& params,
                               const RiskAversionProfile& profile, const Weights& weights);

McEstimate expected_utility_mc(const ModelParams& params, const RiskAversionProfile& profile,
                               const Weights& weights, double T, std::size_t nPaths,
                               std::uint64_t seed, const McOptions& options = {});

/// log |u(1,1,1) exp(b* T)|, the closed-form counterpart of the estimate.
double log_abs_closed_form(const RiskAversionProfile& profile, double bStar, double T);

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  static GridAxis fixed(double v) { return {v, v, 1.0}; }
  std::vector<double> values() const;
};

struct GridSearchResult {
  Weights argmax;
  McEstimate best;
  bool onBoundary = false;  // argmax sits on the edge of a non-degenerate axis
  std::size_t evaluated = 0;
};

/// Exhaustive search over the product grid, all points scored on the same
/// shocks. The objective is compared in the shared log-shifted scale.
GridSearchResult grid_search_optimal(const ModelParams& params, const RiskAversionProfile& profile,
                                     double T, const GridAxis& index, const GridAxis& green,
                                     const GridAxis& brown, std::size_t nPaths, std::uint64_t seed,
                                     const McOptions& options = {});

struct VerificationReport {
  double closedForm = 0.0;
  double logAbsClosedForm = 0.0;
  double bStar = 0.0;
  McEstimate mc;
  double zScore = 0.0;
  bool pass = false;  // |z| < 3
};

/// Compares the MC estimate for `weights` with u(1,1,1) exp(b* T).
VerificationReport verify_strategy(const ModelParams& params, const RiskAversionProfile& profile,
                                   const Weights& weights, double T, std::size_t nPaths,
                                   std::uint64_t seed, const McOptions& options = {});

}  // namespace esg
