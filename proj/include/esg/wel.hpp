#pragma once

// Value of constant suboptimal strategies and the Green-Index Wealth
// Equivalent Loss: the fraction q of the Green Index an optimal investor
// could give up and still match the suboptimal investor's value.

#include <string_view>

#include "esg/market_model.hpp"
#include "esg/preferences.hpp"

namespace esg {

/// Growth coefficient b* of the value function when `weights` are held
/// fixed. Minimized (not maximized) by the optimal weights because the
/// utility prefactor is negative for admissible profiles.
double fixed_weight_value(const ModelParams& params, const RiskAversionProfile& profile,
                          const Weights& weights);

enum class SubStrategy { Merton, NoGreen, Custom };

std::string_view to_string(SubStrategy s);

struct WelReport {
  double bStar = 0.0;
  double bOpt = 0.0;
  double q = 0.0;
  // log(1 - q) = (bStar - bOpt) T / alphaG. Keeps its resolution after q
  // itself has rounded to 1.
  double logRetained = 0.0;
  SubStrategy strategy = SubStrategy::Custom;
};

WelReport gwel(const ModelParams& params, const RiskAversionProfile& profile, const Weights& subWeights,
               double T, SubStrategy label = SubStrategy::Custom);

/// Closed-form b* of the single-exponent strategy evaluated under `profile`.
double merton_suboptimal_coefficient(const ModelParams& params, const RiskAversionProfile& profile);

WelReport q_merton(const ModelParams& params, const RiskAversionProfile& profile, double T);

/// Best constant strategy with no green stock: the market hedge keeps only
/// the brown term and the brown weight is unchanged.
Weights no_green_weights(const ModelParams& params, const RiskAversionProfile& profile);

/// 1 - exp(-lambdaG^2 sigma2^2 T / (2 (1 - alphaG))).
double q_no_green(const ModelParams& params, double alphaG, double T);

}  // namespace esg
