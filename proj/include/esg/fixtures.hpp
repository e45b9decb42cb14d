#pragma once

// Monthly calibrations for the two bundled stock pairs against the S&P 500
// (2010-2020). The risk-free rate is a 3M T-bill average of ~0.55%/yr.

#include "esg/market_model.hpp"
#include "esg/preferences.hpp"

namespace esg::fixtures {

inline constexpr double kMonthlyRiskFree = 0.00046;

inline ModelParams idt_wmt() {
  ModelParams p;
  p.r = kMonthlyRiskFree;
  p.lambda1 = 6.0464;
  p.sigma1 = 0.0405;
  p.lambdaG = 0.7;
  p.sigma2 = 0.1628;
  p.rho12 = 0.2937;
  p.lambdaB = 2.8672;
  p.sigma3 = 0.0486;
  p.rho13 = 0.3354;
  return p;
}

inline ModelParams shenandoah_dupont() {
  ModelParams p;
  p.r = kMonthlyRiskFree;
  p.lambda1 = 6.0464;
  p.sigma1 = 0.0405;
  p.lambdaG = 1.0179;
  p.sigma2 = 0.1064;
  p.rho12 = 0.291;
  p.lambdaB = -1.244;
  p.sigma3 = 0.0866;
  p.rho13 = 0.767;
  return p;
}

inline EsgScoreTable idt_wmt_scores() { return {7.3, 9.4, 3.4}; }
inline EsgScoreTable shenandoah_dupont_scores() { return {7.3, 9.4, 4.2}; }

}  // namespace esg::fixtures
