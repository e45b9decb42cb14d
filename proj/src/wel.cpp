#include "esg/wel.hpp"

#include <cmath>

#include "esg/allocation.hpp"
#include "esg/errors.hpp"

namespace esg {

std::string_view to_string(SubStrategy s) {
  switch (s) {
    case SubStrategy::Merton: return "merton";
    case SubStrategy::NoGreen: return "no-green";
    case SubStrategy::Custom: return "custom";
  }
  return "custom";
}

double fixed_weight_value(const ModelParams& params, const RiskAversionProfile& profile,
                          const Weights& weights) {
  require_valid(profile);
  const auto syn = derive_synthetics(params);
  const double beta = portfolio_beta(syn, weights);
  const double am = profile.alphaM, ag = profile.alphaG, ab = profile.alphaB;
  const double s1sq = params.sigma1 * params.sigma1;
  const double pg = weights.green, pb = weights.brown;
  return am * params.lambda1 * beta * s1sq - 0.5 * am * (1.0 - am) * beta * beta * s1sq +
         ag * params.lambdaG * pg * params.sigma2 * syn.sigmaG -
         0.5 * ag * (1.0 - ag) * pg * pg * syn.sigmaG * syn.sigmaG +
         ab * params.lambdaB * pb * params.sigma3 * syn.sigmaB -
         0.5 * ab * (1.0 - ab) * pb * pb * syn.sigmaB * syn.sigmaB +
         (am * params.thetaM + ag * params.thetaG + ab * params.thetaB) * params.r;
}

WelReport gwel(const ModelParams& params, const RiskAversionProfile& profile, const Weights& subWeights,
               double T, SubStrategy label) {
  require_valid(profile);
  if (!(T > 0.0)) throw DomainError("horizon must be positive");
  WelReport rep;
  rep.strategy = label;
  rep.bStar = fixed_weight_value(params, profile, subWeights);
  rep.bOpt = value_coefficient(params, profile);
  rep.logRetained = (rep.bStar - rep.bOpt) * T / profile.alphaG;
  rep.q = -std::expm1(rep.logRetained);
  return rep;
}

double merton_suboptimal_coefficient(const ModelParams& params, const RiskAversionProfile& profile) {
  require_valid(profile);
  params.validate();
  const double am = profile.alphaM, ag = profile.alphaG, ab = profile.alphaB;
  const double m2 = params.lambda1 * params.lambda1 * params.sigma1 * params.sigma1;
  const double g2 = params.lambdaG * params.lambdaG * params.sigma2 * params.sigma2;
  const double b2 = params.lambdaB * params.lambdaB * params.sigma3 * params.sigma3;
  const double k = 1.0 - am;
  return 0.5 * m2 * am / k + g2 * ag / k - 0.5 * g2 * ag * (1.0 - ag) / (k * k) + b2 * ab / k -
         0.5 * b2 * ab * (1.0 - ab) / (k * k) +
         (params.thetaM * am + params.thetaG * ag + params.thetaB * ab) * params.r;
}

WelReport q_merton(const ModelParams& params, const RiskAversionProfile& profile, double T) {
  require_valid(profile);
  if (!(T > 0.0)) throw DomainError("horizon must be positive");
  WelReport rep;
  rep.strategy = SubStrategy::Merton;
  rep.bStar = merton_suboptimal_coefficient(params, profile);
  rep.bOpt = value_coefficient(params, profile);
  // b^s - b as a sum of squares: exactly zero for a uniform profile and never
  // negative, unlike the difference of the two coefficients.
  const double am = profile.alphaM, ag = profile.alphaG, ab = profile.alphaB;
  const double g2 = params.lambdaG * params.lambdaG * params.sigma2 * params.sigma2;
  const double b2 = params.lambdaB * params.lambdaB * params.sigma3 * params.sigma3;
  const double k = (1.0 - am) * (1.0 - am);
  const double gap = -0.5 * ag * g2 * (am - ag) * (am - ag) / (k * (1.0 - ag)) -
                     0.5 * ab * b2 * (am - ab) * (am - ab) / (k * (1.0 - ab));
  rep.logRetained = gap * T / ag;
  rep.q = -std::expm1(rep.logRetained);
  return rep;
}

Weights no_green_weights(const ModelParams& params, const RiskAversionProfile& profile) {
  const auto opt = optimal_weights(params, profile);
  const auto syn = derive_synthetics(params);
  Weights w;
  w.green = 0.0;
  w.brown = opt.weights.brown;
  w.index = opt.betaP - syn.beta3 * w.brown;
  return w;
}

double q_no_green(const ModelParams& params, double alphaG, double T) {
  if (!(alphaG < 0.0)) throw DomainError("alphaG must be negative");
  if (!(T > 0.0)) throw DomainError("horizon must be positive");
  params.validate();
  const double g2 = params.lambdaG * params.lambdaG * params.sigma2 * params.sigma2;
  return -std::expm1(-0.5 * g2 * T / (1.0 - alphaG));
}

}  // namespace esg
