#include "esg/allocation.hpp"

#include <cmath>

#include "esg/errors.hpp"

namespace esg {

namespace {

// alpha / (1 - alpha), the per-source growth factor at the optimum.
double growth_factor(double alpha) { return alpha / (1.0 - alpha); }

double cash_term(const ModelParams& p, const RiskAversionProfile& a) {
  return (p.thetaM * a.alphaM + p.thetaG * a.alphaG + p.thetaB * a.alphaB) * p.r;
}

}  // namespace

AllocationResult optimal_weights(const ModelParams& params, const RiskAversionProfile& profile) {
  require_valid(profile);
  const auto syn = derive_synthetics(params);
  AllocationResult res;
  res.weights.green = params.lambdaG / (std::sqrt(1.0 - params.rho12 * params.rho12) * (1.0 - profile.alphaG));
  res.weights.brown = params.lambdaB / (std::sqrt(1.0 - params.rho13 * params.rho13) * (1.0 - profile.alphaB));
  res.betaP = params.lambda1 / (1.0 - profile.alphaM);
  res.weights.index = res.betaP - syn.beta2 * res.weights.green - syn.beta3 * res.weights.brown;
  return res;
}

double value_coefficient(const ModelParams& params, const RiskAversionProfile& profile) {
  require_valid(profile);
  params.validate();
  const double m = params.lambda1 * params.sigma1;
  const double g = params.lambdaG * params.sigma2;
  const double b = params.lambdaB * params.sigma3;
  return 0.5 * m * m * growth_factor(profile.alphaM) + 0.5 * g * g * growth_factor(profile.alphaG) +
         0.5 * b * b * growth_factor(profile.alphaB) + cash_term(params, profile);
}

ValueFunction value_function(const ModelParams& params, const RiskAversionProfile& profile,
                             const IndexState& x, double tRemaining) {
  if (!(tRemaining >= 0.0)) throw DomainError("remaining horizon must be nonnegative");
  ValueFunction v;
  v.b = value_coefficient(params, profile);
  v.J = utility_eval(profile, x.xm, x.xg, x.xb) * std::exp(v.b * tRemaining);
  return v;
}

double merton_coefficient(const ModelParams& params, double alphaM) {
  if (!(alphaM < 0.0)) throw DomainError("alphaM must be negative");
  params.validate();
  const double m = params.lambda1 * params.sigma1;
  const double g = params.lambdaG * params.sigma2;
  const double b = params.lambdaB * params.sigma3;
  return 0.5 * (m * m + g * g + b * b) * growth_factor(alphaM) + alphaM * params.r;
}

MertonBenchmark merton_benchmark(const ModelParams& params, const RiskAversionProfile& profile,
                                 const IndexState& x, double w0, double tRemaining) {
  require_valid(profile);
  if (!(w0 > 0.0)) throw DomainError("initial wealth must be positive");
  if (!(x.xm > 0.0) || !(x.xg > 0.0) || !(x.xb > 0.0)) throw DomainError("index values must be positive");
  if (!(tRemaining >= 0.0)) throw DomainError("remaining horizon must be nonnegative");
  const double am = profile.alphaM;
  MertonBenchmark out;
  out.allocation = optimal_weights(params, RiskAversionProfile{am, am, am});
  out.bM = merton_coefficient(params, am);
  out.a = std::pow(x.xm, am) * std::pow(x.xg, profile.alphaG) * std::pow(x.xb, profile.alphaB) /
          (std::pow(w0, am) * profile.alphaG * profile.alphaB);
  out.c = w0 / (x.xm * x.xg * x.xb);
  out.JM = out.a * std::pow(w0, am) / am * std::exp(out.bM * tRemaining);
  return out;
}

MertonBenchmark merton_benchmark(const ModelParams& params, double alphaM, const IndexState& x,
                                 double w0, double tRemaining) {
  return merton_benchmark(params, RiskAversionProfile{alphaM, alphaM, alphaM}, x, w0, tRemaining);
}

double green_dominance_bound(double m, double alphaB) { return 1.0 - 1.0 / m + alphaB / m; }

DominanceReport green_dominance(const ModelParams& params, const RiskAversionProfile& profile) {
  params.validate();
  if (params.lambdaG == 0.0) throw DomainError("lambdaG must be nonzero");
  DominanceReport rep;
  rep.m = params.lambdaB / params.lambdaG *
          std::sqrt((1.0 - params.rho12 * params.rho12) / (1.0 - params.rho13 * params.rho13));
  const auto w = optimal_weights(params, profile).weights;
  rep.pi2GreaterThanPi3 = w.green > w.brown;
  if (rep.m > 1.0) {
    rep.thresholds = DominanceThresholds{1.0 - rep.m, green_dominance_bound(rep.m, profile.alphaB)};
  }
  return rep;
}

TradeoffSolution tradeoff_solve(const ModelParams& params, double alphaM, double alphaB) {
  params.validate();
  if (!(alphaM < 0.0)) throw DomainError("alphaM must be negative");
  if (!(alphaB <= alphaM)) throw DomainError("alphaB must not exceed alphaM");
  if (params.lambdaG == 0.0) throw DomainError("lambdaG must be nonzero");
  if (params.lambdaB == 0.0) return {};

  const double g2 = params.lambdaG * params.lambdaG * params.sigma2 * params.sigma2;
  const double b2 = params.lambdaB * params.lambdaB * params.sigma3 * params.sigma3;

  if (params.thetaM == 1.0 && params.thetaG == 0.0 && params.thetaB == 0.0) {
    const double ratio = b2 / g2;
    const double y = (1.0 + ratio) * growth_factor(alphaM) - ratio * growth_factor(alphaB);
    if (!(y < 0.0)) return {};
    return {TradeoffStatus::Solved, y / (1.0 + y)};
  }

  // General cash split: b(alphaG) - bM as a function of y = alphaG/(1-alphaG) in (-1, 0).
  const double target = merton_coefficient(params, alphaM);
  const auto residual = [&](double y) {
    const double alphaG = y / (1.0 + y);
    return value_coefficient(params, RiskAversionProfile{alphaM, alphaG, alphaB}) - target;
  };
  double lo = -1.0 + 1e-15;
  double hi = -1e-15;
  double flo = residual(lo);
  const double fhi = residual(hi);
  if (flo == 0.0) return {TradeoffStatus::Solved, lo / (1.0 + lo)};
  if ((flo < 0.0) == (fhi < 0.0)) return {};
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = residual(mid);
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  const double y = 0.5 * (lo + hi);
  return {TradeoffStatus::Solved, y / (1.0 + y)};
}

std::vector<TradeoffPoint> tradeoff_curve(const ModelParams& params, double alphaM,
                                          const std::vector<double>& alphaBGrid) {
  std::vector<TradeoffPoint> out;
  out.reserve(alphaBGrid.size());
  for (double alphaB : alphaBGrid) {
    TradeoffPoint pt;
    pt.alphaB = alphaB;
    pt.solution = tradeoff_solve(params, alphaM, alphaB);
    if (pt.solution.solved()) {
      const RiskAversionProfile prof{alphaM, pt.solution.alphaG, alphaB};
      pt.allocation = optimal_weights(params, prof);
      pt.b = value_coefficient(params, prof);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace esg
