#include "esg/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "esg/errors.hpp"
#include "esg/grid.hpp"
#include "esg/random.hpp"
#include "esg/wel.hpp"

namespace esg {

double McEstimate::z_score(double logAbsReference) const {
  const double reference = sign * std::exp(logAbsReference - logShift);
  const double diff = sign * scaledMean - reference;
  if (scaledError == 0.0) return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return diff / scaledError;
}

ShockSums draw_shocks(double T, std::size_t nSteps, std::size_t nPairs, std::uint64_t seed,
                      unsigned threads) {
  if (!(T > 0.0)) throw DomainError("horizon must be positive");
  if (nSteps < 1) throw DomainError("nSteps must be at least 1");
  ShockSums s;
  s.horizon = T;
  s.m.resize(nPairs);
  s.g.resize(nPairs);
  s.b.resize(nPairs);
  const double sqdt = std::sqrt(T / static_cast<double>(nSteps));
  parallel_chunks(nPairs, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      NormalStream rng(seed, k);
      double zm = 0.0, zg = 0.0, zb = 0.0;
      for (std::size_t step = 0; step < nSteps; ++step) {
        zm += rng.next() * sqdt;
        zg += rng.next() * sqdt;
        zb += rng.next() * sqdt;
      }
      s.m[k] = zm;
      s.g[k] = zg;
      s.b[k] = zb;
    }
  });
  return s;
}

McEstimate expected_utility_on(const ShockSums& shocks, const ModelParams& params,
                               const RiskAversionProfile& profile, const Weights& weights) {
  require_valid(profile);
  const std::size_t nPairs = shocks.m.size();
  if (nPairs < 2) throw DomainError("need at least two antithetic pairs");
  const IndexDynamics d = index_dynamics(params, weights);
  const double T = shocks.horizon;
  const double am = profile.alphaM, ag = profile.alphaG, ab = profile.alphaB;
  const double logPrefactor = -std::log(std::abs(am * ag * ab));
  const double center = logPrefactor + T * (am * d.driftM + ag * d.driftG + ab * d.driftB);
  const double loadM = am * d.volM, loadG = ag * d.volG, loadB = ab * d.volB;

  // log|u| of the path and its antithetic partner differ only in the sign
  // of the diffusion part.
  std::vector<double> spread(nPairs);
  double maxAbsSpread = 0.0;
  for (std::size_t k = 0; k < nPairs; ++k) {
    spread[k] = loadM * shocks.m[k] + loadG * shocks.g[k] + loadB * shocks.b[k];
    maxAbsSpread = std::max(maxAbsSpread, std::abs(spread[k]));
  }
  McEstimate est;
  est.sign = utility_sign(profile);
  est.nPaths = 2 * nPairs;
  est.logShift = center + maxAbsSpread;

  // Shifted-data mean/variance: exact zero variance when all pairs agree.
  const auto pairValue = [&](std::size_t k) {
    return 0.5 * (std::exp(center + spread[k] - est.logShift) + std::exp(center - spread[k] - est.logShift));
  };
  const double ref = pairValue(0);
  double sum = 0.0, sumSq = 0.0;
  for (std::size_t k = 0; k < nPairs; ++k) {
    const double dev = pairValue(k) - ref;
    sum += dev;
    sumSq += dev * dev;
  }
  const double n = static_cast<double>(nPairs);
  const double meanDev = sum / n;
  const double var = std::max(0.0, (sumSq - sum * meanDev) / (n - 1.0));
  est.scaledMean = ref + meanDev;
  est.scaledError = std::sqrt(var / n);
  const double scale = std::exp(est.logShift);
  est.estimate = est.sign * est.scaledMean * scale;
  est.standardError = est.scaledError * scale;
  return est;
}

McEstimate expected_utility_mc(const ModelParams& params, const RiskAversionProfile& profile,
                               const Weights& weights, double T, std::size_t nPaths,
                               std::uint64_t seed, const McOptions& options) {
  if (nPaths < 100) throw DomainError("expected_utility_mc needs at least 100 paths");
  if (!std::isfinite(weights.index) || !std::isfinite(weights.green) || !std::isfinite(weights.brown)) {
    throw DomainError("weights must be finite");
  }
  if (!(T > 0.0)) throw DomainError("horizon must be positive");
  const std::size_t nSteps = options.nSteps != 0 ? options.nSteps : static_cast<std::size_t>(std::ceil(T));
  const auto shocks = draw_shocks(T, nSteps, (nPaths + 1) / 2, seed, options.threads);
  return expected_utility_on(shocks, params, profile, weights);
}

double log_abs_closed_form(const RiskAversionProfile& profile, double bStar, double T) {
  return log_abs_utility(profile, 0.0, 0.0, 0.0) + bStar * T;
}

std::vector<double> GridAxis::values() const { return grid_values(lo, hi, step); }

GridSearchResult grid_search_optimal(const ModelParams& params, const RiskAversionProfile& profile,
                                     double T, const GridAxis& index, const GridAxis& green,
                                     const GridAxis& brown, std::size_t nPaths, std::uint64_t seed,
                                     const McOptions& options) {
  if (nPaths < 100) throw DomainError("grid search needs at least 100 paths");
  const std::size_t nSteps = options.nSteps != 0 ? options.nSteps : static_cast<std::size_t>(std::ceil(T));
  const auto shocks = draw_shocks(T, nSteps, (nPaths + 1) / 2, seed, options.threads);
  const auto xs = index.values();
  const auto gs = green.values();
  const auto bs = brown.values();

  GridSearchResult res;
  double bestKey = -std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bg = 0, bb = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      for (std::size_t k = 0; k < bs.size(); ++k) {
        const Weights w{xs[i], gs[j], bs[k]};
        const auto est = expected_utility_on(shocks, params, profile, w);
        // E[u] = sign * exp(logAbs); larger is better.
        const double logAbs = est.logShift + std::log(est.scaledMean);
        const double key = est.sign < 0.0 ? -logAbs : logAbs;
        ++res.evaluated;
        if (key > bestKey) {
          bestKey = key;
          res.argmax = w;
          res.best = est;
          bi = i;
          bg = j;
          bb = k;
        }
      }
    }
  }
  const auto edge = [](std::size_t at, std::size_t n) { return n > 1 && (at == 0 || at + 1 == n); };
  res.onBoundary = edge(bi, xs.size()) || edge(bg, gs.size()) || edge(bb, bs.size());
  return res;
}

VerificationReport verify_strategy(const ModelParams& params, const RiskAversionProfile& profile,
                                   const Weights& weights, double T, std::size_t nPaths,
                                   std::uint64_t seed, const McOptions& options) {
  VerificationReport rep;
  rep.mc = expected_utility_mc(params, profile, weights, T, nPaths, seed, options);
  rep.bStar = fixed_weight_value(params, profile, weights);
  rep.logAbsClosedForm = log_abs_closed_form(profile, rep.bStar, T);
  rep.closedForm = rep.mc.sign * std::exp(rep.logAbsClosedForm);
  rep.zScore = rep.mc.z_score(rep.logAbsClosedForm);
  rep.pass = std::abs(rep.zScore) < 3.0;
  return rep;
}

}  // namespace esg
