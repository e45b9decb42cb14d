#include "esg/market_model.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "esg/errors.hpp"
#include "esg/random.hpp"

namespace esg {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

double spanned_complement(double rho) { return std::sqrt(1.0 - rho * rho); }

}  // namespace

void ModelParams::validate() const {
  require_finite(r, "r");
  require_finite(lambda1, "lambda1");
  require_finite(lambdaG, "lambdaG");
  require_finite(lambdaB, "lambdaB");
  require_finite(thetaM, "thetaM");
  require_finite(thetaG, "thetaG");
  require_finite(thetaB, "thetaB");
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0) || !(sigma3 > 0.0) || !std::isfinite(sigma1) ||
      !std::isfinite(sigma2) || !std::isfinite(sigma3)) {
    throw DomainError("volatilities must be positive and finite");
  }
  if (!(std::abs(rho12) < 1.0) || !(std::abs(rho13) < 1.0)) {
    throw DomainError("correlations must lie strictly inside (-1, 1)");
  }
  if (std::abs(thetaM + thetaG + thetaB - 1.0) > 1e-12) {
    throw DomainError("thetaM + thetaG + thetaB must equal 1");
  }
}

SyntheticCoefficients derive_synthetics(const ModelParams& params) {
  params.validate();
  SyntheticCoefficients s;
  s.beta2 = params.sigma2 / params.sigma1 * params.rho12;
  s.beta3 = params.sigma3 / params.sigma1 * params.rho13;
  s.sigmaG = params.sigma2 * spanned_complement(params.rho12);
  s.sigmaB = params.sigma3 * spanned_complement(params.rho13);
  return s;
}

double portfolio_beta(const SyntheticCoefficients& syn, const Weights& w) {
  return w.index + syn.beta2 * w.green + syn.beta3 * w.brown;
}

IndexDynamics index_dynamics(const ModelParams& params, const Weights& w) {
  const auto syn = derive_synthetics(params);
  const double beta = portfolio_beta(syn, w);
  const double s1sq = params.sigma1 * params.sigma1;
  IndexDynamics d;
  d.volM = beta * params.sigma1;
  d.driftM = params.thetaM * params.r + params.lambda1 * s1sq * beta - 0.5 * d.volM * d.volM;
  d.volG = w.green * syn.sigmaG;
  d.driftG = params.thetaG * params.r + w.green * params.lambdaG * params.sigma2 * syn.sigmaG -
             0.5 * d.volG * d.volG;
  d.volB = w.brown * syn.sigmaB;
  d.driftB = params.thetaB * params.r + w.brown * params.lambdaB * params.sigma3 * syn.sigmaB -
             0.5 * d.volB * d.volB;
  return d;
}

WealthDynamics wealth_dynamics(const ModelParams& params, const Weights& w) {
  params.validate();
  const double c12 = spanned_complement(params.rho12);
  const double c13 = spanned_complement(params.rho13);
  const double s1 = params.sigma1, s2 = params.sigma2, s3 = params.sigma3;
  const double mu1 = params.r + params.lambda1 * s1 * s1;
  const double mu2 = params.r + params.lambda1 * s1 * s2 * params.rho12 + params.lambdaG * s2 * s2 * c12;
  const double mu3 = params.r + params.lambda1 * s1 * s3 * params.rho13 + params.lambdaB * s3 * s3 * c13;
  WealthDynamics d;
  d.loadM = w.index * s1 + w.green * s2 * params.rho12 + w.brown * s3 * params.rho13;
  d.loadG = w.green * s2 * c12;
  d.loadB = w.brown * s3 * c13;
  const double arithmetic = w.index * mu1 + w.green * mu2 + w.brown * mu3 + w.cash() * params.r;
  d.drift = arithmetic - 0.5 * (d.loadM * d.loadM + d.loadG * d.loadG + d.loadB * d.loadB);
  return d;
}

void PathBundle::write_csv(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  out << "path,step,logXm,logXg,logXb,logW\n";
  for (std::size_t p = 0; p < nPaths; ++p) {
    for (std::size_t s = 0; s <= nSteps; ++s) {
      const std::size_t k = node(p, s);
      out << p << ',' << s << ',' << logXm[k] << ',' << logXg[k] << ',' << logXb[k] << ','
          << logW[k] << '\n';
    }
  }
  out.precision(old_precision);
}

namespace {

void check_grid(double horizonT, std::size_t nSteps, std::size_t nPaths) {
  if (!(horizonT > 0.0) || !std::isfinite(horizonT)) throw DomainError("horizon must be positive");
  if (nSteps < 1) throw DomainError("nSteps must be at least 1");
  if (nPaths < 1) throw DomainError("nPaths must be at least 1");
}

}  // namespace

PathBundle simulate_paths(const ModelParams& params, const Weights& weights, double horizonT,
                          std::size_t nSteps, std::size_t nPaths, std::uint64_t seed,
                          const SimulationOptions& options) {
  check_grid(horizonT, nSteps, nPaths);
  if (!std::isfinite(weights.index) || !std::isfinite(weights.green) || !std::isfinite(weights.brown)) {
    throw DomainError("weights must be finite");
  }
  if (!(options.w0 > 0.0)) throw DomainError("initial wealth must be positive");
  const IndexDynamics idx = index_dynamics(params, weights);
  const WealthDynamics wd = wealth_dynamics(params, weights);

  PathBundle b;
  b.nPaths = nPaths;
  b.nSteps = nSteps;
  b.dt = horizonT / static_cast<double>(nSteps);
  b.seed = seed;
  const std::size_t nodes = nPaths * (nSteps + 1);
  const std::size_t edges = nPaths * nSteps;
  b.logXm.resize(nodes);
  b.logXg.resize(nodes);
  b.logXb.resize(nodes);
  b.logW.resize(nodes);
  b.dzM.resize(edges);
  b.dzG.resize(edges);
  b.dzB.resize(edges);

  const double dt = b.dt;
  const double sqdt = std::sqrt(dt);
  const double logW0 = std::log(options.w0);

  parallel_chunks(nPaths, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      NormalStream rng(seed, p);
      std::size_t k = b.node(p, 0);
      b.logXm[k] = b.logXg[k] = b.logXb[k] = options.logX0;
      b.logW[k] = logW0;
      for (std::size_t s = 0; s < nSteps; ++s) {
        const std::size_t e = b.edge(p, s);
        const double dzm = rng.next() * sqdt;
        const double dzg = rng.next() * sqdt;
        const double dzb = rng.next() * sqdt;
        b.dzM[e] = dzm;
        b.dzG[e] = dzg;
        b.dzB[e] = dzb;
        const std::size_t next = k + 1;
        b.logXm[next] = b.logXm[k] + idx.driftM * dt + idx.volM * dzm;
        b.logXg[next] = b.logXg[k] + idx.driftG * dt + idx.volG * dzg;
        b.logXb[next] = b.logXb[k] + idx.driftB * dt + idx.volB * dzb;
        b.logW[next] = b.logW[k] + wd.drift * dt + wd.loadM * dzm + wd.loadG * dzg + wd.loadB * dzb;
        k = next;
      }
    }
  });
  return b;
}

PriceBundle simulate_prices(const ModelParams& params, double horizonT, std::size_t nSteps,
                            std::size_t nPaths, std::uint64_t seed, unsigned threads) {
  check_grid(horizonT, nSteps, nPaths);
  params.validate();
  const double s1 = params.sigma1, s2 = params.sigma2, s3 = params.sigma3;
  const double c12 = spanned_complement(params.rho12);
  const double c13 = spanned_complement(params.rho13);
  const double mu1 = params.r + params.lambda1 * s1 * s1;
  const double mu2 = params.r + params.lambda1 * s1 * s2 * params.rho12 + params.lambdaG * s2 * s2 * c12;
  const double mu3 = params.r + params.lambda1 * s1 * s3 * params.rho13 + params.lambdaB * s3 * s3 * c13;

  PriceBundle b;
  b.nPaths = nPaths;
  b.nSteps = nSteps;
  b.dt = horizonT / static_cast<double>(nSteps);
  const std::size_t nodes = nPaths * (nSteps + 1);
  const std::size_t edges = nPaths * nSteps;
  b.logS1.resize(nodes);
  b.logS2.resize(nodes);
  b.logS3.resize(nodes);
  b.dzM.resize(edges);
  b.dzG.resize(edges);
  b.dzB.resize(edges);
  const double dt = b.dt;
  const double sqdt = std::sqrt(dt);

  parallel_chunks(nPaths, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      NormalStream rng(seed, p);
      std::size_t k = b.node(p, 0);
      b.logS1[k] = b.logS2[k] = b.logS3[k] = 0.0;
      for (std::size_t s = 0; s < nSteps; ++s) {
        const std::size_t e = b.edge(p, s);
        const double dzm = rng.next() * sqdt;
        const double dzg = rng.next() * sqdt;
        const double dzb = rng.next() * sqdt;
        b.dzM[e] = dzm;
        b.dzG[e] = dzg;
        b.dzB[e] = dzb;
        b.logS1[k + 1] = b.logS1[k] + (mu1 - 0.5 * s1 * s1) * dt + s1 * dzm;
        b.logS2[k + 1] = b.logS2[k] + (mu2 - 0.5 * s2 * s2) * dt + s2 * (params.rho12 * dzm + c12 * dzg);
        b.logS3[k + 1] = b.logS3[k] + (mu3 - 0.5 * s3 * s3) * dt + s3 * (params.rho13 * dzm + c13 * dzb);
        ++k;
      }
    }
  });
  return b;
}

SyntheticIncrements synthetic_log_increments(const ModelParams& params, double dlogS1,
                                             double dlogS2, double dlogS3, double dt) {
  const auto syn = derive_synthetics(params);
  // Undo the Ito term to get the return increment, hedge, then reapply.
  const double ret1 = dlogS1 + 0.5 * params.sigma1 * params.sigma1 * dt - params.r * dt;
  const double ret2 = dlogS2 + 0.5 * params.sigma2 * params.sigma2 * dt - params.r * dt;
  const double ret3 = dlogS3 + 0.5 * params.sigma3 * params.sigma3 * dt - params.r * dt;
  SyntheticIncrements out;
  out.green = ret2 - syn.beta2 * ret1 - 0.5 * syn.sigmaG * syn.sigmaG * dt;
  out.brown = ret3 - syn.beta3 * ret1 - 0.5 * syn.sigmaB * syn.sigmaB * dt;
  return out;
}

double wealth_from_indexes(double xm, double xg, double xb, double w0) {
  if (!(xm > 0.0) || !(xg > 0.0) || !(xb > 0.0)) throw DomainError("index ratios must be positive");
  return w0 * xm * xg * xb;
}

}  // namespace esg
