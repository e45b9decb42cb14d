#pragma once

// One-factor market with an index, a green stock and a brown stock, the
// market-hedged synthetic assets, and exact simulation of the three wealth
// indexes for constant-weight strategies. Time is measured in periods
// (months for the bundled calibrations).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace esg {

struct ModelParams {
  double r = 0.0;        // risk-free rate per period
  double lambda1 = 0.0;  // price of market risk
  double lambdaG = 0.0;  // price of green idiosyncratic risk
  double lambdaB = 0.0;  // price of brown idiosyncratic risk
  double sigma1 = 0.0;   // index volatility
  double sigma2 = 0.0;   // green stock volatility
  double sigma3 = 0.0;   // brown stock volatility
  double rho12 = 0.0;    // corr(index, green)
  double rho13 = 0.0;    // corr(index, brown)
  // Attribution of the cash return r among the market/green/brown indexes.
  double thetaM = 1.0;
  double thetaG = 0.0;
  double thetaB = 0.0;

  /// Throws DomainError if a volatility is non-positive, a correlation is
  /// outside (-1, 1), a field is non-finite, or the theta split does not
  /// sum to one.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct SyntheticCoefficients {
  double beta2 = 0.0;
  double beta3 = 0.0;
  double sigmaG = 0.0;  // non-spanned green volatility
  double sigmaB = 0.0;  // non-spanned brown volatility
};

/// Fractions of wealth in the index, green stock and brown stock. The
/// remainder 1 - index - green - brown sits in cash. Negative entries are
/// short positions.
struct Weights {
  double index = 0.0;
  double green = 0.0;
  double brown = 0.0;

  double cash() const { return 1.0 - index - green - brown; }
  friend bool operator==(const Weights&, const Weights&) = default;
};

SyntheticCoefficients derive_synthetics(const ModelParams& params);

/// Exposure of the portfolio to the market factor.
double portfolio_beta(const SyntheticCoefficients& syn, const Weights& w);

/// Per-period drift and volatility of log X_m, log X_g, log X_b under a
/// constant-weight strategy.
struct IndexDynamics {
  double driftM = 0.0, volM = 0.0;
  double driftG = 0.0, volG = 0.0;
  double driftB = 0.0, volB = 0.0;

  double logWealthDrift() const { return driftM + driftG + driftB; }
};

IndexDynamics index_dynamics(const ModelParams& params, const Weights& w);

/// Drift and loadings of log W computed directly from the stock-level
/// self-financing equation, without going through the index split.
struct WealthDynamics {
  double drift = 0.0;
  double loadM = 0.0, loadG = 0.0, loadB = 0.0;
};

WealthDynamics wealth_dynamics(const ModelParams& params, const Weights& w);

/// Simulated log-index and log-wealth paths. Storage is path-major:
/// value(path, step) lives at path * (nSteps + 1) + step. The increments
/// dzM/dzG/dzB are Brownian increments (variance dt), indexed
/// path * nSteps + step.
struct PathBundle {
  std::size_t nPaths = 0;
  std::size_t nSteps = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;

  std::vector<double> logXm, logXg, logXb, logW;
  std::vector<double> dzM, dzG, dzB;

  std::size_t node(std::size_t path, std::size_t step) const { return path * (nSteps + 1) + step; }
  std::size_t edge(std::size_t path, std::size_t step) const { return path * nSteps + step; }
  double time(std::size_t step) const { return static_cast<double>(step) * dt; }

  /// CSV with header `path,step,logXm,logXg,logXb,logW`.
  void write_csv(std::ostream& out) const;
};

struct SimulationOptions {
  double logX0 = 0.0;  // initial log value of every index
  double w0 = 1.0;     // initial wealth
  unsigned threads = 0;  // 0: hardware concurrency; output does not depend on it
};

/// Exact simulation of the three log-index processes and of log-wealth.
/// Path p draws its increments from substream p of `seed` in the order
/// (zM, zG, zB) per step.
PathBundle simulate_paths(const ModelParams& params, const Weights& weights, double horizonT,
                          std::size_t nSteps, std::size_t nPaths, std::uint64_t seed,
                          const SimulationOptions& options = {});

/// Log prices of the index, green and brown stocks driven by the same
/// substreams as simulate_paths with the same seed.
struct PriceBundle {
  std::size_t nPaths = 0;
  std::size_t nSteps = 0;
  double dt = 0.0;
  std::vector<double> logS1, logS2, logS3;  // path-major, nSteps + 1 per path
  std::vector<double> dzM, dzG, dzB;

  std::size_t node(std::size_t path, std::size_t step) const { return path * (nSteps + 1) + step; }
  std::size_t edge(std::size_t path, std::size_t step) const { return path * nSteps + step; }
};

PriceBundle simulate_prices(const ModelParams& params, double horizonT, std::size_t nSteps,
                            std::size_t nPaths, std::uint64_t seed, unsigned threads = 0);

/// Log increments of the green and brown synthetic assets formed from one
/// step of stock log increments over dt.
struct SyntheticIncrements {
  double green = 0.0;
  double brown = 0.0;
};

SyntheticIncrements synthetic_log_increments(const ModelParams& params, double dlogS1,
                                             double dlogS2, double dlogS3, double dt);

/// Terminal wealth w0 * x_m * x_g * x_b from gross index ratios.
double wealth_from_indexes(double xm, double xg, double xb, double w0);

}  // namespace esg
