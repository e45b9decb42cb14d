#pragma once

// Calibration of the market model from monthly prices and T-bill yields:
// sample moments of log returns, Pearson correlations against the index,
// and prices of risk backed out of the model's drift identities.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "esg/market_model.hpp"

namespace esg {

struct PricePanel {
  std::vector<std::string> dates;  // strictly increasing, ISO-8601
  std::vector<double> index, green, brown;
  std::vector<double> riskFree;  // per-period rate

  std::size_t size() const { return dates.size(); }
  std::size_t returns() const { return dates.empty() ? 0 : dates.size() - 1; }
};

struct TickerRoles {
  std::string index, green, brown;  // empty: first three distinct tickers in file order
};

inline constexpr std::size_t kMinPanelRows = 24;

/// Prices CSV `date,ticker,adj_close`; rates CSV `date,yield_annualized`
/// (decimal, divided by 12). Inner-joins on date.
PricePanel load_panel(std::istream& prices, std::istream& rates, const TickerRoles& roles = {});

/// Per-period log returns of the three series and the rate over each period.
struct ReturnSeries {
  std::vector<double> index, green, brown;
  std::vector<double> riskFree;

  std::size_t size() const { return index.size(); }
};

/// riskFree[i] of the result is the panel rate at the start of period i.
ReturnSeries log_returns(const PricePanel& panel);

struct MomentEstimates {
  double sigma1 = 0.0, sigma2 = 0.0, sigma3 = 0.0;
  double rho12 = 0.0, rho13 = 0.0;
  double r = 0.0;
  double meanLog1 = 0.0, meanLog2 = 0.0, meanLog3 = 0.0;  // mean log return per period
  double seSigma1 = 0.0, seSigma2 = 0.0, seSigma3 = 0.0;
  double seRho12 = 0.0, seRho13 = 0.0;
  double rho23 = 0.0;  // empirical green-brown correlation (model implies rho12 * rho13)
  std::size_t sampleSize = 0;
};

MomentEstimates estimate_sigmas_rhos(const PricePanel& panel);
MomentEstimates estimate_sigmas_rhos(const ReturnSeries& returns);

/// Arithmetic drifts of the three price relatives.
struct Drifts {
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
};

/// Drifts implied by the model for given parameters.
Drifts model_drifts(const ModelParams& params);

/// Inverts the drift identities. Only the sigma, rho and r fields of
/// `params` are read; the returned copy carries the three lambdas.
ModelParams backout_lambdas(const Drifts& drifts, const ModelParams& params);

/// mean log return + sigma^2 / 2.
Drifts ito_drifts(const MomentEstimates& m);

struct EstimatedParams {
  ModelParams params;
  MomentEstimates moments;
  // rho23 - rho12 * rho13; a model diagnostic, not an error.
  double greenBrownCorrelationGap = 0.0;
};

EstimatedParams estimate_params(const PricePanel& panel);
EstimatedParams estimate_params(const ReturnSeries& returns);

/// Log returns of one simulated path with a constant rate r. Long synthetic
/// histories overflow as price levels, so round-trip checks go through this.
ReturnSeries returns_from_simulation(const PriceBundle& bundle, std::size_t path, double r);

}  // namespace esg
