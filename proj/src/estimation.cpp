#include "esg/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>

#include "esg/csv.hpp"
#include "esg/errors.hpp"

namespace esg {

namespace {

struct Series {
  std::map<std::string, double> byDate;
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double covariance(const std::vector<double>& a, double ma, const std::vector<double>& b, double mb) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size() - 1);
}

std::vector<double> log_changes(const std::vector<double>& prices) {
  std::vector<double> out(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) out[i - 1] = std::log(prices[i] / prices[i - 1]);
  return out;
}

}  // namespace

PricePanel load_panel(std::istream& prices, std::istream& rates, const TickerRoles& roles) {
  const auto priceRows = csv::read(prices, {"date", "ticker", "adj_close"});
  std::vector<std::string> order;
  std::map<std::string, Series> byTicker;
  for (const auto& row : priceRows) {
    const auto& date = row.fields[0];
    const auto& ticker = row.fields[1];
    if (!csv::is_iso_date(date)) throw ParseError(row.line, "invalid date '" + date + "'");
    if (ticker.empty()) throw ParseError(row.line, "empty ticker");
    const double price = csv::to_double(row, 2, "adj_close");
    if (!(price > 0.0) || !std::isfinite(price)) throw ParseError(row.line, "price must be positive");
    auto [it, inserted] = byTicker.try_emplace(ticker);
    if (inserted) order.push_back(ticker);
    if (!it->second.byDate.emplace(date, price).second) {
      throw ParseError(row.line, "duplicate price for " + ticker + " on " + date);
    }
  }

  TickerRoles use = roles;
  if (use.index.empty() || use.green.empty() || use.brown.empty()) {
    if (order.size() < 3) throw InsufficientDataError("prices file needs at least three tickers");
    if (use.index.empty()) use.index = order[0];
    if (use.green.empty()) use.green = order[1];
    if (use.brown.empty()) use.brown = order[2];
  }
  for (const auto* t : {&use.index, &use.green, &use.brown}) {
    if (!byTicker.count(*t)) throw InsufficientDataError("ticker '" + *t + "' not found in prices");
  }

  const auto rateRows = csv::read(rates, {"date", "yield_annualized"});
  std::map<std::string, double> rateByDate;
  for (const auto& row : rateRows) {
    const auto& date = row.fields[0];
    if (!csv::is_iso_date(date)) throw ParseError(row.line, "invalid date '" + date + "'");
    const double y = csv::to_double(row, 1, "yield_annualized");
    if (!std::isfinite(y)) throw ParseError(row.line, "yield must be finite");
    if (!rateByDate.emplace(date, y / 12.0).second) throw ParseError(row.line, "duplicate rate on " + date);
  }

  PricePanel panel;
  const auto& idx = byTicker[use.index].byDate;
  const auto& grn = byTicker[use.green].byDate;
  const auto& brn = byTicker[use.brown].byDate;
  // std::map iterates in lexicographic order, which is chronological for ISO dates.
  for (const auto& [date, px] : idx) {
    const auto g = grn.find(date);
    const auto b = brn.find(date);
    const auto r = rateByDate.find(date);
    if (g == grn.end() || b == brn.end() || r == rateByDate.end()) continue;
    panel.dates.push_back(date);
    panel.index.push_back(px);
    panel.green.push_back(g->second);
    panel.brown.push_back(b->second);
    panel.riskFree.push_back(r->second);
  }
  if (panel.size() < kMinPanelRows) {
    throw InsufficientDataError("only " + std::to_string(panel.size()) + " aligned observations; need " +
                                std::to_string(kMinPanelRows));
  }
  return panel;
}

ReturnSeries log_returns(const PricePanel& panel) {
  ReturnSeries out;
  if (panel.size() < 2) return out;
  out.index = log_changes(panel.index);
  out.green = log_changes(panel.green);
  out.brown = log_changes(panel.brown);
  out.riskFree.assign(panel.riskFree.begin(), panel.riskFree.end() - 1);
  return out;
}

MomentEstimates estimate_sigmas_rhos(const PricePanel& panel) { return estimate_sigmas_rhos(log_returns(panel)); }

MomentEstimates estimate_sigmas_rhos(const ReturnSeries& returns) {
  if (returns.size() < 2) throw InsufficientDataError("need at least two returns");
  const auto& r1 = returns.index;
  const auto& r2 = returns.green;
  const auto& r3 = returns.brown;
  MomentEstimates m;
  m.sampleSize = r1.size();
  m.meanLog1 = mean(r1);
  m.meanLog2 = mean(r2);
  m.meanLog3 = mean(r3);
  const double v1 = covariance(r1, m.meanLog1, r1, m.meanLog1);
  const double v2 = covariance(r2, m.meanLog2, r2, m.meanLog2);
  const double v3 = covariance(r3, m.meanLog3, r3, m.meanLog3);
  if (!(v1 > 0.0) || !(v2 > 0.0) || !(v3 > 0.0)) throw DomainError("zero-variance return series");
  m.sigma1 = std::sqrt(v1);
  m.sigma2 = std::sqrt(v2);
  m.sigma3 = std::sqrt(v3);
  m.rho12 = covariance(r1, m.meanLog1, r2, m.meanLog2) / (m.sigma1 * m.sigma2);
  m.rho13 = covariance(r1, m.meanLog1, r3, m.meanLog3) / (m.sigma1 * m.sigma3);
  m.rho23 = covariance(r2, m.meanLog2, r3, m.meanLog3) / (m.sigma2 * m.sigma3);
  m.r = mean(returns.riskFree);

  const double n = static_cast<double>(m.sampleSize);
  m.seSigma1 = m.sigma1 / std::sqrt(2.0 * (n - 1.0));
  m.seSigma2 = m.sigma2 / std::sqrt(2.0 * (n - 1.0));
  m.seSigma3 = m.sigma3 / std::sqrt(2.0 * (n - 1.0));
  m.seRho12 = (1.0 - m.rho12 * m.rho12) / std::sqrt(n - 1.0);
  m.seRho13 = (1.0 - m.rho13 * m.rho13) / std::sqrt(n - 1.0);
  return m;
}

Drifts model_drifts(const ModelParams& p) {
  p.validate();
  Drifts d;
  d.mu1 = p.r + p.lambda1 * p.sigma1 * p.sigma1;
  d.mu2 = p.r + p.lambda1 * p.sigma1 * p.sigma2 * p.rho12 +
          p.lambdaG * p.sigma2 * p.sigma2 * std::sqrt(1.0 - p.rho12 * p.rho12);
  d.mu3 = p.r + p.lambda1 * p.sigma1 * p.sigma3 * p.rho13 +
          p.lambdaB * p.sigma3 * p.sigma3 * std::sqrt(1.0 - p.rho13 * p.rho13);
  return d;
}

ModelParams backout_lambdas(const Drifts& d, const ModelParams& params) {
  ModelParams p = params;
  if (!(p.sigma1 > 0.0) || !(p.sigma2 > 0.0) || !(p.sigma3 > 0.0)) {
    throw DomainError("volatilities must be positive");
  }
  if (!(std::abs(p.rho12) < 1.0) || !(std::abs(p.rho13) < 1.0)) {
    throw DomainError("correlations must lie strictly inside (-1, 1)");
  }
  p.lambda1 = (d.mu1 - p.r) / (p.sigma1 * p.sigma1);
  p.lambdaG = (d.mu2 - p.r - p.lambda1 * p.sigma1 * p.sigma2 * p.rho12) /
              (p.sigma2 * p.sigma2 * std::sqrt(1.0 - p.rho12 * p.rho12));
  p.lambdaB = (d.mu3 - p.r - p.lambda1 * p.sigma1 * p.sigma3 * p.rho13) /
              (p.sigma3 * p.sigma3 * std::sqrt(1.0 - p.rho13 * p.rho13));
  return p;
}

Drifts ito_drifts(const MomentEstimates& m) {
  return Drifts{m.meanLog1 + 0.5 * m.sigma1 * m.sigma1, m.meanLog2 + 0.5 * m.sigma2 * m.sigma2,
                m.meanLog3 + 0.5 * m.sigma3 * m.sigma3};
}

EstimatedParams estimate_params(const PricePanel& panel) { return estimate_params(log_returns(panel)); }

EstimatedParams estimate_params(const ReturnSeries& returns) {
  EstimatedParams e;
  e.moments = estimate_sigmas_rhos(returns);
  ModelParams base;
  base.r = e.moments.r;
  base.sigma1 = e.moments.sigma1;
  base.sigma2 = e.moments.sigma2;
  base.sigma3 = e.moments.sigma3;
  base.rho12 = e.moments.rho12;
  base.rho13 = e.moments.rho13;
  e.params = backout_lambdas(ito_drifts(e.moments), base);
  e.params.validate();
  e.greenBrownCorrelationGap = e.moments.rho23 - e.moments.rho12 * e.moments.rho13;
  return e;
}

ReturnSeries returns_from_simulation(const PriceBundle& bundle, std::size_t path, double r) {
  if (path >= bundle.nPaths) throw DomainError("path index out of range");
  ReturnSeries out;
  const std::size_t n = bundle.nSteps;
  out.index.resize(n);
  out.green.resize(n);
  out.brown.resize(n);
  out.riskFree.assign(n, r);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = bundle.node(path, s);
    out.index[s] = bundle.logS1[k + 1] - bundle.logS1[k];
    out.green[s] = bundle.logS2[k + 1] - bundle.logS2[k];
    out.brown[s] = bundle.logS3[k + 1] - bundle.logS3[k];
  }
  return out;
}

}  // namespace esg
