#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "esg/errors.hpp"
#include "esg/estimation.hpp"
#include "esg/fixtures.hpp"

using namespace esg;

namespace {

std::string month(int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-01", 2000 + k / 12, k % 12 + 1);
  return buf;
}

// Prices with small deterministic wiggles so no series is constant.
std::string prices_csv(int rows, int skipGreen = -1, int badRow = -1) {
  std::ostringstream os;
  os << "date,ticker,adj_close\n";
  for (int k = 0; k < rows; ++k) {
    os << month(k) << ",IDX," << 100 + k + 3 * std::sin(k) << '\n';
    if (k != skipGreen) os << month(k) << ",GRN," << (k == badRow ? -5.0 : 20 + std::cos(0.7 * k)) << '\n';
    os << month(k) << ",BRN," << 50 + 2 * std::sin(1.3 * k) + 0.1 * k << '\n';
  }
  return os.str();
}

std::string rates_csv(int rows) {
  std::ostringstream os;
  os << "date,yield_annualized\n";
  for (int k = 0; k < rows; ++k) os << month(k) << ",0.012\n";
  return os.str();
}

double rms_sigma_error(std::size_t n, const ModelParams& truth, int replications, std::uint64_t seed) {
  double acc = 0.0;
  for (int rep = 0; rep < replications; ++rep) {
    const auto prices = simulate_prices(truth, static_cast<double>(n), n, 1, seed + rep, 1);
    const auto m = estimate_sigmas_rhos(returns_from_simulation(prices, 0, truth.r));
    for (const auto& [est, ref] : {std::pair{m.sigma1, truth.sigma1}, std::pair{m.sigma2, truth.sigma2},
                                   std::pair{m.sigma3, truth.sigma3}}) {
      const double e = est / ref - 1.0;
      acc += e * e;
    }
  }
  return std::sqrt(acc / (3.0 * replications));
}

}  // namespace

TEST_CASE("120-row fixture gives 119 returns") {
  std::ifstream prices(ESG_FIXTURES "/prices_120.csv");
  std::ifstream rates(ESG_FIXTURES "/rates_120.csv");
  REQUIRE(prices);
  REQUIRE(rates);
  const auto panel = load_panel(prices, rates);
  CHECK(panel.size() == 120);
  CHECK(panel.returns() == 119);
  CHECK(log_returns(panel).size() == 119);
  CHECK(panel.dates.front() == "2010-01-01");
  CHECK(panel.index.front() == 1115.1);
  CHECK(panel.riskFree.front() == doctest::Approx(0.00543 / 12));
  const auto est = estimate_params(panel);
  CHECK(est.moments.sampleSize == 119);
  CHECK(est.params.sigma1 > 0.02);
  CHECK(est.params.sigma1 < 0.07);
  CHECK(std::abs(est.params.rho12) < 1.0);
}

TEST_CASE("ticker roles can be chosen explicitly") {
  std::istringstream p1(prices_csv(30)), r1(rates_csv(30));
  const auto def = load_panel(p1, r1);
  std::istringstream p2(prices_csv(30)), r2(rates_csv(30));
  const auto swapped = load_panel(p2, r2, TickerRoles{"BRN", "GRN", "IDX"});
  CHECK(def.index == swapped.brown);
  CHECK(def.brown == swapped.index);
  std::istringstream p3(prices_csv(30)), r3(rates_csv(30));
  CHECK_THROWS_AS(load_panel(p3, r3, TickerRoles{"XXX", "GRN", "BRN"}), InsufficientDataError);
}

TEST_CASE("inner join keeps only shared dates") {
  std::istringstream prices(prices_csv(40, 5)), rates(rates_csv(38));
  const auto panel = load_panel(prices, rates);
  CHECK(panel.size() == 37);
  for (std::size_t i = 1; i < panel.size(); ++i) CHECK(panel.dates[i - 1] < panel.dates[i]);
  CHECK(std::find(panel.dates.begin(), panel.dates.end(), month(5)) == panel.dates.end());
}

TEST_CASE("bad rows are rejected by row number") {
  std::istringstream prices(prices_csv(30, -1, 4)), rates(rates_csv(30));
  try {
    load_panel(prices, rates);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    // header is line 1, three lines per month
    CHECK(e.row() == 1 + 3 * 4 + 2);
    CHECK(std::string(e.what()).find("row 15") != std::string::npos);
  }
  std::istringstream dup("date,ticker,adj_close\n2000-01-01,A,1\n2000-01-01,A,2\n"), r(rates_csv(2));
  CHECK_THROWS_AS(load_panel(dup, r), ParseError);
  std::istringstream text("date,ticker,adj_close\n2000-01-01,A,abc\n"), r2(rates_csv(2));
  CHECK_THROWS_AS(load_panel(text, r2), ParseError);
  std::istringstream p3(prices_csv(30)), badRates("date,yield_annualized\n2000-13-45,0.01\n");
  CHECK_THROWS_AS(load_panel(p3, badRates), ParseError);
}

TEST_CASE("too few observations") {
  std::istringstream prices(prices_csv(23)), rates(rates_csv(23));
  CHECK_THROWS_AS(load_panel(prices, rates), InsufficientDataError);
  std::istringstream p2(prices_csv(24)), r2(rates_csv(24));
  CHECK(load_panel(p2, r2).size() == 24);
}

TEST_CASE("constant prices have zero variance") {
  PricePanel panel;
  for (int k = 0; k < 30; ++k) {
    panel.dates.push_back(month(k));
    panel.index.push_back(100 + k);
    panel.green.push_back(10.0);
    panel.brown.push_back(5 + 0.1 * k);
    panel.riskFree.push_back(0.001);
  }
  CHECK_THROWS_AS(estimate_sigmas_rhos(panel), DomainError);
}

TEST_CASE("drift construction and backout are inverse") {
  for (const auto& p : {fixtures::idt_wmt(), fixtures::shenandoah_dupont()}) {
    const auto back = backout_lambdas(model_drifts(p), p);
    CHECK(std::abs(back.lambda1 - p.lambda1) < 1e-12);
    CHECK(std::abs(back.lambdaG - p.lambdaG) < 1e-12);
    CHECK(std::abs(back.lambdaB - p.lambdaB) < 1e-12);
  }
  auto p = fixtures::idt_wmt();
  auto d = model_drifts(p);
  d.mu1 = p.r;
  CHECK(backout_lambdas(d, p).lambda1 == 0.0);
  p.sigma1 = 0;
  CHECK_THROWS_AS(backout_lambdas(d, p), DomainError);
}

TEST_CASE("Ito drift inverts the log-mean convention") {
  MomentEstimates m;
  m.meanLog1 = 0.01;
  m.sigma1 = 0.2;
  m.meanLog2 = -0.01;
  m.sigma2 = 0.1;
  m.meanLog3 = 0;
  m.sigma3 = 0.3;
  const auto d = ito_drifts(m);
  CHECK(d.mu1 == doctest::Approx(0.03));
  CHECK(d.mu2 == doctest::Approx(-0.005));
  CHECK(d.mu3 == doctest::Approx(0.045));
}

TEST_CASE("round trip on 10^4 synthetic months") {
  const auto truth = fixtures::idt_wmt();
  const auto prices = simulate_prices(truth, 10000, 10000, 1, 404, 1);
  const auto est = estimate_params(returns_from_simulation(prices, 0, truth.r));
  CHECK(std::abs(est.params.sigma1 / truth.sigma1 - 1) < 0.05);
  CHECK(std::abs(est.params.sigma2 / truth.sigma2 - 1) < 0.05);
  CHECK(std::abs(est.params.sigma3 / truth.sigma3 - 1) < 0.05);
  CHECK(std::abs(est.params.rho12 - truth.rho12) < 0.03);
  CHECK(std::abs(est.params.rho13 - truth.rho13) < 0.03);
  CHECK(est.params.r == doctest::Approx(truth.r).epsilon(1e-12));
  CHECK(std::abs(est.greenBrownCorrelationGap) < 0.05);
}

TEST_CASE("round trip on 10^5 synthetic months recovers lambdas") {
  const auto truth = fixtures::idt_wmt();
  const auto prices = simulate_prices(truth, 100000, 100000, 1, 2025, 1);
  const auto est = estimate_params(returns_from_simulation(prices, 0, truth.r));
  CHECK(std::abs(est.params.sigma1 / truth.sigma1 - 1) < 0.05);
  CHECK(std::abs(est.params.rho12 - truth.rho12) < 0.03);
  CHECK(std::abs(est.params.rho13 - truth.rho13) < 0.03);
  CHECK(std::abs(est.params.lambda1 / truth.lambda1 - 1) < 0.10);
  CHECK(std::abs(est.params.lambdaG / truth.lambdaG - 1) < 0.10);
  CHECK(std::abs(est.params.lambdaB / truth.lambdaB - 1) < 0.10);
}

TEST_CASE("estimation error shrinks like one over root n") {
  const auto truth = fixtures::shenandoah_dupont();
  std::vector<double> logN, logE;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    logN.push_back(std::log(static_cast<double>(n)));
    logE.push_back(std::log(rms_sigma_error(n, truth, 16, 7000 + n)));
  }
  const double mx = (logN[0] + logN[1] + logN[2]) / 3, my = (logE[0] + logE[1] + logE[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (logN[i] - mx) * (logE[i] - my);
    sxx += (logN[i] - mx) * (logN[i] - mx);
  }
  const double slope = sxy / sxx;
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));
}

TEST_CASE("simulation path index is checked") {
  const auto prices = simulate_prices(fixtures::idt_wmt(), 12, 12, 2, 1, 1);
  CHECK_THROWS_AS(returns_from_simulation(prices, 2, 0.0), DomainError);
}
