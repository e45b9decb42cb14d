#pragma once

// Closed-form optimal constant-weight allocation and value function, the
// single-exponent (Merton) benchmark, the green-versus-brown dominance
// condition, and the green/brown risk-aversion trade-off that keeps the
// value function at its benchmark level.

#include <optional>
#include <vector>

#include "esg/market_model.hpp"
#include "esg/preferences.hpp"

namespace esg {

struct AllocationResult {
  Weights weights;
  double betaP = 0.0;

  double cash() const { return weights.cash(); }
};

/// Values of the three wealth indexes.
struct IndexState {
  double xm = 1.0;
  double xg = 1.0;
  double xb = 1.0;
};

AllocationResult optimal_weights(const ModelParams& params, const RiskAversionProfile& profile);

/// Growth coefficient b of the optimal value function.
double value_coefficient(const ModelParams& params, const RiskAversionProfile& profile);

struct ValueFunction {
  double J = 0.0;
  double b = 0.0;
};

/// J = u(x) * exp(b * tRemaining) at the optimum.
ValueFunction value_function(const ModelParams& params, const RiskAversionProfile& profile,
                             const IndexState& x, double tRemaining);

struct MertonBenchmark {
  AllocationResult allocation;
  double JM = 0.0;
  double bM = 0.0;
  double a = 0.0;  // scale making the benchmark utility match u(x) at the start
  double c = 0.0;  // w0 / (xm * xg * xb)
};

/// Benchmark growth coefficient with all three exponents equal to alphaM.
double merton_coefficient(const ModelParams& params, double alphaM);

/// Single-exponent benchmark. `profile` supplies the multi-attribute
/// exponents used to align the benchmark scale a with u(x) at the start;
/// JM is a * w0^alphaM / alphaM * exp(bM * tRemaining).
MertonBenchmark merton_benchmark(const ModelParams& params, const RiskAversionProfile& profile,
                                 const IndexState& x, double w0, double tRemaining);

/// Same with profile = (alphaM, alphaM, alphaM).
MertonBenchmark merton_benchmark(const ModelParams& params, double alphaM, const IndexState& x,
                                 double w0, double tRemaining);

struct DominanceThresholds {
  double alphaBMax = 0.0;  // green dominance needs alphaB < alphaBMax = 1 - m
  double alphaGMin = 0.0;  // ... and alphaG > 1 - 1/m + alphaB/m at the profile's alphaB
};

struct DominanceReport {
  double m = 0.0;
  bool pi2GreaterThanPi3 = false;
  std::optional<DominanceThresholds> thresholds;  // only when m > 1
};

DominanceReport green_dominance(const ModelParams& params, const RiskAversionProfile& profile);

/// Green-exponent lower bound 1 - 1/m + alphaB/m for a given alphaB.
double green_dominance_bound(double m, double alphaB);

enum class TradeoffStatus { Solved, NoSolution };

struct TradeoffSolution {
  TradeoffStatus status = TradeoffStatus::NoSolution;
  double alphaG = 0.0;

  bool solved() const { return status == TradeoffStatus::Solved; }
};

/// Green exponent that keeps b equal to the benchmark bM for the given
/// market and brown exponents. With thetaM = 1 the relation is solved in
/// closed form; other cash splits use bisection on alphaG / (1 - alphaG).
/// Returns NoSolution when the answer would be alphaG >= 0 or lambdaB = 0.
/// Throws DomainError when lambdaG = 0 or alphaM is not negative.
TradeoffSolution tradeoff_solve(const ModelParams& params, double alphaM, double alphaB);

struct TradeoffPoint {
  double alphaB = 0.0;
  TradeoffSolution solution;
  AllocationResult allocation;  // meaningful only when solved
  double b = 0.0;               // value coefficient at (alphaM, alphaG, alphaB)
};

std::vector<TradeoffPoint> tradeoff_curve(const ModelParams& params, double alphaM,
                                          const std::vector<double>& alphaBGrid);

}  // namespace esg
