#include "esg/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "esg/allocation.hpp"
#include "esg/csv.hpp"
#include "esg/errors.hpp"
#include "esg/estimation.hpp"
#include "esg/fixtures.hpp"
#include "esg/grid.hpp"
#include "esg/mc_oracle.hpp"
#include "esg/params_io.hpp"
#include "esg/wel.hpp"

namespace esg::cli {

using nlohmann::json;

namespace {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return csv::format(v); }

json profile_json(const RiskAversionProfile& p) {
  return json{{"alphaM", p.alphaM}, {"alphaG", p.alphaG}, {"alphaB", p.alphaB}};
}

json allocation_json(const AllocationResult& a) {
  return json{{"pi1", a.weights.index}, {"pi2", a.weights.green}, {"pi3", a.weights.brown},
              {"piCash", a.cash()},     {"betaP", a.betaP}};
}

// ---- allocation sweeps ------------------------------------------------------

struct SweepRow {
  double x = 0.0;
  RiskAversionProfile profile;
  AllocationResult allocation;
};

enum class Vary { AlphaG, AlphaB, Kappa };

std::string vary_name(Vary v) {
  switch (v) {
    case Vary::AlphaG: return "alphaG";
    case Vary::AlphaB: return "alphaB";
    case Vary::Kappa: return "kappa";
  }
  return "x";
}

std::vector<SweepRow> allocation_sweep(const ModelParams& params, Vary vary, const std::vector<double>& grid,
                                       RiskAversionProfile base, const EsgScoreTable* scores) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    RiskAversionProfile prof = base;
    switch (vary) {
      case Vary::AlphaG: prof.alphaG = x; break;
      case Vary::AlphaB: prof.alphaB = x; break;
      case Vary::Kappa:
        if (scores == nullptr) throw ValidationError("--vary kappa needs --scores");
        prof = kappa_map(base.alphaM, x, *scores);
        break;
    }
    rows.push_back(SweepRow{x, prof, optimal_weights(params, prof)});
  }
  return rows;
}

void write_sweep(std::ostream& out, Vary vary, const std::vector<SweepRow>& rows, const std::string& series = {}) {
  for (const auto& r : rows) {
    if (!series.empty()) out << series << ',';
    out << fmt(r.x) << ',' << fmt(r.profile.alphaM) << ',' << fmt(r.profile.alphaG) << ','
        << fmt(r.profile.alphaB) << ',' << fmt(r.allocation.weights.index) << ','
        << fmt(r.allocation.weights.green) << ',' << fmt(r.allocation.weights.brown) << ','
        << fmt(r.allocation.cash()) << '\n';
  }
  (void)vary;
}

std::string sweep_header(Vary vary) { return vary_name(vary) + ",alphaM,alphaG,alphaB,pi1,pi2,pi3,piCash"; }

// ---- trade-off / WEL / indifference writers --------------------------------

constexpr const char* kTradeoffHeader = "alphaB,alphaG,pi1,pi2,pi3,b";

void write_tradeoff(std::ostream& out, const std::vector<TradeoffPoint>& pts, const std::string& series = {}) {
  for (const auto& p : pts) {
    if (!series.empty()) out << series << ',';
    if (!p.solution.solved()) {
      out << fmt(p.alphaB) << ",nan,nan,nan,nan,nan\n";
      continue;
    }
    out << fmt(p.alphaB) << ',' << fmt(p.solution.alphaG) << ',' << fmt(p.allocation.weights.index) << ','
        << fmt(p.allocation.weights.green) << ',' << fmt(p.allocation.weights.brown) << ',' << fmt(p.b) << '\n';
  }
}

constexpr const char* kWelHeader = "kappa,alphaG,alphaB,q";

void write_wel_kappa(std::ostream& out, const ModelParams& params, double alphaM, const EsgScoreTable& scores,
                     const std::vector<double>& kappas, double T, const std::string& series = {}) {
  for (double k : kappas) {
    const auto prof = kappa_map(alphaM, k, scores);
    const auto rep = q_merton(params, prof, T);
    if (!series.empty()) out << series << ',';
    out << fmt(k) << ',' << fmt(prof.alphaG) << ',' << fmt(prof.alphaB) << ',' << fmt(rep.q) << '\n';
  }
}

void write_wel_no_green(std::ostream& out, const ModelParams& params, const std::vector<double>& alphaGs,
                        double T, const std::string& series = {}) {
  for (double ag : alphaGs) {
    if (!series.empty()) out << series << ',';
    out << fmt(ag) << ',' << fmt(q_no_green(params, ag, T)) << '\n';
  }
}

void write_indifference(std::ostream& out, double alphaM, const EsgScoreTable& scores,
                        const std::vector<double>& kappas, double level, double xm, const std::vector<double>& xgGrid) {
  for (double k : kappas) {
    const auto curve = indifference_curve_level(kappa_map(alphaM, k, scores), level, xm);
    for (double xg : xgGrid) out << fmt(k) << ',' << fmt(xg) << ',' << fmt(curve.brown_at(xg)) << '\n';
  }
}

// ---- figures ----------------------------------------------------------------

struct Pair {
  ModelParams params;
  EsgScoreTable scores;
};

Pair pair_for(bool shenandoah, const std::string& paramsOverride) {
  Pair p{shenandoah ? fixtures::shenandoah_dupont() : fixtures::idt_wmt(),
         shenandoah ? fixtures::shenandoah_dupont_scores() : fixtures::idt_wmt_scores()};
  if (!paramsOverride.empty()) p.params = load_params(paramsOverride);
  return p;
}

std::string series_label(const char* name, double v) { return std::string(name) + "=" + fmt(v); }

}  // namespace

std::string figure_csv(int figure, const std::string& paramsOverride) {
  std::ostringstream out;
  switch (figure) {
    case 1:
    case 3: {  // green exponent sweeps at two brown exponents
      const auto pair = pair_for(figure == 3, paramsOverride);
      out << "series," << sweep_header(Vary::AlphaG) << '\n';
      for (double ab : {-5.0, -3.0}) {
        const auto rows = allocation_sweep(pair.params, Vary::AlphaG, grid_values(-2.0, -0.01, 0.01),
                                           RiskAversionProfile{-2.5, -2.5, ab}, nullptr);
        write_sweep(out, Vary::AlphaG, rows, series_label("alphaB", ab));
      }
      break;
    }
    case 2:
    case 4: {  // brown exponent sweeps at two green exponents
      const auto pair = pair_for(figure == 4, paramsOverride);
      out << "series," << sweep_header(Vary::AlphaB) << '\n';
      for (double ag : {-2.0, -0.5}) {
        const auto rows = allocation_sweep(pair.params, Vary::AlphaB, grid_values(-2.5, -5.0, -0.025),
                                           RiskAversionProfile{-2.5, ag, -2.5}, nullptr);
        write_sweep(out, Vary::AlphaB, rows, series_label("alphaG", ag));
      }
      break;
    }
    case 5: {  // trade-off curves for several market exponents
      const auto pair = pair_for(false, paramsOverride);
      out << "series," << kTradeoffHeader << '\n';
      for (double am : {-1.0, -2.0, -3.0, -4.0}) {
        write_tradeoff(out, tradeoff_curve(pair.params, am, grid_values(am, -10.0, -0.05)),
                       series_label("alphaM", am));
      }
      break;
    }
    case 6: {  // allocations along the alphaM = -4 trade-off curve
      const auto pair = pair_for(false, paramsOverride);
      out << kTradeoffHeader << '\n';
      write_tradeoff(out, tradeoff_curve(pair.params, -4.0, grid_values(-4.0, -10.0, -0.05)));
      break;
    }
    case 7: {  // indifference curves at the unit-index Merton utility level
      const auto pair = pair_for(false, paramsOverride);
      const double am = -3.0;
      out << "kappa,xg,xb\n";
      write_indifference(out, am, pair.scores, {0.0, 0.1, 0.2, 0.3}, 1.0 / (am * am * am), 1.0,
                         grid_values(0.5, 2.0, 0.01));
      break;
    }
    case 8:
    case 9: {  // kappa sweeps
      const auto pair = pair_for(figure == 9, paramsOverride);
      out << "series," << sweep_header(Vary::Kappa) << '\n';
      for (double am : {-3.0, -5.0}) {
        const auto rows = allocation_sweep(pair.params, Vary::Kappa, grid_values(0.0, 2.0, 0.02),
                                           RiskAversionProfile{am, am, am}, &pair.scores);
        write_sweep(out, Vary::Kappa, rows, series_label("alphaM", am));
      }
      break;
    }
    case 10:
    case 11: {  // GWEL of the single-exponent strategy versus kappa
      const auto pair = pair_for(figure == 11, paramsOverride);
      out << "series," << kWelHeader << '\n';
      for (double am : {-3.0, -5.0}) {
        write_wel_kappa(out, pair.params, am, pair.scores, grid_values(0.0, 2.0, 0.02), 12.0,
                        series_label("alphaM", am));
      }
      break;
    }
    case 12: {  // GWEL of skipping the green stock
      out << "series,alphaG,q\n";
      const auto grid = grid_values(-5.0, -0.01, 0.01);
      write_wel_no_green(out, pair_for(false, paramsOverride).params, grid, 12.0, "IDT/WMT");
      write_wel_no_green(out, pair_for(true, paramsOverride).params, grid, 12.0, "Shenandoah/DuPont");
      break;
    }
    default:
      throw ValidationError("unknown figure " + std::to_string(figure) + " (expected 1-12)");
  }
  return out.str();
}

namespace {

RiskAversionProfile profile_from(double alphaM, const std::optional<double>& alphaG,
                                 const std::optional<double>& alphaB, const std::optional<double>& kappa,
                                 const std::string& scoresPath) {
  if (kappa) {
    if (alphaG || alphaB) throw ValidationError("--kappa cannot be combined with --alpha-g/--alpha-b");
    if (scoresPath.empty()) throw ValidationError("--kappa needs --scores");
    return kappa_map(alphaM, *kappa, load_scores(scoresPath));
  }
  if (alphaG.has_value() != alphaB.has_value()) throw ValidationError("give both --alpha-g and --alpha-b");
  return RiskAversionProfile{alphaM, alphaG.value_or(alphaM), alphaB.value_or(alphaM)};
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green/brown multi-attribute CRRA portfolio tools"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::function<void()> action;

  // estimate
  std::string pricesPath, ratesPath, outPath, indexTicker, greenTicker, brownTicker;
  auto* estimate = app.add_subcommand("estimate", "Calibrate model parameters from prices and T-bill yields");
  estimate->add_option("--prices", pricesPath, "CSV date,ticker,adj_close")->required();
  estimate->add_option("--rates", ratesPath, "CSV date,yield_annualized")->required();
  estimate->add_option("--out", outPath, "Output parameter JSON")->required();
  estimate->add_option("--index", indexTicker, "Index ticker (default: first in file)");
  estimate->add_option("--green", greenTicker, "Green stock ticker (default: second in file)");
  estimate->add_option("--brown", brownTicker, "Brown stock ticker (default: third in file)");
  estimate->callback([&] {
    action = [&] {
      auto prices = open_input(pricesPath);
      auto rates = open_input(ratesPath);
      const auto panel = load_panel(prices, rates, TickerRoles{indexTicker, greenTicker, brownTicker});
      const auto est = estimate_params(panel);
      write_json(outPath, estimated_to_json(est));
      out << "wrote " << outPath << " from " << est.moments.sampleSize << " returns\n";
      if (std::abs(est.greenBrownCorrelationGap) > 0.1) {
        err << "note: empirical green/brown correlation deviates from rho12*rho13 by "
            << fmt(est.greenBrownCorrelationGap) << '\n';
      }
    };
  });

  // shared options
  std::string paramsPath, scoresPath;
  double alphaM = -2.5;
  std::optional<double> alphaG, alphaB, kappa;

  auto* allocate = app.add_subcommand("allocate", "Optimal weights and value coefficient as JSON");
  allocate->add_option("--params", paramsPath, "Parameter JSON")->required();
  allocate->add_option("--alpha-m", alphaM, "Market exponent (< 0)")->required();
  allocate->add_option("--alpha-g", alphaG, "Green exponent");
  allocate->add_option("--alpha-b", alphaB, "Brown exponent");
  allocate->add_option("--kappa", kappa, "Rating sensitivity (with --scores)");
  allocate->add_option("--scores", scoresPath, "Score JSON {eMarket, eGreen, eBrown}");
  allocate->callback([&] {
    action = [&] {
      const auto params = load_params(paramsPath);
      const auto prof = profile_from(alphaM, alphaG, alphaB, kappa, scoresPath);
      require_valid(prof);
      const auto alloc = optimal_weights(params, prof);
      json j = allocation_json(alloc);
      j["profile"] = profile_json(prof);
      j["admissible"] = prof.admissible();
      j["b"] = value_coefficient(params, prof);
      j["bM"] = merton_coefficient(params, prof.alphaM);
      out << j.dump(2) << '\n';
    };
  });

  std::string gridSpec;
  auto* tradeoff = app.add_subcommand("tradeoff", "Green/brown trade-off curve at fixed satisfaction (CSV)");
  tradeoff->add_option("--params", paramsPath)->required();
  tradeoff->add_option("--alpha-m", alphaM)->required();
  tradeoff->add_option("--alpha-b-grid", gridSpec, "LO:HI:STEP")->required();
  tradeoff->callback([&] {
    action = [&] {
      const auto params = load_params(paramsPath);
      out << kTradeoffHeader << '\n';
      write_tradeoff(out, tradeoff_curve(params, alphaM, parse_grid(gridSpec)));
    };
  });

  double domAlphaB = -5.0;
  std::optional<double> domAlphaG;
  auto* dominance = app.add_subcommand("dominance", "Green-versus-brown dominance ratio and thresholds (JSON)");
  dominance->add_option("--params", paramsPath)->required();
  dominance->add_option("--alpha-m", alphaM, "Market exponent for the weight comparison")->capture_default_str();
  dominance->add_option("--alpha-g", domAlphaG, "Green exponent (default: alpha-m)");
  dominance->add_option("--alpha-b", domAlphaB, "Brown exponent for the green threshold")->capture_default_str();
  dominance->callback([&] {
    action = [&] {
      const auto params = load_params(paramsPath);
      const RiskAversionProfile prof{alphaM, domAlphaG.value_or(alphaM), domAlphaB};
      const auto rep = green_dominance(params, prof);
      json j{{"m", rep.m}, {"pi2GreaterThanPi3", rep.pi2GreaterThanPi3}, {"profile", profile_json(prof)}};
      if (rep.thresholds) {
        j["alphaBThreshold"] = rep.thresholds->alphaBMax;
        j["alphaGThreshold"] = rep.thresholds->alphaGMin;
      } else {
        j["alphaBThreshold"] = nullptr;
        j["alphaGThreshold"] = nullptr;
      }
      out << j.dump(2) << '\n';
    };
  });

  double horizon = 12.0;
  bool noGreen = false;
  std::string kappaGrid, alphaGGrid;
  auto* wel = app.add_subcommand("wel", "Green-index wealth-equivalent loss sweeps (CSV)");
  wel->add_option("--params", paramsPath)->required();
  wel->add_option("--alpha-m", alphaM, "Market exponent (kappa sweep)");
  wel->add_option("--kappa-grid", kappaGrid, "LO:HI:STEP");
  wel->add_option("--scores", scoresPath, "Score JSON");
  wel->add_option("-T,--horizon", horizon, "Horizon in periods")->capture_default_str();
  wel->add_flag("--no-green", noGreen, "Loss from holding no green stock");
  wel->add_option("--alpha-g-grid", alphaGGrid, "LO:HI:STEP (with --no-green)");
  wel->callback([&] {
    action = [&] {
      const auto params = load_params(paramsPath);
      if (noGreen) {
        if (alphaGGrid.empty()) throw ValidationError("--no-green needs --alpha-g-grid");
        out << "alphaG,q\n";
        write_wel_no_green(out, params, parse_grid(alphaGGrid), horizon);
        return;
      }
      if (kappaGrid.empty() || scoresPath.empty()) throw ValidationError("wel needs --kappa-grid and --scores");
      out << kWelHeader << '\n';
      write_wel_kappa(out, params, alphaM, load_scores(scoresPath), parse_grid(kappaGrid), horizon);
    };
  });

  std::string varyName;
  auto* sweep = app.add_subcommand("sweep", "Optimal allocations along one varying exponent or kappa (CSV)");
  sweep->add_option("--params", paramsPath)->required();
  sweep->add_option("--vary", varyName, "alpha-g | alpha-b | kappa")
      ->required()
      ->check(CLI::IsMember({"alpha-g", "alpha-b", "kappa"}));
  sweep->add_option("--grid", gridSpec, "LO:HI:STEP")->required();
  sweep->add_option("--alpha-m", alphaM)->required();
  sweep->add_option("--alpha-g", alphaG, "Fixed green exponent (default alpha-m)");
  sweep->add_option("--alpha-b", alphaB, "Fixed brown exponent (default alpha-m)");
  sweep->add_option("--scores", scoresPath, "Score JSON (kappa sweeps)");
  sweep->callback([&] {
    action = [&] {
      const auto params = load_params(paramsPath);
      const Vary vary = varyName == "alpha-g" ? Vary::AlphaG : varyName == "alpha-b" ? Vary::AlphaB : Vary::Kappa;
      const RiskAversionProfile base{alphaM, alphaG.value_or(alphaM), alphaB.value_or(alphaM)};
      std::optional<EsgScoreTable> scores;
      if (!scoresPath.empty()) scores = load_scores(scoresPath);
      const auto rows = allocation_sweep(params, vary, parse_grid(gridSpec), base, scores ? &*scores : nullptr);
      out << sweep_header(vary) << '\n';
      write_sweep(out, vary, rows);
    };
  });

  std::string kappaList, xgGrid = "0.5:2:0.01";
  double level = 0.0, xm = 1.0;
  auto* indiff = app.add_subcommand("indifference", "Green/brown indifference curves per kappa (CSV)");
  indiff->add_option("--kappa-list", kappaList, "Comma-separated kappas")->required();
  indiff->add_option("--level", level, "Utility level (< 0)")->required();
  indiff->add_option("--alpha-m", alphaM)->required();
  indiff->add_option("--scores", scoresPath, "Score JSON")->required();
  indiff->add_option("--xm", xm, "Market index value")->capture_default_str();
  indiff->add_option("--xg-grid", xgGrid, "LO:HI:STEP")->capture_default_str();
  indiff->callback([&] {
    action = [&] {
      out << "kappa,xg,xb\n";
      write_indifference(out, alphaM, load_scores(scoresPath), parse_list(kappaList), level, xm, parse_grid(xgGrid));
    };
  });

  std::string profileSpec, weightsSpec;
  std::size_t paths = 100000;
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "Monte Carlo versus closed-form expected utility (JSON)");
  verify->add_option("--params", paramsPath)->required();
  verify->add_option("--profile", profileSpec, "alphaM,alphaG,alphaB")->required();
  verify->add_option("--paths", paths)->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("-T,--horizon", horizon)->capture_default_str();
  verify->add_option("--weights", weightsSpec, "pi1,pi2,pi3 (default: optimal)");
  verify->callback([&] {
    action = [&] {
      const auto params = load_params(paramsPath);
      const auto a = parse_list(profileSpec);
      if (a.size() != 3) throw ValidationError("--profile needs three exponents");
      const RiskAversionProfile prof{a[0], a[1], a[2]};
      require_valid(prof);
      Weights w = optimal_weights(params, prof).weights;
      if (!weightsSpec.empty()) {
        const auto v = parse_list(weightsSpec);
        if (v.size() != 3) throw ValidationError("--weights needs three values");
        w = Weights{v[0], v[1], v[2]};
      }
      const auto rep = verify_strategy(params, prof, w, horizon, paths, seed);
      json j{{"profile", profile_json(prof)},
             {"weights", {{"pi1", w.index}, {"pi2", w.green}, {"pi3", w.brown}}},
             {"horizon", horizon},
             {"paths", rep.mc.nPaths},
             {"seed", seed},
             {"bStar", rep.bStar},
             {"closedForm", rep.closedForm},
             {"logAbsClosedForm", rep.logAbsClosedForm},
             {"mcEstimate", rep.mc.estimate},
             {"standardError", rep.mc.standardError},
             {"zScore", rep.zScore},
             {"pass", rep.pass}};
      out << j.dump(2) << '\n';
    };
  });

  int figure = 0;
  std::string figureParams;
  auto* reproduce = app.add_subcommand("reproduce", "Figure data from the bundled calibrations (CSV)");
  reproduce->add_option("--figure", figure, "Figure number 1-12")->required();
  reproduce->add_option("--params", figureParams, "Override parameter JSON for every series");
  reproduce->add_option("--out", outPath, "Write CSV to file instead of stdout");
  reproduce->callback([&] {
    action = [&] {
      const auto csvText = figure_csv(figure, figureParams);
      if (outPath.empty()) {
        out << csvText;
        return;
      }
      std::ofstream f(outPath, std::ios::binary);
      if (!f) throw IoError("cannot write '" + outPath + "'");
      f << csvText;
    };
  });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }
  if (action) action();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace esg::cli
