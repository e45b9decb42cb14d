#include "esg/params_io.hpp"

#include <fstream>

#include "esg/errors.hpp"

namespace esg {

using nlohmann::json;

namespace {

double field(const json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(1, std::string("missing field '") + name + "'");
  const auto& v = j.at(name);
  if (!v.is_number()) throw ParseError(1, std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(1, "invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace

void to_json(json& j, const ModelParams& p) {
  j = json{{"r", p.r},           {"lambda1", p.lambda1}, {"lambdaG", p.lambdaG}, {"lambdaB", p.lambdaB},
           {"sigma1", p.sigma1}, {"sigma2", p.sigma2},   {"sigma3", p.sigma3},   {"rho12", p.rho12},
           {"rho13", p.rho13},   {"thetaM", p.thetaM},   {"thetaG", p.thetaG},   {"thetaB", p.thetaB}};
}

void from_json(const json& j, ModelParams& p) {
  if (!j.is_object()) throw ParseError(1, "parameter file must hold a JSON object");
  p.r = field(j, "r");
  p.lambda1 = field(j, "lambda1");
  p.lambdaG = field(j, "lambdaG");
  p.lambdaB = field(j, "lambdaB");
  p.sigma1 = field(j, "sigma1");
  p.sigma2 = field(j, "sigma2");
  p.sigma3 = field(j, "sigma3");
  p.rho12 = field(j, "rho12");
  p.rho13 = field(j, "rho13");
  // The cash split is optional and defaults to all-market.
  p.thetaM = j.contains("thetaM") ? field(j, "thetaM") : 1.0;
  p.thetaG = j.contains("thetaG") ? field(j, "thetaG") : 0.0;
  p.thetaB = j.contains("thetaB") ? field(j, "thetaB") : 0.0;
}

void to_json(json& j, const EsgScoreTable& s) {
  j = json{{"eMarket", s.eMarket}, {"eGreen", s.eGreen}, {"eBrown", s.eBrown}};
}

void from_json(const json& j, EsgScoreTable& s) {
  if (!j.is_object()) throw ParseError(1, "score file must hold a JSON object");
  s.eMarket = field(j, "eMarket");
  s.eGreen = field(j, "eGreen");
  s.eBrown = field(j, "eBrown");
}

json estimated_to_json(const EstimatedParams& e) {
  json j = e.params;
  const auto& m = e.moments;
  j["estimation"] = json{
      {"sampleSize", m.sampleSize},
      {"standardErrors",
       {{"sigma1", m.seSigma1}, {"sigma2", m.seSigma2}, {"sigma3", m.seSigma3}, {"rho12", m.seRho12}, {"rho13", m.seRho13}}},
      {"rho23", m.rho23},
      {"greenBrownCorrelationGap", e.greenBrownCorrelationGap}};
  return j;
}

ModelParams load_params(const std::string& path) {
  ModelParams p = read_json(path).get<ModelParams>();
  p.validate();
  return p;
}

EsgScoreTable load_scores(const std::string& path) {
  EsgScoreTable s = read_json(path).get<EsgScoreTable>();
  s.validate();
  return s;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace esg
