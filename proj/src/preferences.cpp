#include "esg/preferences.hpp"

#include <cmath>
#include <istream>

#include "esg/csv.hpp"
#include "esg/errors.hpp"

namespace esg {

bool RiskAversionProfile::admissible() const {
  return alphaB <= alphaM && alphaM <= alphaG && alphaG < 0.0;
}

bool RiskAversionProfile::valid() const { return alphaM < 0.0 && alphaG < 0.0 && alphaB < 0.0; }

void require_valid(const RiskAversionProfile& profile) {
  if (!profile.valid() || !std::isfinite(profile.alphaM) || !std::isfinite(profile.alphaG) ||
      !std::isfinite(profile.alphaB)) {
    throw DomainError("risk-aversion exponents must be finite and strictly negative");
  }
}

void EsgScoreTable::validate() const {
  for (double e : {eMarket, eGreen, eBrown}) {
    if (!(e >= 1.0 && e <= 10.0)) throw DomainError("ESG scores must lie in [1, 10]");
  }
}

bool EsgScoreTable::ordered() const { return eBrown <= eMarket && eMarket <= eGreen; }

double exponent(const RiskAversionProfile& profile, Attribute a) {
  switch (a) {
    case Attribute::Market: return profile.alphaM;
    case Attribute::Green: return profile.alphaG;
    case Attribute::Brown: return profile.alphaB;
  }
  return 0.0;
}

namespace {

void require_nonzero(const RiskAversionProfile& p) {
  if (p.alphaM == 0.0 || p.alphaG == 0.0 || p.alphaB == 0.0) {
    throw DomainError("risk-aversion exponents must be nonzero");
  }
}

}  // namespace

double utility_sign(const RiskAversionProfile& profile) {
  return profile.alphaM * profile.alphaG * profile.alphaB < 0.0 ? -1.0 : 1.0;
}

double utility_eval(const RiskAversionProfile& profile, double xm, double xg, double xb) {
  require_nonzero(profile);
  if (!(xm > 0.0) || !(xg > 0.0) || !(xb > 0.0)) throw DomainError("attributes must be positive");
  return std::pow(xm, profile.alphaM) / profile.alphaM * (std::pow(xg, profile.alphaG) / profile.alphaG) *
         (std::pow(xb, profile.alphaB) / profile.alphaB);
}

double log_abs_utility(const RiskAversionProfile& profile, double logXm, double logXg, double logXb) {
  require_nonzero(profile);
  return profile.alphaM * logXm + profile.alphaG * logXg + profile.alphaB * logXb -
         std::log(std::abs(profile.alphaM * profile.alphaG * profile.alphaB));
}

RiskAversionReport risk_aversion_report(const RiskAversionProfile& p, double xm, double xg, double xb) {
  require_nonzero(p);
  if (!(xm > 0.0) || !(xg > 0.0) || !(xb > 0.0)) throw DomainError("attributes must be positive");
  const double m = p.alphaM, g = p.alphaG, b = p.alphaB;
  RiskAversionReport rep;
  rep.monotonic = (m < 0 && g < 0 && b < 0) || (m > 0 && g > 0 && b > 0);
  rep.kmInequalities = m < 1 && g < 1 && b < 1 && m + g < 1 && m + b < 1 && g + b < 1 && m + g + b < 1;
  // With mixed signs some diagonal entry of the Hessian has the wrong sign,
  // so the sum inequalities alone do not give semidefiniteness.
  rep.km = rep.kmInequalities && rep.monotonic;
  rep.fr = m < 0 && g < 0 && b < 0;
  // Third cross partial is xm^(m-1) xg^(g-1) xb^(b-1) > 0.
  rep.s = true;
  rep.rraM = 1.0 - m;
  rep.rraG = 1.0 - g;
  rep.rraB = 1.0 - b;
  rep.araM = rep.rraM / xm;
  rep.araG = rep.rraG / xg;
  rep.araB = rep.rraB / xb;
  return rep;
}

RiskAversionProfile kappa_map(double alphaM, double kappa, const EsgScoreTable& scores) {
  if (!(alphaM < 0.0)) throw DomainError("alphaM must be negative");
  if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
  RiskAversionProfile p;
  p.alphaM = alphaM;
  p.alphaG = alphaM * std::exp(kappa * (scores.eMarket - scores.eGreen));
  p.alphaB = alphaM * std::exp(kappa * (scores.eMarket - scores.eBrown));
  return p;
}

Substitution mrs_prs(const RiskAversionProfile& profile, Attribute i, Attribute j, double xi, double xj) {
  require_nonzero(profile);
  if (i == j) throw DomainError("substitution needs two distinct attributes");
  if (!(xi > 0.0) || !(xj > 0.0)) throw DomainError("attributes must be positive");
  const double ai = exponent(profile, i);
  const double aj = exponent(profile, j);
  return Substitution{(ai * xj) / (aj * xi), aj / ai};
}

double IndifferenceCurve::brown_at(double xg) const {
  if (!(xg > 0.0)) throw DomainError("green index value must be positive");
  return std::pow(constant / std::pow(xg, p1), 1.0 / p2);
}

IndifferenceCurve indifference_curve_level(const RiskAversionProfile& profile, double utilityLevel,
                                           double xm) {
  require_nonzero(profile);
  if (!(utilityLevel < 0.0)) throw DomainError("utility level must be negative");
  if (!(xm > 0.0)) throw DomainError("market index value must be positive");
  const double product = profile.alphaM * profile.alphaG * profile.alphaB * utilityLevel;
  if (!(product > 0.0)) throw DomainError("alphaM * alphaG * alphaB * level must be positive");
  IndifferenceCurve c;
  c.p1 = profile.alphaG / profile.alphaM;
  c.p2 = profile.alphaB / profile.alphaM;
  c.constant = std::pow(product, 1.0 / profile.alphaM) / xm;
  return c;
}

LetterMap default_letter_map() {
  return {{"D", 1},  {"C", 2},   {"CC", 3}, {"CCC", 4}, {"B", 5},
          {"BB", 6}, {"BBB", 7}, {"A", 8},  {"AA", 9},  {"AAA", 10}};
}

CompanyScores esg_scores_from_ratings(const std::vector<RatingObservation>& ratings,
                                      const LetterMap& letterMap) {
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (std::size_t k = 0; k < ratings.size(); ++k) {
    const auto& obs = ratings[k];
    const std::size_t row = obs.row != 0 ? obs.row : k + 1;
    const auto it = letterMap.find(obs.rating);
    if (it == letterMap.end()) throw ParseError(row, "unknown rating '" + obs.rating + "'");
    if (obs.company.empty()) throw ParseError(row, "empty company name");
    auto& acc = sums[obs.company];
    acc.first += it->second;
    acc.second += 1;
  }
  if (sums.empty()) throw InsufficientDataError("no rating observations");
  CompanyScores out;
  double total = 0.0;
  for (const auto& [company, acc] : sums) {
    const double mean = acc.first / static_cast<double>(acc.second);
    out.byCompany.emplace(company, mean);
    total += mean;
  }
  out.market = total / static_cast<double>(out.byCompany.size());
  return out;
}

CompanyScores esg_scores_from_csv(std::istream& in, const LetterMap& letterMap) {
  const auto rows = csv::read(in, {"date", "company", "rating"});
  std::vector<RatingObservation> obs;
  obs.reserve(rows.size());
  for (const auto& row : rows) {
    if (!csv::is_iso_date(row.fields[0])) throw ParseError(row.line, "invalid date '" + row.fields[0] + "'");
    obs.push_back(RatingObservation{row.fields[0], row.fields[1], row.fields[2], row.line});
  }
  return esg_scores_from_ratings(obs, letterMap);
}

}  // namespace esg
