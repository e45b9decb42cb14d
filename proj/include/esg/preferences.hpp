#pragma once

// Multi-attribute power utility over the market, green and brown wealth
// indexes, its risk-aversion diagnostics, and the rating-driven
// parameterization of the curvature exponents.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace esg {

struct RiskAversionProfile {
  double alphaM = -1.0;
  double alphaG = -1.0;
  double alphaB = -1.0;

  /// alphaB <= alphaM <= alphaG < 0.
  bool admissible() const;
  /// All three exponents strictly negative.
  bool valid() const;

  friend bool operator==(const RiskAversionProfile&, const RiskAversionProfile&) = default;
};

/// Throws DomainError unless all exponents are strictly negative.
void require_valid(const RiskAversionProfile& profile);

struct EsgScoreTable {
  double eMarket = 0.0;
  double eGreen = 0.0;
  double eBrown = 0.0;

  /// Throws DomainError if any score is outside [1, 10].
  void validate() const;
  /// eBrown <= eMarket <= eGreen; violations are legal but make the
  /// green/brown labels meaningless.
  bool ordered() const;
};

enum class Attribute { Market, Green, Brown };

double exponent(const RiskAversionProfile& profile, Attribute a);

/// (xm^aM / aM) * (xg^aG / aG) * (xb^aB / aB).
double utility_eval(const RiskAversionProfile& profile, double xm, double xg, double xb);

/// log |u|, finite where utility_eval would overflow.
double log_abs_utility(const RiskAversionProfile& profile, double logXm, double logXg, double logXb);

/// Sign of the utility: -1 or +1.
double utility_sign(const RiskAversionProfile& profile);

struct RiskAversionReport {
  bool monotonic = false;
  // The seven sum inequalities on the exponents (each < 1, pairs < 1, triple < 1).
  bool kmInequalities = false;
  // Hessian negative semidefinite: the inequalities together with monotonicity.
  bool km = false;
  bool fr = false;
  bool s = false;
  double rraM = 0.0, rraG = 0.0, rraB = 0.0;
  double araM = 0.0, araG = 0.0, araB = 0.0;
};

/// ARA entries are evaluated at the attribute point (xm, xg, xb).
RiskAversionReport risk_aversion_report(const RiskAversionProfile& profile, double xm = 1.0,
                                        double xg = 1.0, double xb = 1.0);

/// alpha_i = alphaM * exp(kappa * (eMarket - e_i)) for i in {green, brown}.
RiskAversionProfile kappa_map(double alphaM, double kappa, const EsgScoreTable& scores);

struct Substitution {
  double mrs = 0.0;
  double prs = 0.0;
};

/// Marginal and percentage rates of substitution between attributes i and j
/// at attribute values xi, xj.
Substitution mrs_prs(const RiskAversionProfile& profile, Attribute i, Attribute j, double xi,
                     double xj);

/// Indifference curve xg^p1 * xb^p2 = C at a fixed utility level and market
/// index value xm. p1 = alphaG / alphaM and p2 = alphaB / alphaM, which for a
/// kappa-mapped profile equal exp(kappa (eMarket - e_i)).
struct IndifferenceCurve {
  double constant = 0.0;
  double p1 = 1.0;
  double p2 = 1.0;

  /// Brown index value completing the curve at green value xg.
  double brown_at(double xg) const;
};

IndifferenceCurve indifference_curve_level(const RiskAversionProfile& profile, double utilityLevel,
                                           double xm);

/// Letter grade to integer score. Default is the ten-notch ladder
/// D=1, C=2, CC=3, CCC=4, B=5, BB=6, BBB=7, A=8, AA=9, AAA=10.
using LetterMap = std::map<std::string, int>;
LetterMap default_letter_map();

struct RatingObservation {
  std::string date;
  std::string company;
  std::string rating;
  std::size_t row = 0;  // source row for error messages; 0 = use position
};

struct CompanyScores {
  std::map<std::string, double> byCompany;  // mean mapped score over time
  double market = 0.0;                      // mean over companies
};

CompanyScores esg_scores_from_ratings(const std::vector<RatingObservation>& ratings,
                                      const LetterMap& letterMap = default_letter_map());

/// Reads `date,company,rating` CSV and averages it. Unknown letters raise a
/// ParseError naming the row.
CompanyScores esg_scores_from_csv(std::istream& in, const LetterMap& letterMap = default_letter_map());

}  // namespace esg
