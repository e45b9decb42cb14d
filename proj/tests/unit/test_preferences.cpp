#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "esg/errors.hpp"
#include "esg/fixtures.hpp"
#include "esg/preferences.hpp"

#ifdef ESG_HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

using namespace esg;

namespace {

using Point = std::array<double, 3>;

double u_at(const RiskAversionProfile& p, const Point& x) { return utility_eval(p, x[0], x[1], x[2]); }

double partial(const RiskAversionProfile& p, Point x, int i) {
  const double h = 1e-6 * x[i];
  Point up = x, dn = x;
  up[i] += h;
  dn[i] -= h;
  return (u_at(p, up) - u_at(p, dn)) / (2 * h);
}

double cross_partial(const RiskAversionProfile& p, Point x, int i, int j) {
  const double hi = 1e-4 * x[i], hj = 1e-4 * x[j];
  auto at = [&](double si, double sj) {
    Point y = x;
    y[i] += si * hi;
    y[j] += sj * hj;
    return u_at(p, y);
  };
  return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hi * hj);
}

double triple_partial(const RiskAversionProfile& p, Point x) {
  const double h0 = 1e-3 * x[0], h1 = 1e-3 * x[1], h2 = 1e-3 * x[2];
  double acc = 0.0;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) acc += a * b * c * u_at(p, Point{x[0] + a * h0, x[1] + b * h1, x[2] + c * h2});
  return acc / (8 * h0 * h1 * h2);
}

}  // namespace

TEST_CASE("utility values") {
  CHECK(utility_eval({-1, -1, -1}, 1, 1, 1) == -1.0);
  CHECK(utility_eval({-2.5, -2.5, -2.5}, 1, 1, 1) == doctest::Approx(-0.064).epsilon(1e-14));
  const RiskAversionProfile p{-3, -1, -6};
  CHECK(utility_eval(p, 1.01, 1, 1) > utility_eval(p, 1, 1, 1));
  CHECK_THROWS_AS(utility_eval(p, 0, 1, 1), DomainError);
  CHECK_THROWS_AS(utility_eval({0, -1, -1}, 1, 1, 1), DomainError);
  const double lu = log_abs_utility(p, std::log(1.3), std::log(0.7), std::log(2.1));
  CHECK(std::exp(lu) == doctest::Approx(-utility_eval(p, 1.3, 0.7, 2.1)).epsilon(1e-12));
  CHECK(utility_sign(p) == -1.0);
}

TEST_CASE("admissibility") {
  CHECK(RiskAversionProfile{-2, -1, -3}.admissible());
  CHECK_FALSE(RiskAversionProfile{-2, -3, -1}.admissible());
  CHECK(RiskAversionProfile{-2, -3, -1}.valid());
  CHECK_FALSE(RiskAversionProfile{-2, 0.1, -1}.valid());
  CHECK_THROWS_AS(require_valid({-1, -1, 0.5}), DomainError);
}

TEST_CASE("risk aversion report examples") {
  const auto a = risk_aversion_report({-2.5, -2.5, -2.5});
  CHECK(a.monotonic);
  CHECK(a.km);
  CHECK(a.fr);
  CHECK(a.s);
  CHECK(a.rraM == 3.5);
  CHECK(a.rraG == 3.5);
  CHECK(a.rraB == 3.5);
  const auto b = risk_aversion_report({0.6, 0.6, 0.6});
  CHECK(b.monotonic);
  CHECK_FALSE(b.fr);
  CHECK_FALSE(b.km);
  CHECK_FALSE(risk_aversion_report({-1, 1, -1}).monotonic);
  const auto c = risk_aversion_report({-1, 0.4, 0.4});
  CHECK(c.kmInequalities);
  CHECK_FALSE(c.km);
}

TEST_CASE("ARA falls with the attribute value for negative exponents") {
  const RiskAversionProfile p{-2, -1, -4};
  const auto lo = risk_aversion_report(p, 1, 1, 1);
  const auto hi = risk_aversion_report(p, 2, 3, 4);
  CHECK(hi.araM < lo.araM);
  CHECK(hi.araG < lo.araG);
  CHECK(hi.araB < lo.araB);
  CHECK(hi.araG == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("first partials are positive for admissible profiles") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha(-6.0, -0.05), x(0.3, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 3> a{alpha(rng), alpha(rng), alpha(rng)};
    std::sort(a.begin(), a.end());
    const RiskAversionProfile p{a[1], a[2], a[0]};
    REQUIRE(p.admissible());
    const Point pt{x(rng), x(rng), x(rng)};
    const double u = u_at(p, pt);
    const double exps[3] = {p.alphaM, p.alphaG, p.alphaB};
    for (int i = 0; i < 3; ++i) {
      const double fd = partial(p, pt, i);
      const double exact = u * exps[i] / pt[i];
      CHECK(fd > 0.0);
      CHECK(std::abs(fd / exact - 1.0) < 1e-4);
    }
  }
}

TEST_CASE("FR, monotonic and S verdicts agree with finite-difference signs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> alpha(-3.0, 0.9), x(0.5, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    RiskAversionProfile p{alpha(rng), alpha(rng), alpha(rng)};
    if (std::abs(p.alphaM) < 0.05 || std::abs(p.alphaG) < 0.05 || std::abs(p.alphaB) < 0.05) continue;
    const Point pt{x(rng), x(rng), x(rng)};
    const auto rep = risk_aversion_report(p, pt[0], pt[1], pt[2]);
    bool allPositive = true;
    for (int i = 0; i < 3; ++i) allPositive = allPositive && partial(p, pt, i) > 0.0;
    CHECK(rep.monotonic == allPositive);
    bool crossNonPositive = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) crossNonPositive = crossNonPositive && cross_partial(p, pt, i, j) <= 0.0;
    CHECK(rep.fr == crossNonPositive);
    CHECK(rep.s == (triple_partial(p, pt) > 0.0));
  }
}

#ifdef ESG_HAVE_EIGEN
TEST_CASE("KM verdict matches Hessian eigenvalues") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> alpha(-3.0, 0.95), x(0.5, 2.0);
  int checked = 0, kmTrue = 0;
  while (checked < 100) {
    RiskAversionProfile p{alpha(rng), alpha(rng), alpha(rng)};
    if (std::abs(p.alphaM) < 0.05 || std::abs(p.alphaG) < 0.05 || std::abs(p.alphaB) < 0.05) continue;
    const Point pt{x(rng), x(rng), x(rng)};
    Eigen::Matrix3d h;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) h(i, j) = cross_partial(p, pt, i, j);
    for (int i = 0; i < 3; ++i) {
      Point up = pt, dn = pt;
      const double step = 1e-4 * pt[i];
      up[i] += step;
      dn[i] -= step;
      h(i, i) = (u_at(p, up) - 2 * u_at(p, pt) + u_at(p, dn)) / (step * step);
    }
    const double scale = h.cwiseAbs().maxCoeff();
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(0.5 * (h + h.transpose())).eigenvalues();
    // skip near-singular cases where finite-difference noise decides the sign
    if (std::abs(ev.maxCoeff()) < 1e-5 * scale) continue;
    const bool nsd = ev.maxCoeff() <= 1e-10 * scale;
    const auto rep = risk_aversion_report(p, pt[0], pt[1], pt[2]);
    CHECK(rep.km == nsd);
    kmTrue += rep.km ? 1 : 0;
    ++checked;
  }
  CHECK(kmTrue > 10);
  CHECK(kmTrue < 90);
}
#endif

TEST_CASE("kappa mapping") {
  const auto scores = fixtures::idt_wmt_scores();
  CHECK(kappa_map(-3, 0, scores) == RiskAversionProfile{-3, -3, -3});
  const auto p = kappa_map(-3, 1, scores);
  CHECK(p.alphaG == doctest::Approx(-0.36735).epsilon(1e-4));
  CHECK(p.alphaB == doctest::Approx(-3.0 * std::exp(3.9)).epsilon(1e-14));
  CHECK(p.alphaB == doctest::Approx(-148.25).epsilon(1e-3));
  CHECK(p.admissible());
  CHECK(kappa_map(-3, 40, scores).alphaG > -1e-30);
  CHECK_THROWS_AS(kappa_map(0, 1, scores), DomainError);
  CHECK_THROWS_AS(kappa_map(-1, -0.1, scores), DomainError);
}

TEST_CASE("substitution rates") {
  const auto scores = fixtures::idt_wmt_scores();
  const auto s = mrs_prs({-2, -2, -2}, Attribute::Market, Attribute::Green, 1.5, 1.5);
  CHECK(s.mrs == 1.0);
  CHECK(s.prs == 1.0);
  CHECK(mrs_prs(kappa_map(-3, 0, scores), Attribute::Green, Attribute::Brown, 1, 2).prs == 1.0);
  const auto p = kappa_map(-3, 1, scores);
  const double prsMb = mrs_prs(p, Attribute::Market, Attribute::Brown, 1, 1).prs;
  const double prsMg = mrs_prs(p, Attribute::Market, Attribute::Green, 1, 1).prs;
  CHECK(prsMb == doctest::Approx(std::exp(3.9)).epsilon(1e-12));
  CHECK(prsMb == doctest::Approx(49.40).epsilon(1e-3));
  CHECK(prsMg == doctest::Approx(0.1225).epsilon(1e-3));
  CHECK_THROWS_AS(mrs_prs(p, Attribute::Green, Attribute::Green, 1, 1), DomainError);
}

TEST_CASE("brown-green PRS under kappa mapping") {
  const auto scores = fixtures::idt_wmt_scores();
  double previous = INFINITY;
  for (double k = 0.0; k <= 2.0; k += 0.25) {
    const double prs = mrs_prs(kappa_map(-3, k, scores), Attribute::Brown, Attribute::Green, 1, 1).prs;
    CHECK(prs == doctest::Approx(std::exp(k * (scores.eBrown - scores.eGreen))).epsilon(1e-12));
    CHECK(prs <= previous);
    previous = prs;
  }
}

TEST_CASE("indifference curves") {
  const auto scores = fixtures::idt_wmt_scores();
  const double level = utility_eval({-3, -3, -3}, 1, 1, 1);
  const auto flat = indifference_curve_level(kappa_map(-3, 0, scores), level, 1.0);
  CHECK(flat.p1 == 1.0);
  CHECK(flat.p2 == 1.0);
  for (double k : {0.0, 0.1, 0.3, 1.0}) {
    const auto prof = kappa_map(-3, k, scores);
    const auto curve = indifference_curve_level(prof, level, 1.3);
    for (double xg : {0.5, 0.9, 1.7}) {
      const double xb = curve.brown_at(xg);
      CHECK(std::abs(utility_eval(prof, 1.3, xg, xb) / level - 1.0) < 1e-10);
    }
  }
  // slope through (1, 1): dxb/dxg = -p1/p2, shrinking in magnitude as kappa grows
  double previous = INFINITY;
  for (double k : {0.0, 0.1, 0.2, 0.3}) {
    const auto prof = kappa_map(-3, k, scores);
    const double lvl = utility_eval(prof, 1, 1, 1);
    const auto curve = indifference_curve_level(prof, lvl, 1.0);
    const double h = 1e-6;
    const double slope = (curve.brown_at(1 + h) - curve.brown_at(1 - h)) / (2 * h);
    CHECK(std::abs(slope) < previous);
    previous = std::abs(slope);
  }
  CHECK_THROWS_AS(indifference_curve_level({-3, -3, -3}, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(indifference_curve_level({-3, -3, 3}, -0.5, 1.0), DomainError);
}

TEST_CASE("score table validation") {
  CHECK_NOTHROW(fixtures::idt_wmt_scores().validate());
  CHECK(fixtures::idt_wmt_scores().ordered());
  CHECK_THROWS_AS((EsgScoreTable{0.5, 9, 3}).validate(), DomainError);
  CHECK_FALSE((EsgScoreTable{7, 3, 9}).ordered());
}

TEST_CASE("scores from rating histories") {
  CHECK(esg_scores_from_ratings({{"2020-01-01", "A Co", "AAA", 0}, {"2020-02-01", "A Co", "AAA", 0}})
            .byCompany.at("A Co") == 10.0);
  const auto two = esg_scores_from_ratings({{"2020-01-01", "B", "AA", 0}, {"2020-02-01", "B", "AAA", 0}});
  CHECK(two.byCompany.at("B") == 9.5);
  const auto mixed = esg_scores_from_ratings({{"2020-01-01", "B", "AA", 0}, {"2020-01-01", "C", "D", 0}});
  CHECK(mixed.market == 5.0);
  try {
    esg_scores_from_ratings({{"2020-01-01", "B", "AA", 0}, {"2020-01-01", "B", "ZZ", 0}});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.row() == 2);
  }
  LetterMap custom{{"good", 10}, {"bad", 1}};
  CHECK(esg_scores_from_ratings({{"2020-01-01", "X", "good", 0}}, custom).byCompany.at("X") == 10.0);
}

TEST_CASE("rating file for a top green company") {
  std::ifstream in(ESG_FIXTURES "/ratings_top_green.csv");
  REQUIRE(in);
  const auto scores = esg_scores_from_csv(in);
  CHECK(scores.byCompany.at("Top Green Co") == doctest::Approx(620.0 / 66.0).epsilon(1e-14));
  CHECK(scores.byCompany.at("Top Green Co") == doctest::Approx(9.3939).epsilon(1e-5));
}

TEST_CASE("rating CSV errors name the row") {
  std::istringstream bad("date,company,rating\n2020-01-01,A,AA\n2020-02-01,A,QQ\n");
  try {
    esg_scores_from_csv(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
  }
  std::istringstream date("date,company,rating\n01/02/2020,A,AA\n");
  CHECK_THROWS_AS(esg_scores_from_csv(date), ParseError);
  std::istringstream header("day,company,rating\n2020-01-01,A,AA\n");
  CHECK_THROWS_AS(esg_scores_from_csv(header), ParseError);
}
