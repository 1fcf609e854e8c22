#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lsqprice/error.hpp"
#include "lsqprice/pricer.hpp"

using namespace lsqprice;

namespace {

const OutcomeSpace kCoin = OutcomeSpace::fair_coin();
const Rate kRate = Rate::continuous(0.05);

// Independent oracle values (scipy brentq on the two coupled equations).
constexpr double kGameAPrice = 7.223641028417383;
constexpr double kGameAProportion = 0.27363787124923145;
constexpr double k164Price = 8.149094018944922;
constexpr double k164Proportion = 0.463042265911671;
constexpr double k128Price = 9.320106873392177;
constexpr double k119Price = 9.464613271843707;
constexpr double kStPetersburgPrice = 4.815577514683759;
constexpr double kStPetersburgProportion = 0.2044448923451212;
constexpr double kXPrice = 20.672118574167413;
constexpr double kYPrice = 20.672100118284604;

}  // namespace

TEST(Kappa, MatchesClosedForm) {
  EXPECT_NEAR(KappaContext(kRate).kappa(), 0.3457578, 1e-7);
  const double g = 1.02;
  EXPECT_DOUBLE_EQ(KappaContext(Rate::simple(0.02)).kappa(), (1 - std::sqrt(1 - 1 / (g * g))) / 2);
}

TEST(ExpectedLogGrowth, Examples) {
  EXPECT_EQ(expected_log_growth(Game({19, 1}), kCoin, 7.0, 0.0), 0.0);
  EXPECT_NEAR(expected_log_growth(Game({4, 4}), kCoin, 4.0, 0.7), 0.0, 1e-16);
  EXPECT_NEAR(expected_log_growth(Game({19, 1}), kCoin, 7.2246, 0.2736), 0.04996367987949957, 1e-14);
}

TEST(ExpectedLogGrowth, OutsideLogDomainThrows) {
  // a_min t / u - t + 1 <= 0 once t >= u / (u - a_min) = 10/9.
  EXPECT_THROW(expected_log_growth(Game({19, 1}), kCoin, 10.0, 1.2), InvariantError);
  EXPECT_EQ(log_domain_limit(Game({19, 12}), 10.0), INFINITY);
  EXPECT_NEAR(log_domain_limit(Game({19, 1}), 10.0), 10.0 / 9.0, 1e-15);
}

TEST(OptimalProportion, Examples) {
  EXPECT_EQ(optimal_proportion(Game({10, 10}), kCoin, 9.512).proportion, 1.0);
  EXPECT_NEAR(optimal_proportion(Game({19, 1}), kCoin, 7.224).proportion, 0.274, 5e-4);
  const ProportionResult at_mean = optimal_proportion(Game({19, 1}), kCoin, 10.0);
  EXPECT_EQ(at_mean.proportion, 0.0);
  EXPECT_EQ(at_mean.log_growth, 0.0);
  EXPECT_EQ(optimal_proportion(Game({19, 1}), kCoin, 12.0).proportion, 0.0);
}

TEST(OptimalProportion, MatchesGoldenSectionOracle) {
  // Brute-force maximization of the concave log growth.
  const Game a({19, 1});
  const double u = 7.5;
  double lo = 0.0;
  double hi = 1.0;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  while (hi - lo > 1e-12) {
    const double m1 = hi - phi * (hi - lo);
    const double m2 = lo + phi * (hi - lo);
    if (expected_log_growth(a, kCoin, u, m1) < expected_log_growth(a, kCoin, u, m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  EXPECT_NEAR(optimal_proportion(a, kCoin, u).proportion, 0.5 * (lo + hi), 1e-7);
}

TEST(PriceTwoOutcomeFair, ReferenceGames) {
  const PriceResult a = price_two_outcome_fair(19, 1, kRate);
  EXPECT_NEAR(a.price, kGameAPrice, 1e-10);
  EXPECT_NEAR(a.proportion, kGameAProportion, 1e-10);
  EXPECT_EQ(a.regime, Regime::interior);
  EXPECT_NEAR(a.price, 7.224, 5e-4);

  const PriceResult b = price_two_outcome_fair(10, 10, kRate);
  EXPECT_NEAR(b.price, 10 / std::exp(0.05), 1e-12);
  EXPECT_EQ(b.proportion, 1.0);
  EXPECT_EQ(b.regime, Regime::full_investment);

  EXPECT_NEAR(price_two_outcome_fair(50, 1, Rate::simple(0.02)).price, kXPrice, 1e-10);
  EXPECT_NEAR(price_two_outcome_fair(30.6191, 14, Rate::simple(0.02)).price, kYPrice, 1e-10);
  const PriceResult ex12 = price_two_outcome_fair(16, 4, kRate);
  EXPECT_NEAR(ex12.price, k164Price, 1e-10);
  EXPECT_NEAR(ex12.proportion, k164Proportion, 1e-9);
}

TEST(PriceTwoOutcomeFair, FullRegimeGames) {
  EXPECT_NEAR(price_two_outcome_fair(12, 8, kRate).price, k128Price, 1e-10);
  EXPECT_NEAR(price_two_outcome_fair(11, 9, kRate).price, k119Price, 1e-10);
  EXPECT_EQ(price_two_outcome_fair(12, 8, kRate).regime, Regime::full_investment);
}

TEST(PriceTwoOutcomeFair, RequiresPositivePayoffs) {
  EXPECT_THROW(price_two_outcome_fair(10, 0, kRate), InvariantError);
}

TEST(PriceGeneral, AgreesWithClosedFormOnReferenceGames) {
  for (const auto& [a, b] : {std::pair{19.0, 1.0}, std::pair{16.0, 4.0}}) {
    const double closed = price_two_outcome_fair(a, b, kRate).price;
    EXPECT_NEAR(price_general(Game({a, b}), kCoin, kRate).price, closed, 1e-9 * closed);
  }
}

TEST(PriceGeneral, FourOutcomeFunds) {
  const OutcomeSpace four = OutcomeSpace::uniform(4);
  const Rate simple = Rate::simple(0.02);
  EXPECT_NEAR(price_general(Game({36.3016, 24.5552, 21.9348, 10.1884}), four, simple).price, 21.3995, 1e-3);
  EXPECT_NEAR(price_general(Game({37.4295, 26.6504, 20.2109, 9.4318}), four, simple).price, 21.4134, 1e-3);
}

TEST(PriceGeneral, ZeroPayoffAndManyOutcomes) {
  const PriceResult z = price_general(Game({10, 0}), kCoin, kRate);
  EXPECT_NEAR(z.price, 3.457578349120769, 1e-10);
  EXPECT_NEAR(z.proportion, 0.23575699231674344, 1e-9);
  EXPECT_EQ(z.regime, Regime::interior);

  const PriceResult m3 = price_general(Game({2, 5, 12}), OutcomeSpace({0.3, 0.3, 0.4}), kRate);
  EXPECT_NEAR(m3.price, 5.583927696134905, 1e-10);
  EXPECT_NEAR(m3.proportion, 0.44851894620071703, 1e-9);

  const PriceResult s3 = price_general(Game({30, 0, 5}), OutcomeSpace::uniform(3), Rate::simple(0.03));
  EXPECT_NEAR(s3.price, 8.674868852613697, 1e-10);
  EXPECT_NEAR(s3.proportion, 0.18568867830254834, 1e-9);
}

TEST(PriceGeneral, HeavyZeroOutcomeGivesTinyPrice) {
  // mpmath oracle: two-outcome closed form for t, root of the growth in log u.
  const PriceResult r = price_general(Game({0, 5}), OutcomeSpace({0.998, 0.002}), Rate::continuous(0.15));
  EXPECT_NEAR(r.price, 9.8640203521127691e-36, 1e-9 * 9.8640203521127691e-36);
  EXPECT_NEAR(r.proportion, 0.002, 1e-9);
  EXPECT_NEAR(r.achieved_growth, std::exp(0.15), 1e-12);
}

TEST(PriceGeneral, ConstantGameIsDiscountedPayoff) {
  const PriceResult c = price_general(Game({4, 4, 4}), OutcomeSpace({0.2, 0.3, 0.5}), kRate);
  EXPECT_NEAR(c.price, 4 / std::exp(0.05), 1e-14);
  EXPECT_EQ(c.proportion, 1.0);
  EXPECT_EQ(c.regime, Regime::full_investment);
}

TEST(PriceDispatch, UsesClosedFormOnFairCoin) {
  EXPECT_EQ(price(Game({19, 1}), kCoin, kRate).price, price_two_outcome_fair(19, 1, kRate).price);
  EXPECT_NEAR(price(Game({19, 1}), OutcomeSpace({0.5, 0.5}), kRate).price, kGameAPrice, 1e-10);
  EXPECT_NEAR(price(Game({10, 0}), kCoin, kRate).price, 3.457578349120769, 1e-10);
}

TEST(Series, StPetersburg) {
  const PriceResult p = price_series(SeriesGame::st_petersburg(), kRate);
  EXPECT_NEAR(p.price, kStPetersburgPrice, 1e-9);
  EXPECT_NEAR(p.proportion, kStPetersburgProportion, 1e-8);
  EXPECT_NEAR(p.price, 4.816, 1e-3);
}

TEST(Series, GeometricMeanIsFour) {
  const SeriesTruncation cut = truncate_series(SeriesGame::st_petersburg());
  EXPECT_NEAR(geometric_mean(cut.game, cut.space), 4.0, 1e-10);
  EXPECT_LE(cut.error_bound, 1e-12);
  EXPECT_LT(cut.terms, 60u);
}

TEST(Series, ConstantSeries) {
  const PriceResult p = price_series(SeriesGame::constant(3.0), kRate);
  EXPECT_NEAR(p.price, 3.0 / std::exp(0.05), 1e-14);
  EXPECT_EQ(p.proportion, 1.0);
}

TEST(Series, TermCapThrows) {
  // Tail decays too slowly for 60 terms at the requested tolerance.
  const SeriesGame slow(
      [](std::size_t j) -> std::optional<SeriesTerm> {
        return SeriesTerm{static_cast<double>(j), std::pow(2.0, -static_cast<double>(j) / 8.0) * (1 - std::pow(2.0, -1.0 / 8.0)) / std::pow(2.0, -1.0 / 8.0)};
      },
      1.0, 100.0);
  EXPECT_THROW(truncate_series(slow), InvariantError);
}

TEST(Series, UnderstatedMomentBoundThrows) {
  const SeriesGame liar(
      [](std::size_t j) -> std::optional<SeriesTerm> {
        return SeriesTerm{std::pow(2.0, static_cast<double>(j)), std::pow(2.0, -static_cast<double>(j))};
      },
      0.5, 1.0);
  EXPECT_THROW(truncate_series(liar), InvariantError);
}

// Properties over random games.

namespace {

struct RandomGame {
  OutcomeSpace space;
  Game game;
  Rate rate;
};

RandomGame draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> payoff(0.5, 50.0);
  std::uniform_real_distribution<double> r(0.005, 0.2);
  std::exponential_distribution<double> e(1.0);
  const std::size_t m = 2 + rng() % 4;
  std::vector<double> p(m);
  double total = 0.0;
  for (double& v : p) total += (v = e(rng) + 1e-3);
  for (double& v : p) v /= total;
  std::vector<double> a(m);
  for (double& v : a) v = payoff(rng);
  if (rng() % 4 == 0) a[rng() % m] = 0.0;
  const Rate rate = rng() % 2 ? Rate::continuous(r(rng)) : Rate::simple(r(rng));
  return {OutcomeSpace(p), Game(a), rate};
}

}  // namespace

TEST(PricerProperties, Homogeneity) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> scale(1e-3, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const RandomGame g = draw(rng);
    const double k = scale(rng);
    const PriceResult base = price(g.game, g.space, g.rate);
    const PriceResult scaled = price(g.game.scaled(k), g.space, g.rate);
    EXPECT_NEAR(scaled.price, k * base.price, 1e-9 * k * base.price);
    EXPECT_NEAR(scaled.proportion, base.proportion, 1e-9);
  }
}

TEST(PricerProperties, BoundsAndFullRegime) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const RandomGame g = draw(rng);
    const double growth = g.rate.growth_factor();
    const PriceResult p = price(g.game, g.space, g.rate);
    EXPECT_GT(p.price, 0.0);
    EXPECT_LE(p.price, expectation(g.game, g.space) / growth * (1 + 1e-12));
    if (p.regime == Regime::full_investment) {
      EXPECT_NEAR(p.price, geometric_mean(g.game, g.space) / growth, 1e-12 * p.price);
      EXPECT_EQ(p.proportion, 1.0);
    }
  }
}

TEST(PricerProperties, FirstOrderConditionAndAchievedGrowth) {
  std::mt19937_64 rng(23);
  int interior = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const RandomGame g = draw(rng);
    const PriceResult p = price(g.game, g.space, g.rate);
    EXPECT_NEAR(p.achieved_growth, g.rate.growth_factor(), 1e-9 * g.rate.growth_factor());
    if (p.regime != Regime::interior) continue;
    ++interior;
    EXPECT_LT(std::abs(growth_derivative(g.game, g.space, p.price, p.proportion)), 1e-8);
  }
  EXPECT_GT(interior, 50);
}

TEST(PricerProperties, ClosedFormMatchesNumericOnRandomCoins) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> payoff(0.1, 100.0);
  std::uniform_real_distribution<double> r(0.005, 0.2);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = payoff(rng);
    const double b = payoff(rng);
    const Rate rate = Rate::continuous(r(rng));
    const PriceResult closed = price_two_outcome_fair(a, b, rate);
    const PriceResult numeric = price_general(Game({a, b}), kCoin, rate);
    EXPECT_NEAR(numeric.price, closed.price, 1e-8 * closed.price);
    EXPECT_NEAR(numeric.proportion, closed.proportion, 1e-8);
  }
}

TEST(PricerProperties, RegimeBoundaryContinuity) {
  // Walk (a, b) = (10 + s, 10 - s) across the boundary E / sqrt(ab) = g and
  // compare the interior closed form with gm/g at the crossing.
  const double g = kRate.growth_factor();
  const double s_star = 10.0 * std::sqrt(1.0 - 1.0 / (g * g));
  const double kappa = KappaContext(kRate).kappa();
  const double a = 10 + s_star;
  const double b = 10 - s_star;
  const double interior = kappa * a + (1 - kappa) * b;
  const double full = std::sqrt(a * b) / g;
  EXPECT_NEAR(interior, full, 1e-9 * full);
  for (double eps : {-1e-6, 1e-6}) {
    const PriceResult p = price_two_outcome_fair(10 + s_star + eps, 10 - s_star - eps, kRate);
    EXPECT_NEAR(p.price, full, 1e-5);
  }
}

TEST(PricerProperties, ConcaveInMix) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> payoff(0.5, 50.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Game a({payoff(rng), payoff(rng)});
    const Game b({payoff(rng), payoff(rng)});
    const double p = unit(rng);
    const double q = unit(rng);
    const double alpha = unit(rng);
    auto u = [&](double w) {
      return price(Game({w * a[0] + (1 - w) * b[0], w * a[1] + (1 - w) * b[1]}), kCoin, kRate).price;
    };
    const double mid = alpha * p + (1 - alpha) * q;
    EXPECT_GE(u(mid), alpha * u(p) + (1 - alpha) * u(q) - 1e-9);
  }
}
