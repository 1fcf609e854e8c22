#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lsqprice/error.hpp"
#include "lsqprice/lsq.hpp"
#include "min_norm.hpp"

using namespace lsqprice;

namespace {

const OutcomeSpace kCoin = OutcomeSpace::fair_coin();
const Rate kRate = Rate::continuous(0.05);
const double kCeiling = 10.0 / std::exp(0.05);

ConeBasis coin(double a, double b, double c, double d) { return ConeBasis(kCoin, {Game({a, b}), Game({c, d})}); }

ConeBasis constant_mix_basis() { return coin(19, 1, 4, 16); }
ConeBasis linear_basis() { return coin(19, 1, 16, 4); }
ConeBasis concave_basis() { return coin(12, 8, 11, 9); }
ConeBasis three_outcome_basis() {
  return ConeBasis(OutcomeSpace({0.3, 0.3, 0.4}), {Game({2, 5, 12}), Game({6, 3, 1}), Game({1, 4, 9})});
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(PriceLines, ClampsAndRejects) {
  const AdjustedPriceLine line(7.0, 9.0);
  EXPECT_EQ(line.adjusted(0.5), 8.0);
  EXPECT_FALSE(line.degenerate());
  EXPECT_TRUE(AdjustedPriceLine(9.0, 9.0).degenerate());
  EXPECT_NO_THROW(AdjustedPriceLine(9.0 * (1 + 1e-14), 9.0));
  EXPECT_THROW(AdjustedPriceLine(9.5, 9.0), InvariantError);
}

TEST(ReduceToBasis, TwoGameCone) {
  const std::vector<Game> games{Game({19, 1}), Game({4, 16})};
  const BasisReduction r = reduce_to_basis(games);
  ASSERT_EQ(r.basis.size(), 2u);
  EXPECT_EQ(r.basis[0], games[0]);
  EXPECT_EQ(r.basis[1], games[1]);
  EXPECT_NEAR(r.coords[0][0], 1.0, 1e-14);
  EXPECT_NEAR(r.coords[0][1], 0.0, 1e-14);
  EXPECT_NEAR(r.coords[1][1], 1.0, 1e-14);
}

TEST(ReduceToBasis, EqualRatiosGiveSingleton) {
  const std::vector<Game> games{Game({2, 2}), Game({5, 5})};
  const BasisReduction r = reduce_to_basis(games);
  ASSERT_EQ(r.basis.size(), 1u);
  EXPECT_EQ(r.basis[0], Game({2, 2}));
  EXPECT_NEAR(r.coords[0][0], 1.0, 1e-14);
  EXPECT_NEAR(r.coords[1][0], 2.5, 1e-14);
}

TEST(ReduceToBasis, PicksExtremeRatios) {
  // Ratios 19, 4 and 13/7: the cone is spanned by (19,1) and (13,7), and
  // (16,4) = 0.5 (19,1) + 0.5 (13,7).
  const std::vector<Game> games{Game({19, 1}), Game({16, 4}), Game({13, 7})};
  const BasisReduction r = reduce_to_basis(games);
  ASSERT_EQ(r.basis.size(), 2u);
  EXPECT_EQ(r.basis_indices, (std::vector<std::size_t>{0, 2}));
  EXPECT_NEAR(r.coords[1][0], 0.5, 1e-12);
  EXPECT_NEAR(r.coords[1][1], 0.5, 1e-12);
}

TEST(ReduceToBasis, ShortSaleIsOutsideCone) {
  // (13,7) = -(19,1) + 2 (16,4) needs a negative coefficient.
  const std::vector<Game> generators{Game({19, 1}), Game({16, 4})};
  EXPECT_FALSE(cone_coordinates(generators, Game({13, 7})).has_value());
  const auto inside = cone_coordinates(generators, Game({35, 5}));
  ASSERT_TRUE(inside.has_value());
  EXPECT_NEAR((*inside)[0], 1.0, 1e-12);
  EXPECT_NEAR((*inside)[1], 1.0, 1e-12);
}

TEST(ReduceToBasis, RejectsZeroPayoffs) {
  const std::vector<Game> games{Game({1, 0}), Game({0, 1})};
  EXPECT_THROW(reduce_to_basis(games), BasisError);
}

TEST(LsRatio, Examples) {
  const ConeBasis single(kCoin, {Game({19, 1})});
  EXPECT_NEAR(ls_ratio(single, kRate, std::vector<double>{0.0}, Mix({1.0})), 1.0, 1e-15);

  const ConeBasis ex11 = constant_mix_basis();
  EXPECT_NEAR(ls_ratio(ex11, kRate, std::vector<double>{0.0, 0.0}, Mix({0.4, 0.6})), 1.2228308070515224, 1e-9);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double p = unit(rng);
    EXPECT_LE(ls_ratio(concave_basis(), kRate, std::vector<double>{1.0, 1.0}, Mix({p, 1 - p})), 1.0 + 1e-12);
  }
}

TEST(BigL, Examples) {
  const ConeBasis single(kCoin, {Game({19, 1})});
  const RatioMax s = big_L(single, kRate, std::vector<double>{0.5});
  const double u = price_two_outcome_fair(19, 1, kRate).price;
  EXPECT_NEAR(s.value, u / (u + 0.5 * (kCeiling - u)), 1e-14);

  EXPECT_NEAR(big_L(linear_basis(), kRate, std::vector<double>{0.0, 0.0}).value, 1.0, 1e-9);

  const RatioMax ex11 = big_L(constant_mix_basis(), kRate, std::vector<double>{1.0, 1.0});
  EXPECT_NEAR(ex11.value, 1.0, 1e-9);
  EXPECT_NEAR(ex11.argmax[0], 0.4, 1e-3);
}

TEST(LeastSquares, ConstantMixExample) {
  const LsSolution s = least_squares_prices(constant_mix_basis(), kRate);
  EXPECT_NEAR(s.prices[0], kCeiling, 1e-10);
  EXPECT_NEAR(s.prices[1], kCeiling, 1e-10);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.x[1], 1.0, 1e-12);
  EXPECT_NEAR(s.certificate[0], 0.4, 1e-3);
}

TEST(LeastSquares, LinearExample) {
  const LsSolution s = least_squares_prices(linear_basis(), kRate);
  EXPECT_NEAR(s.prices[0], 7.223641028417383, 1e-10);
  EXPECT_NEAR(s.prices[1], 8.149094018944922, 1e-10);
  EXPECT_NEAR(s.x[0], 0.0, 1e-6);
  EXPECT_NEAR(s.x[1], 0.0, 1e-6);
}

TEST(LeastSquares, ConcaveExample) {
  // Oracle: projection onto the single deepest cut, maximized with scipy and
  // checked feasible on a 2e4-point grid of mixes.
  const LsSolution s = least_squares_prices(concave_basis(), kRate);
  EXPECT_NEAR(s.x[0], 0.13146595912436113, 1e-7);
  EXPECT_NEAR(s.x[1], 0.08221642235139837, 1e-7);
  EXPECT_NEAR(s.prices[0], 9.345372970533129, 1e-7);
  EXPECT_NEAR(s.prices[1], 9.468533430871437, 1e-7);
  EXPECT_NEAR(s.certificate[0], 0.284032628977311, 1e-4);
  EXPECT_LE(s.max_violation, 1e-9);
}

TEST(LeastSquares, Singleton) {
  const ConeBasis single(kCoin, {Game({19, 1})});
  const LsSolution s = least_squares_prices(single, kRate);
  EXPECT_EQ(s.x[0], 0.0);
  EXPECT_NEAR(s.prices[0], 7.223641028417383, 1e-10);
}

TEST(LeastSquares, CutCapRaisesSolverError) {
  LsOptions options;
  options.use_shortcuts = false;
  options.max_cuts = 1;
  EXPECT_THROW(least_squares_prices(three_outcome_basis(), kRate, options), SolverError);
}

TEST(CheckConstantMix, Examples) {
  const auto ex11 = check_constant_mix(constant_mix_basis());
  ASSERT_TRUE(ex11.has_value());
  EXPECT_NEAR(ex11->mix[0], 0.4, 1e-12);
  EXPECT_EQ(ex11->support, (std::vector<std::size_t>{0, 1}));

  EXPECT_FALSE(check_constant_mix(linear_basis()).has_value());

  const auto single = check_constant_mix(ConeBasis(kCoin, {Game({10, 10})}));
  ASSERT_TRUE(single.has_value());
  EXPECT_EQ(single->mix[0], 1.0);
}

TEST(CheckLinearPricing, Examples) {
  EXPECT_TRUE(check_linear_pricing(linear_basis(), kRate));
  EXPECT_FALSE(check_linear_pricing(concave_basis(), kRate));
  EXPECT_TRUE(check_linear_pricing(ConeBasis(kCoin, {Game({19, 1})}), kRate));
}

TEST(PriceInCone, Examples) {
  const LsSolution ex11 = least_squares_prices(constant_mix_basis(), kRate);
  EXPECT_EQ(price_in_cone(ex11, std::vector<double>{1.0, 0.0}), ex11.prices[0]);
  EXPECT_NEAR(price_in_cone(ex11, std::vector<double>{0.4, 0.6}), kCeiling, 1e-10);

  const LsSolution ex12 = least_squares_prices(linear_basis(), kRate);
  EXPECT_NEAR(price_in_cone(ex12, std::vector<double>{2.0, 0.0}), 2 * 7.223641028417383, 1e-9);

  EXPECT_THROW(price_in_cone(ex12, std::vector<double>{-1.0, 2.0}), InvariantError);
  EXPECT_THROW(price_in_cone(ex12, std::vector<double>{0.0, 0.0}), InvariantError);
}

TEST(FindArbitrage, StandaloneQuotesOnConcaveBasis) {
  // Quoting each game at its stand-alone price leaves a profitable mix.
  const LsSolution s = least_squares_prices(concave_basis(), kRate);
  EXPECT_TRUE(find_arbitrage(concave_basis(), kRate, s.standalone).has_value());
  EXPECT_FALSE(find_arbitrage(concave_basis(), kRate, s.prices).has_value());
}

TEST(MinNorm, BoxOnly) {
  const detail::MinNormResult r = detail::min_norm_point({}, 3);
  for (double v : r.point) EXPECT_EQ(v, 0.0);
}

TEST(MinNorm, SingleCutProjection) {
  const std::vector<detail::HalfSpace> cuts{{{1.0, 1.0}, 1.0}};
  const detail::MinNormResult r = detail::min_norm_point(cuts, 2);
  EXPECT_NEAR(r.point[0], 0.5, 1e-14);
  EXPECT_NEAR(r.point[1], 0.5, 1e-14);
}

TEST(MinNorm, BoxBindsCut) {
  // t1 + 4 t2 >= 4.5 with t2 <= 1: optimum (0.5, 1).
  const std::vector<detail::HalfSpace> cuts{{{1.0, 4.0}, 4.5}};
  const detail::MinNormResult r = detail::min_norm_point(cuts, 2);
  EXPECT_NEAR(r.point[0], 0.5, 1e-12);
  EXPECT_NEAR(r.point[1], 1.0, 1e-12);
}

TEST(MinNorm, DegenerateVertexTerminates) {
  // Cuts captured from a three-outcome parity basis whose optimum sits on a
  // vertex with more active constraints than dimensions.
  const std::vector<detail::HalfSpace> cuts{
      {{0.99291995793113241, 0, 0.11878534060244184}, 1.1117052985335742},
      {{0.5500466254637808, 0.83513394722996825, 0}, 1.0681880410416571},
      {{0.6084207920106629, 0.79358255694906621, 0.0071319811623419185}, 1.2902933199896667},
      {{0.68058592082530789, 0.73240104338089551, 0.019786763983618668}, 1.3835437850293641},
      {{0.77758389204054368, 0.62751213916077275, 0.039897444090453038}, 1.4249630255265124},
      {{0.87830103459201858, 0.47368729190387349, 0.064866340449915696}, 1.4094825821682497},
      {{0.94756794344732365, 0.3074167328299412, 0.087234998292968435}, 1.3398570977528819},
  };
  const detail::MinNormResult r = detail::min_norm_point(cuts, 3);
  for (const detail::HalfSpace& c : cuts) EXPECT_GE(dot(c.normal, r.point), c.offset - 1e-9);
  for (double v : r.point) {
    EXPECT_GE(v, -1e-12);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}

TEST(MinNorm, MatchesBruteForceOnRandomCuts) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<detail::HalfSpace> cuts;
    for (int c = 0; c < 4; ++c) {
      std::vector<double> normal{unit(rng), unit(rng)};
      const double offset = unit(rng) * (normal[0] + normal[1]);
      cuts.push_back({normal, offset});
    }
    const detail::MinNormResult r = detail::min_norm_point(cuts, 2);
    double best = INFINITY;
    const int steps = 1000;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        const std::vector<double> t{double(i) / steps, double(j) / steps};
        bool ok = true;
        for (const auto& c : cuts) ok = ok && dot(c.normal, t) >= c.offset;
        if (ok) best = std::min(best, dot(t, t));
      }
    }
    const double found = dot(r.point, r.point);
    EXPECT_LE(found, best + 1e-12);
    EXPECT_GE(found, best - 4e-3);
  }
}

// Properties.

namespace {

std::vector<std::pair<std::string, ConeBasis>> bases() {
  return {{"constant-mix", constant_mix_basis()},
          {"linear", linear_basis()},
          {"concave", concave_basis()},
          {"three-outcome", three_outcome_basis()}};
}

}  // namespace

TEST(LsProperties, SandwichAndTightness) {
  for (const auto& [name, basis] : bases()) {
    SCOPED_TRACE(name);
    const LsSolution s = least_squares_prices(basis, kRate);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_GE(s.prices[i], s.standalone[i] - 1e-9);
      EXPECT_LE(s.prices[i], s.ceilings[i] + 1e-9);
    }
    const double linear = dot(s.certificate.weights(), s.prices);
    const double standalone = price(mix_game(basis, s.certificate), basis.space(), kRate).price;
    EXPECT_NEAR(standalone, linear, 1e-7 * linear);
  }
}

TEST(LsProperties, ArbitrageFree) {
  std::mt19937_64 rng(33);
  std::exponential_distribution<double> e(1.0);
  for (const auto& [name, basis] : bases()) {
    SCOPED_TRACE(name);
    const LsSolution s = least_squares_prices(basis, kRate);
    for (int trial = 0; trial < 125; ++trial) {
      std::vector<double> k(basis.size());
      for (double& v : k) v = e(rng);
      std::vector<double> payoff(basis.space().size(), 0.0);
      for (std::size_t i = 0; i < k.size(); ++i) {
        for (std::size_t j = 0; j < payoff.size(); ++j) payoff[j] += k[i] * basis[i][j];
      }
      const double linear = price_in_cone(s, k);
      EXPECT_LE(price(Game(payoff), basis.space(), kRate).price, linear + 1e-7 * linear);
    }
  }
}

TEST(LsProperties, Minimality) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> delta(1e-4, 1e-2);
  for (const auto& [name, basis] : bases()) {
    SCOPED_TRACE(name);
    const LsSolution s = least_squares_prices(basis, kRate);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<double> lowered = s.prices;
      const std::size_t i = rng() % lowered.size();
      lowered[i] -= delta(rng) * lowered[i];
      const auto mix = find_arbitrage(basis, kRate, lowered);
      ASSERT_TRUE(mix.has_value());
      const double u = price(mix_game(basis, *mix), basis.space(), kRate).price;
      EXPECT_GT(u, dot(mix->weights(), lowered));
    }
  }
}

TEST(LsProperties, UniqueAcrossCutOrderings) {
  for (const auto& [name, basis] : bases()) {
    SCOPED_TRACE(name);
    LsOptions reference;
    reference.use_shortcuts = false;
    const LsSolution base = least_squares_prices(basis, kRate, reference);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      LsOptions options = reference;
      options.seed_cuts = 8;
      options.seed = seed;
      const LsSolution s = least_squares_prices(basis, kRate, options);
      for (std::size_t i = 0; i < s.x.size(); ++i) EXPECT_NEAR(s.x[i], base.x[i], 1e-7);
    }
  }
}

TEST(LsProperties, BasisInvariance) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (const auto& [name, basis] : bases()) {
    SCOPED_TRACE(name);
    const LsSolution s = least_squares_prices(basis, kRate);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> v(basis.size());
      std::vector<Game> scaled;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        v[i] = scale(rng);
        scaled.push_back(basis[i].scaled(v[i]));
      }
      const LsSolution t = least_squares_prices(ConeBasis(basis.space(), scaled), kRate);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        EXPECT_NEAR(t.prices[i], v[i] * s.prices[i], 1e-9 * v[i] * s.prices[i]);
      }
    }
  }
}

TEST(LsProperties, FastPathsMatchCuttingPlanes) {
  for (const ConeBasis& basis : {constant_mix_basis(), linear_basis()}) {
    LsOptions slow;
    slow.use_shortcuts = false;
    const LsSolution fast = least_squares_prices(basis, kRate);
    const LsSolution full = least_squares_prices(basis, kRate, slow);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_NEAR(full.x[i], fast.x[i], 1e-7);
      EXPECT_NEAR(full.prices[i], fast.prices[i], 1e-7 * fast.prices[i]);
    }
  }
}
