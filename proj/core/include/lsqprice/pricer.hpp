#pragma once

#include <cstddef>

#include "lsqprice/core.hpp"

namespace lsqprice {

enum class Regime { full_investment, interior };

/// Growth-rate price of a single game.
///
/// `price` is the u at which an investor who stakes the optimal `proportion`
/// of current capital each round grows at exactly the risk-free factor g.
/// `achieved_growth` is exp(E log(a t / u - t + 1)) evaluated at the returned
/// pair and should equal g to solver tolerance.
struct PriceResult {
  double price;
  double proportion;
  Regime regime;
  double achieved_growth;
};

struct ProportionResult {
  double proportion;
  double log_growth;
};

struct PricerTolerances {
  /// Bracket width on u, relative to the upper bound E/g.
  double price_rel = 1e-12;
  /// Bracket width on t.
  double proportion = 1e-12;
  std::size_t max_price_iterations = 200;
};

/// kappa = (1 - sqrt(1 - 1/g^2)) / 2, always in (0, 1/2).
class KappaContext {
 public:
  explicit KappaContext(const Rate& rate);
  double kappa() const noexcept { return kappa_; }

 private:
  double kappa_;
};

/// Largest admissible proportion at price u: log(a_min t/u - t + 1) needs a
/// positive argument. Infinite when a_min >= u.
double log_domain_limit(const Game& game, double price);

/// sum_j p_j log(a_j t / u - t + 1). Throws InvariantError outside the log domain.
double expected_log_growth(const Game& game, const OutcomeSpace& space, double price,
                           double proportion);

/// d/dt of expected_log_growth: sum_j p_j (a_j - u) / (u + t (a_j - u)).
double growth_derivative(const Game& game, const OutcomeSpace& space, double price,
                         double proportion);

/// Maximizes expected_log_growth over t in [0, min(1, t_max)).
///
/// Returns t = 0, g = 0 when the game is not worth buying at u (u >= E), and
/// t = 1 when the derivative is still nonnegative at full investment.
ProportionResult optimal_proportion(const Game& game, const OutcomeSpace& space, double price,
                                    const PricerTolerances& tol = {});

/// Closed form for a two-outcome game on a fair coin.
PriceResult price_two_outcome_fair(double a, double b, const Rate& rate);

/// Root-finding pricer for any finite game.
PriceResult price_general(const Game& game, const OutcomeSpace& space, const Rate& rate,
                          const PricerTolerances& tol = {});

/// Uses the closed form on a fair coin, the general solver otherwise.
PriceResult price(const Game& game, const OutcomeSpace& space, const Rate& rate,
                  const PricerTolerances& tol = {});

struct SeriesOptions {
  /// Target bound on the truncated tail's contribution to the log-growth sums.
  double tail_tolerance = 1e-12;
  std::size_t max_terms = 60;
};

struct SeriesTruncation {
  OutcomeSpace space;
  Game game;
  std::size_t terms;
  double tail_probability;
  double error_bound;
};

/// Truncates a series game where the declared moment bound guarantees the
/// tail is below `tail_tolerance`; throws InvariantError if `max_terms` binds
/// first or the partial moments exceed the declared bound.
SeriesTruncation truncate_series(const SeriesGame& game, const SeriesOptions& options = {});

PriceResult price_series(const SeriesGame& game, const Rate& rate, const SeriesOptions& options = {},
                         const PricerTolerances& tol = {});

}  // namespace lsqprice
