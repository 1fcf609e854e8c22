#include "lsqprice/pricer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace lsqprice {

namespace {

// Keeps the t-search strictly inside the log domain when a zero payoff puts
// t_max at exactly 1.
constexpr double kDomainMargin = 1e-12;

double upper_proportion(const Game& game, double price) {
  const double t_max = log_domain_limit(game, price);
  if (t_max > 1.0) return 1.0;
  return t_max * (1.0 - kDomainMargin);
}

PriceResult finish(const Game& game, const OutcomeSpace& space, double price, double proportion,
                   Regime regime) {
  const double g = expected_log_growth(game, space, price, proportion);
  return PriceResult{price, proportion, regime, std::exp(g)};
}

}  // namespace

KappaContext::KappaContext(const Rate& rate) {
  const double g = rate.growth_factor();
  kappa_ = 0.5 * (1.0 - std::sqrt(1.0 - 1.0 / (g * g)));
}

double log_domain_limit(const Game& game, double price) {
  const double a_min = game.min_payoff();
  if (a_min >= price) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - a_min / price);
}

double expected_log_growth(const Game& game, const OutcomeSpace& space, double price,
                           double proportion) {
  check_aligned(game, space);
  if (!(price > 0.0)) {
    throw InvariantError("price positive", "u = " + std::to_string(price));
  }
  if (proportion < 0.0 || proportion >= log_domain_limit(game, price)) {
    throw InvariantError("log domain", "t = " + std::to_string(proportion) +
                                           " at u = " + std::to_string(price));
  }
  double g = 0.0;
  for (std::size_t j = 0; j < space.size(); ++j) {
    g += space[j] * std::log1p(proportion * (game[j] - price) / price);
  }
  return g;
}

double growth_derivative(const Game& game, const OutcomeSpace& space, double price,
                         double proportion) {
  check_aligned(game, space);
  double d = 0.0;
  for (std::size_t j = 0; j < space.size(); ++j) {
    const double excess = game[j] - price;
    d += space[j] * excess / (price + proportion * excess);
  }
  return d;
}

ProportionResult optimal_proportion(const Game& game, const OutcomeSpace& space, double price,
                                    const PricerTolerances& tol) {
  check_aligned(game, space);
  if (!(price > 0.0)) {
    throw InvariantError("price positive", "u = " + std::to_string(price));
  }
  if (growth_derivative(game, space, price, 0.0) <= 0.0) {
    return {0.0, 0.0};
  }
  const double t_hi = upper_proportion(game, price);
  if (t_hi == 1.0 && growth_derivative(game, space, price, 1.0) >= 0.0) {
    return {1.0, expected_log_growth(game, space, price, 1.0)};
  }
  double lo = 0.0;
  double hi = t_hi;
  while (hi - lo > tol.proportion) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (growth_derivative(game, space, price, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  return {t, expected_log_growth(game, space, price, t)};
}

PriceResult price_two_outcome_fair(double a, double b, const Rate& rate) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvariantError("payoffs positive",
                         "closed form needs a, b > 0; got " + std::to_string(a) + ", " + std::to_string(b));
  }
  const OutcomeSpace coin = OutcomeSpace::fair_coin();
  const Game game({a, b});
  const double g = rate.growth_factor();
  const double mean = 0.5 * (a + b);
  const double gm = std::sqrt(a * b);
  if (mean / gm <= g) {
    return finish(game, coin, gm / g, 1.0, Regime::full_investment);
  }
  const double kappa = KappaContext(rate).kappa();
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  const double u = kappa * hi + (1.0 - kappa) * lo;
  const double t = u * (mean - u) / ((a - u) * (u - b));
  return finish(game, coin, u, t, Regime::interior);
}

PriceResult price_general(const Game& game, const OutcomeSpace& space, const Rate& rate,
                          const PricerTolerances& tol) {
  check_aligned(game, space);
  const double g = rate.growth_factor();
  const double log_g = std::log(g);
  const double mean = expectation(game, space);
  const double gm = geometric_mean(game, space);
  const double hm = harmonic_mean(game, space);

  if (gm > 0.0 && gm / g <= hm) {
    return finish(game, space, gm / g, 1.0, Regime::full_investment);
  }

  // Maximal growth is strictly decreasing in u; it is >= log g at the lower
  // end and <= log g at E/g.
  double hi = mean / g;
  double lo = gm / g;
  if (!(gm > 0.0)) {
    // A zero payoff puts no floor under the price; walk down until the
    // bracket holds. Heavy mass on the zero outcome pushes u far below E.
    lo = hi;
    do {
      hi = lo;
      lo *= 1e-3;
      if (!(lo >= std::numeric_limits<double>::min())) {
        throw SolverError("price lies below the smallest normal double");
      }
    } while (!(optimal_proportion(game, space, lo, tol).log_growth > log_g));
  }
  std::size_t iterations = 0;
  while (hi - lo > tol.price_rel * hi) {
    if (++iterations > tol.max_price_iterations) {
      throw SolverError("price bisection did not converge in " +
                        std::to_string(tol.max_price_iterations) + " iterations");
    }
    // Geometric midpoint while the bracket spans more than an octave.
    const double mid = hi > 2.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (optimal_proportion(game, space, mid, tol).log_growth > log_g) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double u = 0.5 * (lo + hi);
  const ProportionResult best = optimal_proportion(game, space, u, tol);
  if (best.proportion == 0.0) {
    throw SolverError("internal: price bracket collapsed to a zero proportion");
  }
  const Regime regime = best.proportion == 1.0 ? Regime::full_investment : Regime::interior;
  return PriceResult{u, best.proportion, regime, std::exp(best.log_growth)};
}

PriceResult price(const Game& game, const OutcomeSpace& space, const Rate& rate,
                  const PricerTolerances& tol) {
  check_aligned(game, space);
  if (space.is_fair_coin() && game.min_payoff() > 0.0) {
    return price_two_outcome_fair(game[0], game[1], rate);
  }
  return price_general(game, space, rate, tol);
}

SeriesTruncation truncate_series(const SeriesGame& game, const SeriesOptions& options) {
  const double nu = game.tail_exponent();
  const double bound = game.tail_moment_bound();
  std::vector<double> payoffs;
  std::vector<double> probs;
  double mass = 0.0;
  double moment = 0.0;
  double error = std::numeric_limits<double>::infinity();
  double tail = 1.0;

  for (std::size_t j = 1; j <= options.max_terms; ++j) {
    const std::optional<SeriesTerm> term = game.term(j);
    if (!term) {
      error = 0.0;
      tail = 0.0;
      break;
    }
    if (!(term->probability > 0.0) || !(term->payoff >= 0.0) || !std::isfinite(term->payoff)) {
      throw InvariantError("series term valid", "term " + std::to_string(j) + " has payoff " +
                                                    std::to_string(term->payoff) + ", probability " +
                                                    std::to_string(term->probability));
    }
    payoffs.push_back(term->payoff);
    probs.push_back(term->probability);
    mass += term->probability;
    if (term->payoff > 1.0) moment += std::pow(term->payoff, nu) * term->probability;
    if (moment > bound * (1.0 + 1e-12)) {
      throw InvariantError("declared tail bound", "partial moment " + std::to_string(moment) +
                                                      " exceeds declared bound " + std::to_string(bound));
    }
    tail = std::max(0.0, 1.0 - mass);
    if (tail == 0.0) {
      error = 0.0;
      break;
    }
    // Jensen on the conditional tail: sum_{tail} p log a <= (P/nu) log(M_tail / P).
    const double tail_moment = std::max(bound - moment, 0.0);
    const double log_part = tail_moment > tail ? std::log(tail_moment / tail) / nu : 0.0;
    error = tail * (1.0 + log_part);
    if (error < options.tail_tolerance) break;
  }
  if (!(error < options.tail_tolerance) && error != 0.0) {
    throw InvariantError("declared tail bound",
                         "tail error estimate " + std::to_string(error) + " after " +
                             std::to_string(payoffs.size()) + " terms exceeds tolerance " +
                             std::to_string(options.tail_tolerance));
  }
  if (payoffs.empty()) {
    throw InvariantError("series non-empty", "the series has no terms");
  }
  for (double& p : probs) p /= mass;
  const std::size_t terms = payoffs.size();
  return SeriesTruncation{OutcomeSpace(std::move(probs)), Game(std::move(payoffs)), terms, tail, error};
}

PriceResult price_series(const SeriesGame& game, const Rate& rate, const SeriesOptions& options,
                         const PricerTolerances& tol) {
  const SeriesTruncation truncated = truncate_series(game, options);
  return price_general(truncated.game, truncated.space, rate, tol);
}

}  // namespace lsqprice
