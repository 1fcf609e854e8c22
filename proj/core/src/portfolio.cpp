#include "lsqprice/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

namespace lsqprice {

namespace {

void check_coin(const Game& g, const char* name) {
  if (g.size() != 2) {
    throw InvariantError("two-outcome game", std::string(name) + " has " + std::to_string(g.size()) + " payoffs");
  }
}

}  // namespace

Game JointSpace::fund(double w) const {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw InvariantError("fund weight in [0,1]", "w = " + std::to_string(w));
  }
  std::vector<double> payoffs(space.size());
  for (std::size_t j = 0; j < payoffs.size(); ++j) payoffs[j] = w * x[j] + (1.0 - w) * y[j];
  return Game(std::move(payoffs));
}

JointSpace joint_space(const Game& x, const Game& y) {
  check_coin(x, "X");
  check_coin(y, "Y");
  return JointSpace{OutcomeSpace::uniform(4), Game({x[0], x[0], x[1], x[1]}),
                    Game({y[0], y[1], y[0], y[1]})};
}

OneFund one_fund(const Game& x, const Game& y, const Rate& rate, const PricerTolerances& tol) {
  check_coin(x, "X");
  check_coin(y, "Y");
  const OutcomeSpace coin = OutcomeSpace::fair_coin();
  OneFund out{};
  out.variance_x = payoff_variance(x, coin);
  out.variance_y = payoff_variance(y, coin);
  if (out.variance_x <= 0.0 || out.variance_y <= 0.0) {
    throw InvariantError("one-fund formula defined", "a constant game has zero variance");
  }
  out.price_x = price(x, coin, rate, tol).price;
  out.price_y = price(y, coin, rate, tol).price;
  out.return_x = expectation(x, coin) / out.price_x - 1.0;
  out.return_y = expectation(y, coin) / out.price_y - 1.0;
  const double r = rate.value();
  if (out.return_x <= r || out.return_y <= r) {
    throw InvariantError("mean returns exceed r", "r_X = " + std::to_string(out.return_x) +
                                                       ", r_Y = " + std::to_string(out.return_y));
  }
  const double sx = (out.return_x - r) / out.variance_x;
  const double sy = (out.return_y - r) / out.variance_y;
  out.weight = sx / (sx + sy);
  return out;
}

double one_fund_weight(const Game& x, const Game& y, const Rate& rate, const PricerTolerances& tol) {
  return one_fund(x, y, rate, tol).weight;
}

FundOptimum best_fund(const JointSpace& joint, const Rate& rate, double weight_tolerance,
                      const PricerTolerances& tol) {
  auto value = [&](double w) { return price(joint.fund(w), joint.space, rate, tol).price; };

  // Golden section; the price is concave in w.
  constexpr double inv_phi = 0.6180339887498949;
  double a = 0.0;
  double b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = value(c);
  double fd = value(d);
  while (b - a > weight_tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value(d);
    }
  }
  double w = 0.5 * (a + b);
  // Concavity allows the max on an endpoint.
  for (double edge : {0.0, 1.0}) {
    if (value(edge) > value(w)) w = edge;
  }
  const double mid = value(0.5);
  if (std::abs(value(w) - mid) <= 1e-12 * mid) w = 0.5;
  return {w, price(joint.fund(w), joint.space, rate, tol)};
}

FundComparison compare_mean_variance(const Game& x, const Game& y, const Rate& rate,
                                     double weight_tolerance, const PricerTolerances& tol) {
  const JointSpace joint = joint_space(x, y);
  const OneFund inputs = one_fund(x, y, rate, tol);
  Game fund_onefund = joint.fund(inputs.weight);
  const double price_onefund = price(fund_onefund, joint.space, rate, tol).price;
  const FundOptimum star = best_fund(joint, rate, weight_tolerance, tol);
  const double t = star.price.proportion;
  return FundComparison{inputs,
                        inputs.weight,
                        std::move(fund_onefund),
                        price_onefund,
                        star.weight,
                        joint.fund(star.weight),
                        star.price.price,
                        t,
                        Allocation{t * star.weight, t * (1.0 - star.weight), 1.0 - t}};
}

ParityReport put_call_parity(const Game& s, const OutcomeSpace& space, double strike, const Rate& rate,
                             const LsOptions& options) {
  check_aligned(s, space);
  if (!(strike > 0.0) || !std::isfinite(strike)) {
    throw InvariantError("strike positive", "K = " + std::to_string(strike));
  }
  ParityReport report;
  report.strike = strike;
  report.discounted_strike = strike / rate.growth_factor();

  std::vector<double> put(s.size());
  std::vector<double> call(s.size());
  std::vector<double> capped(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    put[j] = std::max(strike - s[j], 0.0);
    call[j] = std::max(s[j] - strike, 0.0);
    capped[j] = std::min(s[j], strike);
  }
  auto all_zero = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return a == 0.0; });
  };
  if (all_zero(put)) {
    report.degenerate = true;
    report.reason = "put is identically zero (strike at or below every payoff)";
    return report;
  }
  if (all_zero(call)) {
    report.degenerate = true;
    report.reason = "call is identically zero (strike at or above every payoff)";
    return report;
  }

  const std::vector<std::string> names{"put", "call", "capped"};
  std::vector<Game> games{Game(std::move(put)), Game(std::move(call)), Game(std::move(capped))};
  std::vector<std::size_t> kept{0, 1, 2};
  // Drop from the back: the capped stock is the usual redundant member.
  for (std::size_t k = 3; k-- > 0;) {
    std::vector<Game> others;
    for (std::size_t i : kept) {
      if (i != k) others.push_back(games[i]);
    }
    if (others.size() == kept.size()) continue;
    if (cone_coordinates(others, games[k])) {
      kept.erase(std::find(kept.begin(), kept.end(), k));
      report.dropped.push_back(names[k]);
    }
  }

  std::vector<Game> basis_games;
  for (std::size_t i : kept) basis_games.push_back(games[i]);
  const ConeBasis basis(space, basis_games);
  if (!check_constant_mix(basis)) {
    throw SolverError("internal: put + capped stock should be a constant mix");
  }
  const LsSolution solution = least_squares_prices(basis, rate, options);

  std::vector<double> cone_price(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::optional<std::vector<double>> k = cone_coordinates(basis_games, games[i]);
    if (!k) throw SolverError("internal: parity game outside the reduced cone");
    cone_price[i] = price_in_cone(solution, *k);
  }
  report.put = cone_price[0];
  report.call = cone_price[1];
  report.capped = cone_price[2];
  report.underlying = report.call + report.capped;
  report.residual = report.call - report.put + report.discounted_strike - report.underlying;
  report.within_tolerance = std::abs(report.residual) < 1e-7 * strike;
  return report;
}

}  // namespace lsqprice
