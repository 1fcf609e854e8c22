#include "lsqprice/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace lsqprice {

namespace {

constexpr double kSimplexTolerance = 1e-12;

double sum_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

OutcomeSpace::OutcomeSpace(std::vector<double> probabilities) : probs_(std::move(probabilities)) {
  if (probs_.empty()) {
    throw InvariantError("outcome space non-empty", "at least one outcome is required");
  }
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    if (!std::isfinite(probs_[j]) || probs_[j] <= 0.0) {
      throw InvariantError("outcome probabilities positive",
                           "probability " + std::to_string(j) + " is " + std::to_string(probs_[j]));
    }
  }
  const double total = sum_of(probs_);
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw InvariantError("outcome probabilities sum to 1",
                         "sum is " + std::to_string(total));
  }
  for (double& p : probs_) p /= total;
}

OutcomeSpace OutcomeSpace::fair_coin() { return OutcomeSpace({0.5, 0.5}); }

OutcomeSpace OutcomeSpace::uniform(std::size_t outcomes) {
  if (outcomes == 0) {
    throw InvariantError("outcome space non-empty", "at least one outcome is required");
  }
  return OutcomeSpace(std::vector<double>(outcomes, 1.0 / static_cast<double>(outcomes)));
}

bool OutcomeSpace::is_fair_coin() const noexcept {
  return probs_.size() == 2 && probs_[0] == 0.5 && probs_[1] == 0.5;
}

Game::Game(std::vector<double> payoffs) : payoffs_(std::move(payoffs)) {
  if (payoffs_.empty()) {
    throw InvariantError("game non-empty", "a game needs at least one payoff");
  }
  bool any_positive = false;
  for (std::size_t j = 0; j < payoffs_.size(); ++j) {
    if (!std::isfinite(payoffs_[j]) || payoffs_[j] < 0.0) {
      throw InvariantError("payoffs nonnegative",
                           "payoff " + std::to_string(j) + " is " + std::to_string(payoffs_[j]));
    }
    any_positive = any_positive || payoffs_[j] > 0.0;
  }
  if (!any_positive) {
    throw InvariantError("expectation positive", "every payoff is zero");
  }
}

double Game::min_payoff() const noexcept { return *std::min_element(payoffs_.begin(), payoffs_.end()); }

double Game::max_payoff() const noexcept { return *std::max_element(payoffs_.begin(), payoffs_.end()); }

bool Game::is_constant() const noexcept { return min_payoff() == max_payoff(); }

Game Game::scaled(double k) const {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvariantError("scale factor positive", "k = " + std::to_string(k));
  }
  std::vector<double> out(payoffs_);
  for (double& a : out) a *= k;
  return Game(std::move(out));
}

SeriesGame::SeriesGame(TermRule rule, double tail_exponent, double tail_moment_bound)
    : rule_(std::move(rule)), tail_exponent_(tail_exponent), tail_moment_bound_(tail_moment_bound) {
  if (!rule_) {
    throw InvariantError("series term rule", "rule is empty");
  }
  if (!(tail_exponent_ > 0.0)) {
    throw InvariantError("series tail exponent positive", "nu = " + std::to_string(tail_exponent_));
  }
  if (!(tail_moment_bound_ >= 0.0) || !std::isfinite(tail_moment_bound_)) {
    throw InvariantError("series tail moment finite",
                         "bound = " + std::to_string(tail_moment_bound_));
  }
}

SeriesGame SeriesGame::st_petersburg() {
  // sum_{j>=1} (2^j)^(1/2) 2^-j = 1 / (sqrt(2) - 1) = 1 + sqrt(2)
  return SeriesGame(
      [](std::size_t j) -> std::optional<SeriesTerm> {
        const double payoff = std::ldexp(1.0, static_cast<int>(j));
        return SeriesTerm{payoff, 1.0 / payoff};
      },
      0.5, 1.0 + std::sqrt(2.0));
}

SeriesGame SeriesGame::constant(double payoff) {
  if (!(payoff > 0.0) || !std::isfinite(payoff)) {
    throw InvariantError("expectation positive", "constant payoff " + std::to_string(payoff));
  }
  const double bound = payoff > 1.0 ? payoff : 0.0;
  return SeriesGame(
      [payoff](std::size_t j) -> std::optional<SeriesTerm> {
        if (j == 1) return SeriesTerm{payoff, 1.0};
        return std::nullopt;
      },
      1.0, bound);
}

Rate::Rate(double value, Compounding convention) : value_(value), convention_(convention) {
  if (!(value_ > 0.0) || !std::isfinite(value_)) {
    throw InvariantError("rate positive", "r = " + std::to_string(value_));
  }
}

double Rate::growth_factor() const noexcept {
  return convention_ == Compounding::continuous ? std::exp(value_) : 1.0 + value_;
}

Mix::Mix(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw InvariantError("mix non-empty", "a mix needs at least one weight");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw InvariantError("mix weights nonnegative",
                           "weight " + std::to_string(i) + " is " + std::to_string(weights_[i]));
    }
  }
  const double total = sum_of(weights_);
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw InvariantError("mix weights sum to 1", "sum is " + std::to_string(total));
  }
  for (double& w : weights_) w /= total;
}

Mix Mix::vertex(std::size_t n, std::size_t i) {
  std::vector<double> w(n, 0.0);
  w.at(i) = 1.0;
  return Mix(std::move(w));
}

Mix Mix::uniform(std::size_t n) {
  if (n == 0) throw InvariantError("mix non-empty", "a mix needs at least one weight");
  return Mix(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ConeBasis::ConeBasis(OutcomeSpace space, std::vector<Game> games)
    : space_(std::move(space)), games_(std::move(games)) {
  if (games_.empty()) {
    throw InvariantError("cone basis non-empty", "a cone basis needs at least one game");
  }
  for (const Game& g : games_) check_aligned(g, space_);
  if (space_.size() == 2 && games_.size() > 2) {
    throw BasisError("a cone over two outcomes has at most two extreme rays, got " +
                     std::to_string(games_.size()) + " games");
  }
  if (games_.size() == 2 && proportional(games_[0], games_[1])) {
    throw BasisError("basis games are positive multiples of each other");
  }
}

void check_aligned(const Game& game, const OutcomeSpace& space) {
  if (game.size() != space.size()) {
    throw InvariantError("game aligned to outcome space",
                         std::to_string(game.size()) + " payoffs vs " + std::to_string(space.size()) +
                             " outcomes");
  }
}

double expectation(const Game& game, const OutcomeSpace& space) {
  check_aligned(game, space);
  double e = 0.0;
  for (std::size_t j = 0; j < space.size(); ++j) e += space[j] * game[j];
  return e;
}

double geometric_mean(const Game& game, const OutcomeSpace& space) {
  check_aligned(game, space);
  double log_sum = 0.0;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (game[j] == 0.0) return 0.0;
    log_sum += space[j] * std::log(game[j]);
  }
  return std::exp(log_sum);
}

double harmonic_mean(const Game& game, const OutcomeSpace& space) {
  check_aligned(game, space);
  double inv = 0.0;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (game[j] == 0.0) return 0.0;
    inv += space[j] / game[j];
  }
  return 1.0 / inv;
}

double payoff_variance(const Game& game, const OutcomeSpace& space) {
  const double mean = expectation(game, space);
  double v = 0.0;
  for (std::size_t j = 0; j < space.size(); ++j) {
    const double d = game[j] - mean;
    v += space[j] * d * d;
  }
  return v;
}

Game mix_game(const ConeBasis& basis, const Mix& mix) {
  if (mix.size() != basis.size()) {
    throw InvariantError("mix matches basis size",
                         std::to_string(mix.size()) + " weights vs " + std::to_string(basis.size()) +
                             " games");
  }
  std::vector<double> out(basis.space().size(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (mix[i] == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += mix[i] * basis[i][j];
  }
  return Game(std::move(out));
}

bool proportional(const Game& a, const Game& b, double tol) {
  if (a.size() != b.size()) return false;
  const double k = std::accumulate(a.payoffs().begin(), a.payoffs().end(), 0.0) /
                   std::accumulate(b.payoffs().begin(), b.payoffs().end(), 0.0);
  const double scale = a.max_payoff();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j] - k * b[j]) > tol * scale) return false;
  }
  return true;
}

}  // namespace lsqprice
