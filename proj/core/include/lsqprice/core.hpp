#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lsqprice/error.hpp"

namespace lsqprice {

/// Finite probability vector over the joint outcomes shared by a family of
/// correlated games. Weights must be strictly positive and sum to one within
/// 1e-12; they are renormalized on construction.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::vector<double> probabilities);

  static OutcomeSpace fair_coin();
  static OutcomeSpace uniform(std::size_t outcomes);

  std::span<const double> probabilities() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// Two outcomes with probability exactly 1/2 each.
  bool is_fair_coin() const noexcept;

 private:
  std::vector<double> probs_;
};

/// Nonnegative payoff vector. At least one payoff is positive, which makes
/// the expectation positive under any OutcomeSpace of matching size.
class Game {
 public:
  explicit Game(std::vector<double> payoffs);

  std::span<const double> payoffs() const noexcept { return payoffs_; }
  std::size_t size() const noexcept { return payoffs_.size(); }
  double operator[](std::size_t i) const { return payoffs_[i]; }

  double min_payoff() const noexcept;
  double max_payoff() const noexcept;
  bool is_constant() const noexcept;

  /// Positive rescaling kA.
  Game scaled(double k) const;

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::vector<double> payoffs_;
};

struct SeriesTerm {
  double payoff;
  double probability;
};

/// Game with countable support {payoff_j with probability prob_j, j = 1, 2, ...}.
///
/// The term rule returns std::nullopt once the support is exhausted, so finite
/// games can be expressed too. `tail_exponent` (nu) and `tail_moment_bound`
/// (an upper bound on sum_{payoff_j > 1} payoff_j^nu prob_j) are declared by
/// the caller; truncation error is controlled through them.
class SeriesGame {
 public:
  using TermRule = std::function<std::optional<SeriesTerm>(std::size_t)>;

  SeriesGame(TermRule rule, double tail_exponent, double tail_moment_bound);

  /// Payoff 2^j with probability 2^-j.
  static SeriesGame st_petersburg();
  /// Single payoff c with probability one.
  static SeriesGame constant(double payoff);

  std::optional<SeriesTerm> term(std::size_t j) const { return rule_(j); }
  double tail_exponent() const noexcept { return tail_exponent_; }
  double tail_moment_bound() const noexcept { return tail_moment_bound_; }

 private:
  TermRule rule_;
  double tail_exponent_;
  double tail_moment_bound_;
};

enum class Compounding { continuous, simple };

/// Per-period risk-free rate r > 0 with its compounding convention.
class Rate {
 public:
  explicit Rate(double value, Compounding convention = Compounding::continuous);

  static Rate continuous(double value) { return Rate(value, Compounding::continuous); }
  static Rate simple(double value) { return Rate(value, Compounding::simple); }

  double value() const noexcept { return value_; }
  Compounding convention() const noexcept { return convention_; }

  /// e^r (continuous) or 1 + r (simple).
  double growth_factor() const noexcept;

 private:
  double value_;
  Compounding convention_;
};

/// A point of the probability simplex over n basis games.
class Mix {
 public:
  explicit Mix(std::vector<double> weights);

  static Mix vertex(std::size_t n, std::size_t i);
  static Mix uniform(std::size_t n);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

/// Ordered games over one shared outcome space spanning a convex cone.
///
/// For n <= 2 the basis property is verified (two games must not be positive
/// multiples of each other); on a two-outcome space at most two games can be
/// extreme rays, so n > 2 is rejected there. For n > 2 on larger spaces the
/// caller is responsible for linear independence within the cone.
class ConeBasis {
 public:
  ConeBasis(OutcomeSpace space, std::vector<Game> games);

  const OutcomeSpace& space() const noexcept { return space_; }
  std::span<const Game> games() const noexcept { return games_; }
  std::size_t size() const noexcept { return games_.size(); }
  const Game& operator[](std::size_t i) const { return games_[i]; }

 private:
  OutcomeSpace space_;
  std::vector<Game> games_;
};

/// Throws InvariantError when the game and space dimensions differ.
void check_aligned(const Game& game, const OutcomeSpace& space);

double expectation(const Game& game, const OutcomeSpace& space);

/// exp(sum p_j log a_j). Returns exactly 0 when any payoff is 0, which forces
/// the interior pricing regime.
double geometric_mean(const Game& game, const OutcomeSpace& space);

/// 1 / sum(p_j / a_j), or 0 when any payoff is 0.
double harmonic_mean(const Game& game, const OutcomeSpace& space);

/// Probability-weighted variance of the payoffs.
double payoff_variance(const Game& game, const OutcomeSpace& space);

/// Componentwise sum_i p_i A_i.
Game mix_game(const ConeBasis& basis, const Mix& mix);

/// True when `a` is a positive multiple of `b` (relative tolerance `tol`).
bool proportional(const Game& a, const Game& b, double tol = 1e-12);

}  // namespace lsqprice
