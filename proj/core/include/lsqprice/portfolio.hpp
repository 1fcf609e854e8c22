#pragma once

#include <string>
#include <vector>

#include "lsqprice/core.hpp"
#include "lsqprice/lsq.hpp"
#include "lsqprice/pricer.hpp"

namespace lsqprice {

/// Two independent fair coins X and Y lifted onto their product space.
/// Outcome order: (X high, Y first), (X high, Y second), (X low, Y first), (X low, Y second).
struct JointSpace {
  OutcomeSpace space;
  Game x;
  Game y;

  /// w X + (1 - w) Y on the joint space.
  Game fund(double w) const;
};

JointSpace joint_space(const Game& x, const Game& y);

/// Inputs of the mean-variance one-fund weight, kept for reporting.
struct OneFund {
  double variance_x;
  double variance_y;
  double price_x;
  double price_y;
  double return_x;
  double return_y;
  double weight;
};

/// Mean-variance tangency weight on X, using payoff variances and mean rates
/// of return E/u - 1 with growth-rate prices u.
OneFund one_fund(const Game& x, const Game& y, const Rate& rate, const PricerTolerances& tol = {});

double one_fund_weight(const Game& x, const Game& y, const Rate& rate, const PricerTolerances& tol = {});

struct FundOptimum {
  double weight;
  PriceResult price;
};

/// Maximizes the growth-rate price of w X + (1 - w) Y over w in [0, 1].
/// A flat objective reports the midpoint w = 0.5.
FundOptimum best_fund(const JointSpace& joint, const Rate& rate, double weight_tolerance = 1e-8,
                      const PricerTolerances& tol = {});

struct Allocation {
  double to_x;
  double to_y;
  double to_riskfree;
};

struct FundComparison {
  OneFund inputs;
  double w_onefund;
  Game fund_onefund;
  double price_onefund;
  double w_star;
  Game fund_star;
  double price_star;
  double t_star;
  Allocation allocation;
};

FundComparison compare_mean_variance(const Game& x, const Game& y, const Rate& rate,
                                     double weight_tolerance = 1e-8, const PricerTolerances& tol = {});

struct ParityReport {
  bool degenerate = false;
  std::string reason;
  double strike = 0.0;
  /// Least-squares prices in the cone of {put, call, min(S, K)}.
  double put = 0.0;
  double call = 0.0;
  double capped = 0.0;
  /// call + capped, the cone price of S itself.
  double underlying = 0.0;
  /// K / g
  double discounted_strike = 0.0;
  /// call - put + K/g - underlying
  double residual = 0.0;
  bool within_tolerance = false;
  /// Games dropped as nonnegative combinations of the others ("put", "call", "capped").
  std::vector<std::string> dropped;
};

/// Least-squares prices of the put max(K - S, 0), call max(S - K, 0) and
/// capped stock min(S, K), plus the parity residual. Games that are
/// nonnegative combinations of the others are dropped from the basis and
/// priced by linearity.
ParityReport put_call_parity(const Game& s, const OutcomeSpace& space, double strike, const Rate& rate,
                             const LsOptions& options = {});

}  // namespace lsqprice
