#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lsqprice/core.hpp"
#include "lsqprice/pricer.hpp"

namespace lsqprice {

/// Segment between a basis game's stand-alone price and its ceiling E/g.
///
/// A coordinate t in [0,1] picks a candidate price on the segment. When the
/// stand-alone price already equals the ceiling the segment is degenerate and
/// the coordinate is pinned to 0.
class AdjustedPriceLine {
 public:
  AdjustedPriceLine(double base, double ceiling);

  double base() const noexcept { return base_; }
  double ceiling() const noexcept { return ceiling_; }
  double length() const noexcept { return ceiling_ - base_; }
  bool degenerate() const noexcept { return ceiling_ - base_ <= 0.0; }
  double adjusted(double t) const noexcept { return base_ + t * (ceiling_ - base_); }

 private:
  double base_;
  double ceiling_;
};

/// Stand-alone price and ceiling line for every game of the basis.
std::vector<AdjustedPriceLine> price_lines(const ConeBasis& basis, const Rate& rate,
                                           const PricerTolerances& tol = {});

/// Least-squares prices of a basis together with the data that certifies them.
struct LsSolution {
  /// Min-norm point of the feasible set of interpolation coordinates.
  std::vector<double> x;
  /// Least-squares price of each basis game.
  std::vector<double> prices;
  /// Stand-alone prices and ceilings E/g, for reporting.
  std::vector<double> standalone;
  std::vector<double> ceilings;
  /// Mix whose stand-alone price equals its linear price (tight mix).
  Mix certificate;
  /// sum x_i^2
  double norm;
  std::size_t iterations;
  /// max over mixes of ratio - 1 at x (<= tolerance on success).
  double max_violation;
};

struct LsOptions {
  /// Stop once the worst mix ratio is at most 1 + ratio_tolerance.
  double ratio_tolerance = 1e-9;
  /// Declare a stall when successive points move less than this for a few rounds.
  double step_tolerance = 1e-8;
  std::size_t max_cuts = 10'000;
  /// Apply the constant-mix and linear-pricing shortcuts before cutting planes.
  bool use_shortcuts = true;
  /// Extra cuts from random mixes, inserted in random order before solving.
  std::size_t seed_cuts = 0;
  std::uint64_t seed = 0;
  /// Replace the cutting-plane point by the projection onto the single
  /// deepest cut when that projection is feasible. Cutting planes alone
  /// locate x only to about sqrt(ratio_tolerance).
  bool polish = true;
  PricerTolerances pricer{};
};

/// Result of reducing a set of fair two-outcome games to a cone basis.
struct BasisReduction {
  ConeBasis basis;
  /// Input positions of the basis games.
  std::vector<std::size_t> basis_indices;
  /// coords[j] expresses input j as a nonnegative combination of the basis.
  std::vector<std::vector<double>> coords;
};

/// Picks the extreme payoff-ratio games (one game if all ratios agree) and
/// expresses every input in that basis. Basis games keep their input order.
BasisReduction reduce_to_basis(std::span<const Game> games);

/// Nonnegative coefficients k with sum_i k_i generators_i == target, if any.
/// Exact for small generator sets (support enumeration with least squares).
std::optional<std::vector<double>> cone_coordinates(std::span<const Game> generators,
                                                    const Game& target, double tol = 1e-10);

/// u(mix(p)) / sum_i p_i adjusted_i(t_i)
double ls_ratio(const ConeBasis& basis, const Rate& rate, std::span<const double> t, const Mix& p,
                const PricerTolerances& tol = {});

struct RatioMax {
  double value;
  Mix argmax;
};

/// max over mixes p of u(mix(p)) / sum_i p_i linear_prices_i.
///
/// The numerator is concave in p and the denominator positive and linear, so
/// the ratio is quasi-concave on the simplex. n = 2 uses a grid scan followed
/// by golden-section search; n > 2 uses a coarse simplex grid plus vertices
/// and the barycentre as starts for pairwise golden-section ascent.
RatioMax max_price_ratio(const ConeBasis& basis, const Rate& rate,
                         std::span<const double> linear_prices, const PricerTolerances& tol = {});

/// The worst-case ratio L(t) and a mix attaining it.
RatioMax big_L(const ConeBasis& basis, const Rate& rate, std::span<const double> t,
               const PricerTolerances& tol = {});

/// Cutting-plane solve for the min-norm point of {t in [0,1]^n : L(t) <= 1}.
///
/// Each mix p gives the linear cut sum_i p_i (c_i - u_i) t_i >= u(mix p) - sum_i p_i u_i.
/// Cuts are added at the maximizer of L until L(x) <= 1 + ratio_tolerance,
/// then the point is polished (see LsOptions::polish). Throws SolverError if
/// the cut cap is exceeded.
LsSolution least_squares_prices(const ConeBasis& basis, const Rate& rate, const LsOptions& options = {});

struct ConstantMix {
  Mix mix;
  /// Basis indices with positive weight in some constant mix.
  std::vector<std::size_t> support;
};

/// Looks for a mix whose payoff is the same in every outcome. When several
/// exist the returned mix averages them, so its support is the union of all
/// supports. Each game in the support is priced at its ceiling E/g.
std::optional<ConstantMix> check_constant_mix(const ConeBasis& basis);

/// True when u(mix(p)) == sum p_i u_i along every edge of the simplex (101
/// points each) and at 100 random interior mixes, to 1e-9 relative.
bool check_linear_pricing(const ConeBasis& basis, const Rate& rate, const PricerTolerances& tol = {});

/// Linear extension sum_i k_i prices_i to a point of the cone.
double price_in_cone(const LsSolution& solution, std::span<const double> k);

/// A mix earning more than the risk-free growth when the basis games are
/// quoted at `prices`, if one exists beyond `tol`.
std::optional<Mix> find_arbitrage(const ConeBasis& basis, const Rate& rate,
                                  std::span<const double> prices, double tol = 1e-9,
                                  const PricerTolerances& pricer = {});

}  // namespace lsqprice
