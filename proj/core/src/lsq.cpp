#include "lsqprice/lsq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "min_norm.hpp"

namespace lsqprice {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct Optimum1D {
  double x;
  double value;
};

// Golden-section maximization of a unimodal function on [a, b].
Optimum1D golden_max(const std::function<double(double)>& f, double a, double b, double width) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Optimum1D{c, fc} : Optimum1D{d, fd};
}

Mix to_mix(std::vector<double> w) {
  for (double& v : w) v = std::max(v, 0.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return Mix(std::move(w));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_length(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw InvariantError(std::string(what) + " matches basis size",
                         std::to_string(v.size()) + " entries vs " + std::to_string(n) + " games");
  }
}

// All compositions of `total` into n nonnegative parts, as simplex points.
void simplex_grid(std::size_t n, int total, std::vector<double>& current, int remaining,
                  std::vector<std::vector<double>>& out) {
  if (current.size() + 1 == n) {
    current.push_back(static_cast<double>(remaining) / total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current.push_back(static_cast<double>(k) / total);
    simplex_grid(n, total, current, remaining - k, out);
    current.pop_back();
  }
}

using SimplexObjective = std::function<double(std::span<const double>)>;

// Line search along w + s d, s in [0, s_max] with s_max the simplex exit.
void pattern_move(const SimplexObjective& f, std::vector<double>& w, const std::vector<double>& d,
                  double& value) {
  double s_max = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (d[k] < 0.0) s_max = std::min(s_max, w[k] / -d[k]);
  }
  if (!(s_max > 0.0) || !std::isfinite(s_max)) return;
  std::vector<double> trial(w.size());
  auto along = [&](double s) {
    for (std::size_t k = 0; k < w.size(); ++k) trial[k] = std::max(w[k] + s * d[k], 0.0);
    return f(trial);
  };
  const Optimum1D best = golden_max(along, 0.0, s_max, 1e-11 * s_max);
  if (best.value > value) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::max(w[k] + best.x * d[k], 0.0);
    value = best.value;
  }
}

// Pairwise golden-section ascent: repeatedly shifts weight between two
// coordinates while the objective keeps improving. A pattern move along each
// sweep's net displacement keeps it from crawling along narrow ridges.
double pairwise_ascent(const SimplexObjective& f, std::vector<double>& w, double value) {
  const std::size_t n = w.size();
  std::vector<double> step(n);
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double start = value;
    const std::vector<double> before = w;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double lo = -w[i];
        const double hi = w[j];
        if (hi - lo <= 0.0) continue;
        std::vector<double> trial = w;
        auto along = [&](double delta) {
          trial[i] = std::max(w[i] + delta, 0.0);
          trial[j] = std::max(w[j] - delta, 0.0);
          return f(trial);
        };
        const Optimum1D best = golden_max(along, lo, hi, 1e-11);
        if (best.value > value) {
          w[i] = std::max(w[i] + best.x, 0.0);
          w[j] = std::max(w[j] - best.x, 0.0);
          value = best.value;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) step[k] = w[k] - before[k];
    pattern_move(f, w, step, value);
    if (value - start <= 1e-15 * std::abs(value)) break;
  }
  return value;
}

struct SimplexOptimum {
  double value;
  std::vector<double> weights;
};

// Maximizes a quasi-concave function over the simplex. n = 2: grid scan then
// golden section around the best grid point. n > 2: coarse simplex grid (or
// vertices for n > 4) plus the barycentre, then pairwise ascent from the two
// best candidates.
SimplexOptimum maximize_on_simplex(const SimplexObjective& f, std::size_t n) {
  if (n == 1) {
    const std::vector<double> w{1.0};
    return {f(w), w};
  }

  if (n == 2) {
    auto along = [&](double s) {
      const std::vector<double> w{s, 1.0 - s};
      return f(w);
    };
    constexpr int kGrid = 100;
    int best_k = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kGrid; ++k) {
      const double v = along(static_cast<double>(k) / kGrid);
      if (v > best_value) {
        best_value = v;
        best_k = k;
      }
    }
    const double a = static_cast<double>(std::max(best_k - 1, 0)) / kGrid;
    const double b = static_cast<double>(std::min(best_k + 1, kGrid)) / kGrid;
    Optimum1D opt = golden_max(along, a, b, 1e-11);
    if (best_value >= opt.value) opt = {static_cast<double>(best_k) / kGrid, best_value};
    return {opt.value, {opt.x, 1.0 - opt.x}};
  }

  std::vector<std::vector<double>> candidates;
  if (n <= 4) {
    std::vector<double> scratch;
    simplex_grid(n, 10, scratch, 10, candidates);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> vertex(n, 0.0);
      vertex[i] = 1.0;
      candidates.push_back(std::move(vertex));
    }
  }
  candidates.emplace_back(n, 1.0 / static_cast<double>(n));

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) scored.emplace_back(f(candidates[c]), c);
  std::sort(scored.begin(), scored.end(), std::greater<>());

  SimplexOptimum best{-std::numeric_limits<double>::infinity(), {}};
  const std::size_t starts = std::min<std::size_t>(2, scored.size());
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> w = candidates[scored[s].second];
    const double v = pairwise_ascent(f, w, scored[s].first);
    if (v > best.value) best = {v, std::move(w)};
  }
  return best;
}

double mix_price(const ConeBasis& basis, const Rate& rate, std::span<const double> w,
                 const PricerTolerances& tol) {
  std::vector<double> payoff(basis.space().size(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t j = 0; j < payoff.size(); ++j) payoff[j] += w[i] * basis[i][j];
  }
  return price(Game(std::move(payoff)), basis.space(), rate, tol).price;
}

// Closest point to the origin of {t in [0,1]^n : normal . t >= offset} for a
// nonnegative normal: t = min(lambda * normal, 1) with the smallest feasible lambda.
std::vector<double> project_onto_cut(std::span<const double> normal, double offset) {
  const std::size_t n = normal.size();
  std::vector<double> t(n, 0.0);
  if (offset <= 0.0) return t;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return normal[a] > normal[b]; });
  // The k largest normals are clipped at 1.
  double clipped = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    double free_sq = 0.0;
    for (std::size_t r = k; r < n; ++r) free_sq += normal[order[r]] * normal[order[r]];
    if (free_sq > 0.0) {
      const double lambda = (offset - clipped) / free_sq;
      const bool consistent = lambda * normal[order[k]] <= 1.0 &&
                              (k == 0 || lambda * normal[order[k - 1]] >= 1.0);
      if (consistent) {
        for (std::size_t r = 0; r < n; ++r) {
          t[order[r]] = r < k ? 1.0 : lambda * normal[order[r]];
        }
        return t;
      }
    }
    if (k < n) clipped += normal[order[k]];
  }
  std::fill(t.begin(), t.end(), 1.0);
  return t;
}

std::vector<double> random_simplex_point(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (double& v : w) v = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

detail::HalfSpace make_cut(const ConeBasis& basis, const Rate& rate,
                           std::span<const AdjustedPriceLine> lines, std::span<const double> p,
                           const PricerTolerances& tol) {
  detail::HalfSpace cut{std::vector<double>(basis.size()), mix_price(basis, rate, p, tol)};
  double at_ones = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    cut.normal[i] = p[i] * lines[i].length();
    cut.offset -= p[i] * lines[i].base();
    at_ones += cut.normal[i];
  }
  // The all-ones corner always satisfies the exact cut (u(mix) <= E/g).
  cut.offset = std::min(cut.offset, at_ones);
  return cut;
}

double norm_of(std::span<const double> v) { return std::sqrt(dot(v, v)); }

// Gradient in w of the excess phi(w) = u(sum w_i A_i) - sum w_i u_i, divided
// by the line lengths. u comes from implicit differentiation of the growth
// equation at the optimal proportion, so it is as accurate as the price.
std::vector<double> scaled_excess_gradient(const ConeBasis& basis, const Rate& rate,
                                           std::span<const AdjustedPriceLine> lines,
                                           std::span<const double> w, const PricerTolerances& tol) {
  const OutcomeSpace& space = basis.space();
  std::vector<double> payoff(space.size(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < payoff.size(); ++j) payoff[j] += w[i] * basis[i][j];
  }
  const PriceResult r = price(Game(payoff), space, rate, tol);
  const double u = r.price;
  const double t = r.proportion;
  std::vector<double> by_payoff(space.size());
  double by_price = -1.0 / u;
  for (std::size_t j = 0; j < space.size(); ++j) {
    const double wealth = u * (1.0 - t) + t * payoff[j];
    by_payoff[j] = space[j] * t / wealth;
    by_price += space[j] * (1.0 - t) / wealth;
  }
  std::vector<double> grad(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < space.size(); ++j) d += basis[i][j] * by_payoff[j];
    grad[i] = (-d / by_price - lines[i].base()) / lines[i].length();
  }
  return grad;
}

// Newton refinement of a single-cut projection. At the min-norm point the
// tangent mix w satisfies grad phi(w) = length * x with x_i = w_i length_i on
// free coordinates and x_i = 1 on clipped ones (w absorbs the projection
// multiplier). Unlike the distance maximized to find the cut, these equations
// are not flat at the solution.
std::optional<std::vector<double>> refine_tangent(const ConeBasis& basis, const Rate& rate,
                                                  std::span<const AdjustedPriceLine> lines,
                                                  std::span<const double> x0, std::span<const double> w0,
                                                  const PricerTolerances& tol) {
  const std::size_t n = basis.size();
  std::vector<bool> clipped(n);
  double lambda = 0.0;
  std::size_t free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lines[i].degenerate()) return std::nullopt;
    clipped[i] = x0[i] >= 1.0;
    if (!clipped[i] && w0[i] > 0.0) {
      lambda += x0[i] / (w0[i] * lines[i].length());
      ++free;
    }
  }
  if (free == 0) return std::nullopt;
  lambda /= static_cast<double>(free);

  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXd w(size);
  for (std::size_t i = 0; i < n; ++i) w[static_cast<Eigen::Index>(i)] = lambda * w0[i];
  auto residual = [&](const Eigen::VectorXd& at) {
    if (at.minCoeff() <= 0.0) return Eigen::VectorXd(Eigen::VectorXd::Constant(size, NAN));
    const std::vector<double> g = scaled_excess_gradient(basis, rate, lines, {at.data(), n}, tol);
    Eigen::VectorXd out(size);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out[k] = g[i] - (clipped[i] ? 1.0 : at[k] * lines[i].length());
    }
    return out;
  };

  Eigen::VectorXd r = residual(w);
  for (int iteration = 0; iteration < 30 && r.allFinite(); ++iteration) {
    if (r.cwiseAbs().maxCoeff() <= 1e-13) break;
    Eigen::MatrixXd jacobian(size, size);
    for (Eigen::Index k = 0; k < size; ++k) {
      const double h = 1e-6 * w.norm();
      Eigen::VectorXd up = w;
      Eigen::VectorXd down = w;
      up[k] += h;
      down[k] -= h;
      jacobian.col(k) = (residual(up) - residual(down)) / (2.0 * h);
    }
    if (!jacobian.allFinite()) return std::nullopt;
    w -= jacobian.colPivHouseholderQr().solve(r);
    r = residual(w);
  }
  if (!r.allFinite() || r.cwiseAbs().maxCoeff() > 1e-10) return std::nullopt;

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double free_x = w[static_cast<Eigen::Index>(i)] * lines[i].length();
    if (clipped[i] ? free_x < 1.0 - 1e-9 : free_x > 1.0) return std::nullopt;
    x[i] = clipped[i] ? 1.0 : free_x;
  }
  return x;
}

}  // namespace

AdjustedPriceLine::AdjustedPriceLine(double base, double ceiling) : base_(base), ceiling_(ceiling) {
  if (!(base_ > 0.0)) {
    throw InvariantError("stand-alone price positive", "u = " + std::to_string(base_));
  }
  if (base_ > ceiling_) {
    if (base_ - ceiling_ > 1e-12 * ceiling_) {
      throw InvariantError("price below ceiling E/g",
                           "u = " + std::to_string(base_) + " > " + std::to_string(ceiling_));
    }
    base_ = ceiling_;
  }
}

std::vector<AdjustedPriceLine> price_lines(const ConeBasis& basis, const Rate& rate,
                                           const PricerTolerances& tol) {
  const double g = rate.growth_factor();
  std::vector<AdjustedPriceLine> lines;
  lines.reserve(basis.size());
  for (const Game& game : basis.games()) {
    const double u = price(game, basis.space(), rate, tol).price;
    lines.emplace_back(u, expectation(game, basis.space()) / g);
  }
  return lines;
}

std::optional<std::vector<double>> cone_coordinates(std::span<const Game> generators,
                                                    const Game& target, double tol) {
  const std::size_t n = generators.size();
  if (n == 0) return std::nullopt;
  if (n > 20) throw BasisError("cone membership check supports at most 20 generators");
  const auto m = static_cast<Eigen::Index>(target.size());
  for (const Game& g : generators) {
    if (g.size() != target.size()) throw BasisError("generator and target sizes differ");
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(target.payoffs().data(), m);
  const double scale = target.max_payoff();

  std::optional<std::vector<double>> best;
  std::size_t best_support = n + 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto support = static_cast<std::size_t>(std::popcount(mask));
    if (support >= best_support) continue;
    Eigen::MatrixXd a(m, static_cast<Eigen::Index>(support));
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      a.col(static_cast<Eigen::Index>(cols.size())) =
          Eigen::Map<const Eigen::VectorXd>(generators[i].payoffs().data(), m);
      cols.push_back(i);
    }
    const Eigen::VectorXd k = a.completeOrthogonalDecomposition().solve(rhs);
    if ((a * k - rhs).cwiseAbs().maxCoeff() > tol * scale) continue;
    if (k.minCoeff() < -tol) continue;
    std::vector<double> coords(n, 0.0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      coords[cols[c]] = std::max(k[static_cast<Eigen::Index>(c)], 0.0);
    }
    best = std::move(coords);
    best_support = support;
  }
  return best;
}

BasisReduction reduce_to_basis(std::span<const Game> games) {
  if (games.empty()) throw BasisError("basis reduction needs at least one game");
  for (const Game& g : games) {
    if (g.size() != 2 || g.min_payoff() <= 0.0) {
      throw BasisError("basis reduction expects two-outcome games with positive payoffs");
    }
  }
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t j = 1; j < games.size(); ++j) {
    const double ratio = games[j][0] / games[j][1];
    if (ratio < games[lo][0] / games[lo][1]) lo = j;
    if (ratio > games[hi][0] / games[hi][1]) hi = j;
  }
  const double r_lo = games[lo][0] / games[lo][1];
  const double r_hi = games[hi][0] / games[hi][1];

  std::vector<std::size_t> indices;
  if (r_hi <= r_lo * (1.0 + 1e-12)) {
    indices = {0};
  } else {
    indices = {std::min(lo, hi), std::max(lo, hi)};
  }
  std::vector<Game> basis_games;
  for (std::size_t i : indices) basis_games.push_back(games[i]);

  std::vector<std::vector<double>> coords;
  coords.reserve(games.size());
  for (const Game& g : games) {
    std::optional<std::vector<double>> k = cone_coordinates(basis_games, g, 1e-9);
    if (!k) throw BasisError("internal: game outside the cone spanned by the extreme-ratio games");
    coords.push_back(std::move(*k));
  }
  return BasisReduction{ConeBasis(OutcomeSpace::fair_coin(), std::move(basis_games)),
                        std::move(indices), std::move(coords)};
}

double ls_ratio(const ConeBasis& basis, const Rate& rate, std::span<const double> t, const Mix& p,
                const PricerTolerances& tol) {
  check_length(t, basis.size(), "coordinate vector");
  check_length(p.weights(), basis.size(), "mix");
  const std::vector<AdjustedPriceLine> lines = price_lines(basis, rate, tol);
  double denom = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) denom += p[i] * lines[i].adjusted(t[i]);
  return price(mix_game(basis, p), basis.space(), rate, tol).price / denom;
}

RatioMax max_price_ratio(const ConeBasis& basis, const Rate& rate,
                         std::span<const double> linear_prices, const PricerTolerances& tol) {
  const std::size_t n = basis.size();
  check_length(linear_prices, n, "price vector");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(linear_prices[i] > 0.0)) {
      return {std::numeric_limits<double>::infinity(), Mix::vertex(n, i)};
    }
  }
  auto ratio = [&](std::span<const double> w) {
    return mix_price(basis, rate, w, tol) / dot(w, linear_prices);
  };
  SimplexOptimum best = maximize_on_simplex(ratio, n);
  return {best.value, to_mix(std::move(best.weights))};
}

RatioMax big_L(const ConeBasis& basis, const Rate& rate, std::span<const double> t,
               const PricerTolerances& tol) {
  check_length(t, basis.size(), "coordinate vector");
  const std::vector<AdjustedPriceLine> lines = price_lines(basis, rate, tol);
  std::vector<double> adjusted(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) adjusted[i] = lines[i].adjusted(t[i]);
  return max_price_ratio(basis, rate, adjusted, tol);
}

std::optional<ConstantMix> check_constant_mix(const ConeBasis& basis) {
  const std::size_t n = basis.size();
  const std::size_t m = basis.space().size();
  if (n > 20) throw BasisError("constant-mix search supports at most 20 basis games");

  double scale = 0.0;
  for (const Game& g : basis.games()) scale = std::max(scale, g.max_payoff());
  const double tol = 1e-10 * scale;

  // Rows: payoff spread against outcome 0, then the simplex row.
  Eigen::MatrixXd full(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      full(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(i)) = basis[i][j] - basis[i][0];
    }
    full(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(i)) = scale;
  }
  rhs[static_cast<Eigen::Index>(m - 1)] = scale;

  std::vector<double> total(n, 0.0);
  std::size_t found = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto support = static_cast<std::size_t>(std::popcount(mask));
    if (support > m) continue;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(support));
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      a.col(static_cast<Eigen::Index>(cols.size())) = full.col(static_cast<Eigen::Index>(i));
      cols.push_back(i);
    }
    const Eigen::VectorXd p = a.completeOrthogonalDecomposition().solve(rhs);
    if ((a * p - rhs).cwiseAbs().maxCoeff() > tol) continue;
    if (p.minCoeff() < -1e-12) continue;
    for (std::size_t c = 0; c < cols.size(); ++c) total[cols[c]] += std::max(p[static_cast<Eigen::Index>(c)], 0.0);
    ++found;
  }
  if (found == 0) return std::nullopt;

  Mix mix = to_mix(std::move(total));
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    if (mix[i] > 1e-12) support.push_back(i);
  }
  return ConstantMix{std::move(mix), std::move(support)};
}

bool check_linear_pricing(const ConeBasis& basis, const Rate& rate, const PricerTolerances& tol) {
  const std::size_t n = basis.size();
  if (n == 1) return true;
  const std::vector<AdjustedPriceLine> lines = price_lines(basis, rate, tol);

  auto linear_at = [&](const std::vector<double>& w) {
    double linear = 0.0;
    for (std::size_t i = 0; i < n; ++i) linear += w[i] * lines[i].base();
    const double actual = price(mix_game(basis, to_mix(w)), basis.space(), rate, tol).price;
    return std::abs(actual - linear) <= 1e-9 * linear;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (int k = 0; k <= 100; ++k) {
        std::vector<double> w(n, 0.0);
        w[i] = k / 100.0;
        w[j] = 1.0 - w[i];
        if (!linear_at(w)) return false;
      }
    }
  }
  std::mt19937_64 rng(0x6c696e6561720000ULL);
  for (int k = 0; k < 100; ++k) {
    if (!linear_at(random_simplex_point(n, rng))) return false;
  }
  return true;
}

namespace {

LsSolution solve_least_squares(const ConeBasis& basis, const Rate& rate, const LsOptions& options) {
  const std::size_t n = basis.size();
  const std::vector<AdjustedPriceLine> lines = price_lines(basis, rate, options.pricer);

  auto finish = [&](std::vector<double> x, std::size_t iterations) {
    LsSolution out{std::move(x), {}, {}, {}, Mix::uniform(n), 0.0, iterations, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      if (lines[i].degenerate()) out.x[i] = 0.0;
      out.prices.push_back(lines[i].adjusted(out.x[i]));
      out.standalone.push_back(lines[i].base());
      out.ceilings.push_back(lines[i].ceiling());
      out.norm += out.x[i] * out.x[i];
    }
    const RatioMax worst = max_price_ratio(basis, rate, out.prices, options.pricer);
    out.certificate = worst.argmax;
    out.max_violation = worst.value - 1.0;
    return out;
  };

  std::vector<detail::HalfSpace> cuts;
  if (options.use_shortcuts) {
    if (check_linear_pricing(basis, rate, options.pricer)) {
      return finish(std::vector<double>(n, 0.0), 0);
    }
    if (const std::optional<ConstantMix> constant = check_constant_mix(basis)) {
      cuts.push_back(make_cut(basis, rate, lines, constant->mix.weights(), options.pricer));
    }
  }
  if (options.seed_cuts > 0) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t k = 0; k < options.seed_cuts; ++k) {
      cuts.push_back(make_cut(basis, rate, lines, random_simplex_point(n, rng), options.pricer));
    }
    std::shuffle(cuts.begin(), cuts.end(), rng);
  }

  std::vector<double> x = detail::min_norm_point(cuts, n).point;
  std::size_t stalled = 0;
  std::size_t iteration = 1;
  for (;; ++iteration) {
    const RatioMax worst = big_L(basis, rate, x, options.pricer);
    if (worst.value - 1.0 <= options.ratio_tolerance || stalled >= 5) break;
    if (cuts.size() >= options.max_cuts) {
      throw SolverError("least-squares cutting planes exceeded " + std::to_string(options.max_cuts) +
                        " cuts; worst ratio " + std::to_string(worst.value));
    }
    cuts.push_back(make_cut(basis, rate, lines, worst.argmax.weights(), options.pricer));
    std::vector<double> next = detail::min_norm_point(cuts, n).point;
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) moved = std::max(moved, std::abs(next[i] - x[i]));
    stalled = moved < options.step_tolerance ? stalled + 1 : 0;
    x = std::move(next);
  }

  if (options.polish) {
    // Every single cut's projection is a lower bound on the min norm; if the
    // best one is feasible it is the min-norm point itself.
    auto distance = [&](std::span<const double> w) {
      const detail::HalfSpace cut = make_cut(basis, rate, lines, w, options.pricer);
      return norm_of(project_onto_cut(cut.normal, cut.offset));
    };
    const SimplexOptimum deepest = maximize_on_simplex(distance, n);
    const detail::HalfSpace cut = make_cut(basis, rate, lines, deepest.weights, options.pricer);
    std::vector<double> candidate = project_onto_cut(cut.normal, cut.offset);
    if (big_L(basis, rate, candidate, options.pricer).value - 1.0 <= options.ratio_tolerance) {
      std::optional<std::vector<double>> refined =
          refine_tangent(basis, rate, lines, candidate, deepest.weights, options.pricer);
      double moved = 0.0;
      if (refined) {
        for (std::size_t i = 0; i < n; ++i) moved = std::max(moved, std::abs((*refined)[i] - candidate[i]));
      }
      if (refined && moved <= 1e-4 &&
          big_L(basis, rate, *refined, options.pricer).value - 1.0 <= options.ratio_tolerance) {
        candidate = std::move(*refined);
      }
      x = std::move(candidate);
    }
  }
  return finish(std::move(x), iteration);
}

}  // namespace

LsSolution least_squares_prices(const ConeBasis& basis, const Rate& rate, const LsOptions& options) {
  // Solve on games rescaled to unit expectation. The interpolation
  // coordinates do not depend on scale, so rescaling a basis game changes
  // its price by exactly that factor and the search path not at all.
  const std::size_t n = basis.size();
  std::vector<double> scale(n);
  std::vector<Game> unit;
  unit.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = expectation(basis[i], basis.space());
    scale[i] = e > 0.0 ? e : 1.0;
    unit.push_back(basis[i].scaled(1.0 / scale[i]));
  }
  LsSolution out = solve_least_squares(ConeBasis(basis.space(), std::move(unit)), rate, options);
  std::vector<double> cert(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.prices[i] *= scale[i];
    out.standalone[i] *= scale[i];
    out.ceilings[i] *= scale[i];
    cert[i] = out.certificate[i] / scale[i];
  }
  double total = 0.0;
  for (double c : cert) total += c;
  for (double& c : cert) c /= total;
  out.certificate = Mix(std::move(cert));
  return out;
}

double price_in_cone(const LsSolution& solution, std::span<const double> k) {
  check_length(k, solution.prices.size(), "coefficient vector");
  double total = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!(k[i] >= 0.0)) {
      throw InvariantError("cone coefficients nonnegative", "k[" + std::to_string(i) + "] = " + std::to_string(k[i]));
    }
    any = any || k[i] > 0.0;
    total += k[i] * solution.prices[i];
  }
  if (!any) throw InvariantError("cone point nonzero", "all coefficients are zero");
  return total;
}

std::optional<Mix> find_arbitrage(const ConeBasis& basis, const Rate& rate,
                                  std::span<const double> prices, double tol,
                                  const PricerTolerances& pricer) {
  RatioMax worst = max_price_ratio(basis, rate, prices, pricer);
  if (worst.value > 1.0 + tol) return std::move(worst.argmax);
  return std::nullopt;
}

}  // namespace lsqprice
