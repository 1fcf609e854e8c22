#include "worked_examples.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "lsqprice/lsqprice.hpp"

namespace lsqprice::cli {

namespace {

const Rate kRate = Rate::continuous(0.05);

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

std::string pair_text(std::span<const double> v, int digits) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{:.{}f}", v[i], digits);
  }
  return out + ")";
}

ConeBasis coin_basis(std::initializer_list<std::pair<double, double>> games) {
  std::vector<Game> out;
  for (const auto& [a, b] : games) out.emplace_back(std::vector<double>{a, b});
  return ConeBasis(OutcomeSpace::fair_coin(), std::move(out));
}

ConeBasis three_outcome_basis() {
  return ConeBasis(OutcomeSpace({0.3, 0.3, 0.4}),
                   {Game({2, 5, 12}), Game({6, 3, 1}), Game({1, 4, 9})});
}

double random_in(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) total += (x = exp1(rng) + 1e-3);
  for (double& x : w) x /= total;
  return w;
}

OutcomeSpace random_space(std::mt19937_64& rng, std::size_t m) {
  if (m == 2 && rng() % 2 == 0) return OutcomeSpace::fair_coin();
  return OutcomeSpace(random_simplex(rng, m));
}

Game random_game(std::mt19937_64& rng, std::size_t m, bool allow_zero) {
  std::vector<double> a(m);
  for (double& x : a) x = random_in(rng, 0.5, 50.0);
  if (allow_zero && rng() % 4 == 0) a[rng() % m] = 0.0;
  return Game(std::move(a));
}

Rate random_rate(std::mt19937_64& rng) {
  const double r = random_in(rng, 0.005, 0.2);
  return rng() % 2 == 0 ? Rate::continuous(r) : Rate::simple(r);
}

PropertyCheck make_check(std::string name, std::size_t failures, std::size_t trials, std::string extra = {}) {
  std::string detail = fmt::format("{}/{} ok", trials - failures, trials);
  if (!extra.empty()) detail += ", " + extra;
  return {std::move(name), failures == 0, std::move(detail)};
}

PropertyCheck check_homogeneity() {
  std::mt19937_64 rng(101);
  std::size_t failures = 0;
  double worst = 0.0;
  const std::size_t trials = 200;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = 2 + rng() % 4;
    const OutcomeSpace space = random_space(rng, m);
    const Game a = random_game(rng, m, true);
    const Rate rate = random_rate(rng);
    const double scale = random_in(rng, 0.01, 100.0);
    const PriceResult base = price(a, space, rate);
    const PriceResult scaled = price(a.scaled(scale), space, rate);
    const double rel = std::abs(scaled.price - scale * base.price) / (scale * base.price);
    worst = std::max(worst, rel);
    if (rel > 1e-9 || std::abs(scaled.proportion - base.proportion) > 1e-9) ++failures;
  }
  return make_check("homogeneity", failures, trials, fmt::format("worst rel {:.1e}", worst));
}

PropertyCheck check_am_gm() {
  std::mt19937_64 rng(102);
  std::size_t failures = 0;
  const std::size_t trials = 500;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = 2 + rng() % 4;
    const OutcomeSpace space = random_space(rng, m);
    Game a = random_game(rng, m, true);
    if (k % 10 == 0) a = Game(std::vector<double>(m, random_in(rng, 0.5, 50.0)));
    const double e = expectation(a, space);
    const double gm = geometric_mean(a, space);
    const double hm = harmonic_mean(a, space);
    bool ok = hm <= gm * (1 + 1e-12) && gm <= e * (1 + 1e-12);
    if (!a.is_constant()) ok = ok && gm < e;
    if (!ok) ++failures;
  }
  return make_check("AM-GM bound", failures, trials);
}

PropertyCheck check_sandwich_and_foc(bool foc) {
  std::mt19937_64 rng(foc ? 104 : 103);
  std::size_t failures = 0;
  std::size_t interior = 0;
  double worst = 0.0;
  const std::size_t trials = 300;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = 2 + rng() % 5;
    const OutcomeSpace space = random_space(rng, m);
    const Game a = random_game(rng, m, true);
    const Rate rate = random_rate(rng);
    const double g = rate.growth_factor();
    const PriceResult p = price(a, space, rate);
    if (!foc) {
      bool ok = p.price > 0.0 && p.price <= expectation(a, space) / g * (1 + 1e-12);
      if (p.regime == Regime::full_investment) {
        ok = ok && within(p.price, geometric_mean(a, space) / g, 1e-12 * p.price);
      }
      if (!ok) ++failures;
      continue;
    }
    if (p.regime != Regime::interior) continue;
    ++interior;
    const double residual = std::abs(growth_derivative(a, space, p.price, p.proportion));
    const double growth_gap = std::abs(expected_log_growth(a, space, p.price, p.proportion) - std::log(g));
    worst = std::max({worst, residual, growth_gap});
    if (residual >= 1e-8 || growth_gap >= 1e-8) ++failures;
  }
  if (!foc) return make_check("price sandwich 0 < u <= E/g", failures, trials);
  return make_check("first-order condition", failures, interior, fmt::format("worst residual {:.1e}", worst));
}

PropertyCheck check_closed_form() {
  std::mt19937_64 rng(105);
  std::size_t failures = 0;
  double worst = 0.0;
  const std::size_t trials = 1000;
  const OutcomeSpace coin = OutcomeSpace::fair_coin();
  for (std::size_t k = 0; k < trials; ++k) {
    const double a = random_in(rng, 0.1, 100.0);
    const double b = random_in(rng, 0.1, 100.0);
    const Rate rate = random_rate(rng);
    const PriceResult closed = price_two_outcome_fair(a, b, rate);
    const PriceResult general = price_general(Game({a, b}), coin, rate);
    const double rel = std::abs(closed.price - general.price) / closed.price;
    const double dt = std::abs(closed.proportion - general.proportion);
    worst = std::max({worst, rel, dt});
    if (rel > 1e-8 || dt > 1e-8 || closed.regime != general.regime) ++failures;
  }
  return make_check("closed form vs numeric", failures, trials, fmt::format("worst {:.1e}", worst));
}

PropertyCheck check_concavity() {
  std::mt19937_64 rng(106);
  std::size_t failures = 0;
  const std::size_t trials = 300;
  for (std::size_t k = 0; k < trials; ++k) {
    const bool coin = k % 2 == 0;
    const std::size_t m = coin ? 2 : 3;
    const std::size_t n = coin ? 2 : 3;
    const OutcomeSpace space = coin ? OutcomeSpace::fair_coin() : random_space(rng, m);
    std::vector<Game> games;
    for (std::size_t i = 0; i < n; ++i) games.push_back(random_game(rng, m, false));
    const ConeBasis basis(space, games);
    const Rate rate = random_rate(rng);
    const std::vector<double> p = random_simplex(rng, n);
    const std::vector<double> q = random_simplex(rng, n);
    const double alpha = random_in(rng, 0.0, 1.0);
    std::vector<double> mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = alpha * p[i] + (1 - alpha) * q[i];
    const double up = price(mix_game(basis, Mix(p)), space, rate).price;
    const double uq = price(mix_game(basis, Mix(q)), space, rate).price;
    const double um = price(mix_game(basis, Mix(mid)), space, rate).price;
    const double chord = alpha * up + (1 - alpha) * uq;
    if (um < chord - 1e-9 * chord) ++failures;
  }
  return make_check("concavity in mix", failures, trials);
}

struct SolvedBasis {
  std::string name;
  ConeBasis basis;
  LsSolution solution;
};

std::vector<SolvedBasis> solved_bases() {
  std::vector<SolvedBasis> out;
  auto add = [&](std::string name, ConeBasis basis) {
    LsSolution s = least_squares_prices(basis, kRate);
    out.push_back({std::move(name), std::move(basis), std::move(s)});
  };
  add("constant-mix", coin_basis({{19, 1}, {4, 16}}));
  add("linear", coin_basis({{19, 1}, {16, 4}}));
  add("concave", coin_basis({{12, 8}, {11, 9}}));
  add("three-outcome", three_outcome_basis());
  return out;
}

PropertyCheck check_arbitrage_free(const std::vector<SolvedBasis>& bases) {
  std::mt19937_64 rng(107);
  std::size_t failures = 0;
  double worst = -1.0;
  const std::size_t trials = 500;
  for (std::size_t k = 0; k < trials; ++k) {
    const SolvedBasis& sb = bases[k % bases.size()];
    const std::size_t n = sb.basis.size();
    std::vector<double> coeff = random_simplex(rng, n);
    if (rng() % 5 == 0) coeff[rng() % n] = 0.0;
    const double scale = random_in(rng, 0.1, 10.0);
    for (double& c : coeff) c *= scale;
    std::vector<double> payoff(sb.basis.space().size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < payoff.size(); ++j) payoff[j] += coeff[i] * sb.basis[i][j];
    }
    const double standalone = price(Game(payoff), sb.basis.space(), kRate).price;
    const double linear = price_in_cone(sb.solution, coeff);
    const double excess = (standalone - linear) / linear;
    worst = std::max(worst, excess);
    if (excess > 1e-7) ++failures;
  }
  return make_check("arbitrage-free cone sweep", failures, trials, fmt::format("max excess {:.1e}", worst));
}

PropertyCheck check_minimality(const std::vector<SolvedBasis>& bases) {
  std::mt19937_64 rng(108);
  std::size_t failures = 0;
  const std::size_t trials = 100;
  for (std::size_t k = 0; k < trials; ++k) {
    const SolvedBasis& sb = bases[k % bases.size()];
    std::vector<double> lowered = sb.solution.prices;
    const std::size_t i = rng() % lowered.size();
    lowered[i] -= random_in(rng, 1e-4, 1e-2) * lowered[i];
    if (!find_arbitrage(sb.basis, kRate, lowered)) ++failures;
  }
  return make_check("minimality probe", failures, trials);
}

PropertyCheck check_uniqueness(const std::vector<SolvedBasis>& bases) {
  std::size_t failures = 0;
  double worst = 0.0;
  std::size_t runs = 0;
  for (const SolvedBasis& sb : bases) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      LsOptions options;
      options.use_shortcuts = false;
      options.seed_cuts = 6;
      options.seed = seed;
      const LsSolution s = least_squares_prices(sb.basis, kRate, options);
      double diff = 0.0;
      for (std::size_t i = 0; i < s.x.size(); ++i) diff = std::max(diff, std::abs(s.x[i] - sb.solution.x[i]));
      worst = std::max(worst, diff);
      ++runs;
      if (diff > 1e-7) ++failures;
    }
  }
  return make_check("min-norm uniqueness", failures, runs, fmt::format("max spread {:.1e}", worst));
}

using Clock = std::chrono::steady_clock;

ExampleResult make_row(std::string id, int criterion, std::string title) {
  ExampleResult r;
  r.id = std::move(id);
  r.criterion = criterion;
  r.title = std::move(title);
  return r;
}

ExampleResult game_a() {
  const PriceResult p = price(Game({19, 1}), OutcomeSpace::fair_coin(), kRate);
  const double kappa = KappaContext(kRate).kappa();
  ExampleResult r = make_row("game-a", 1, "two-outcome closed form, A = (19, 1), r = 0.05");
  r.expected = "u = 7.224, t = 0.274, kappa = 0.3458";
  r.computed = fmt::format("u = {:.6f}, t = {:.6f}, kappa = {:.6f}", p.price, p.proportion, kappa);
  r.pass = within(p.price, 7.224, 5e-4) && within(p.proportion, 0.274, 5e-4) && within(kappa, 0.3458, 5e-5);
  return r;
}

ExampleResult game_b() {
  const PriceResult p = price(Game({10, 10}), OutcomeSpace::fair_coin(), kRate);
  ExampleResult r = make_row("game-b", 2, "riskless game B = (10, 10), r = 0.05");
  r.expected = "u = 9.512, t = 1 exactly";
  r.computed = fmt::format("u = {:.6f}, t = {}", p.price, p.proportion);
  r.pass = within(p.price, 9.512, 5e-4) && p.proportion == 1.0;
  return r;
}

ExampleResult cone_constant_mix() {
  const ConeBasis basis = coin_basis({{19, 1}, {4, 16}});
  const LsSolution s = least_squares_prices(basis, kRate);
  const double ceiling = 10.0 / kRate.growth_factor();
  const double tight_gap = std::abs(price(mix_game(basis, s.certificate), basis.space(), kRate).price -
                                    (s.certificate[0] * s.prices[0] + s.certificate[1] * s.prices[1]));
  ExampleResult r = make_row("cone-constant-mix", 3, "cone of (19, 1) and (4, 16)");
  r.expected = fmt::format("both prices 10/e^0.05 = {:.6f}, certificate (0.4, 0.6) or tight", ceiling);
  r.computed = fmt::format("prices {}, certificate {}", pair_text(s.prices, 6), pair_text(s.certificate.weights(), 4));
  r.pass = within(s.prices[0], ceiling, 1e-4) && within(s.prices[1], ceiling, 1e-4) &&
           (within(s.certificate[0], 0.4, 1e-3) || tight_gap <= 1e-7 * ceiling);
  return r;
}

ExampleResult cone_linear() {
  const ConeBasis basis = coin_basis({{19, 1}, {16, 4}});
  const LsSolution s = least_squares_prices(basis, kRate);
  ExampleResult r = make_row("cone-linear", 4, "cone of (19, 1) and (16, 4)");
  r.expected = "prices 7.224 / 8.149, x = (0, 0)";
  r.computed = fmt::format("prices {}, x {}", pair_text(s.prices, 6), pair_text(s.x, 8));
  r.pass = within(s.prices[0], 7.224, 5e-4) && within(s.prices[1], 8.149, 5e-4) && within(s.x[0], 0.0, 1e-6) &&
           within(s.x[1], 0.0, 1e-6);
  return r;
}

ExampleResult cone_concave() {
  const ConeBasis basis = coin_basis({{12, 8}, {11, 9}});
  const LsSolution s = least_squares_prices(basis, kRate);
  ExampleResult r = make_row("cone-concave", 5, "cone of (12, 8) and (11, 9)");
  r.expected = "prices 9.345 / 9.469, u_i < ls_i < E_i/g";
  r.computed = fmt::format("prices {}, stand-alone {}, ceilings {}", pair_text(s.prices, 6),
                           pair_text(s.standalone, 6), pair_text(s.ceilings, 6));
  r.pass = within(s.prices[0], 9.345, 1e-3) && within(s.prices[1], 9.469, 1e-3);
  for (std::size_t i = 0; i < 2; ++i) {
    r.pass = r.pass && s.standalone[i] < s.prices[i] && s.prices[i] < s.ceilings[i];
  }
  return r;
}

ExampleResult st_petersburg() {
  const SeriesGame game = SeriesGame::st_petersburg();
  const SeriesTruncation cut = truncate_series(game);
  const PriceResult p = price_series(game, kRate);
  ExampleResult r = make_row("st-petersburg", 6, "St. Petersburg game, r = 0.05");
  r.expected = "u = 4.816, t = 0.204";
  r.computed = fmt::format("u = {:.6f}, t = {:.6f} ({} terms, tail bound {:.1e})", p.price, p.proportion, cut.terms,
                           cut.error_bound);
  r.pass = within(p.price, 4.816, 1e-3) && within(p.proportion, 0.204, 1e-3);
  return r;
}

FundComparison independent_coins() {
  return compare_mean_variance(Game({50, 1}), Game({30.6191, 14}), Rate::simple(0.02));
}

ExampleResult mv_prices() {
  const FundComparison c = independent_coins();
  ExampleResult r = make_row("mv-prices", 7, "X = (50, 1), Y = (30.6191, 14), r = 0.02 simple");
  r.expected = "u_X = u_Y = 20.6721";
  r.computed = fmt::format("u_X = {:.6f}, u_Y = {:.6f}", c.inputs.price_x, c.inputs.price_y);
  r.pass = within(c.inputs.price_x, 20.6721, 1e-3) && within(c.inputs.price_y, 20.6721, 1e-3);
  return r;
}

ExampleResult mv_one_fund() {
  const FundComparison c = independent_coins();
  ExampleResult r = make_row("mv-one-fund", 7, "mean-variance one-fund weight and its price");
  r.expected = "w = 0.2932, price = 21.3995";
  r.computed = fmt::format("w = {:.6f}, price = {:.6f}", c.w_onefund, c.price_onefund);
  r.pass = within(c.w_onefund, 0.2932, 1e-3) && within(c.price_onefund, 21.3995, 1e-3);
  return r;
}

ExampleResult mv_best_fund() {
  const FundComparison c = independent_coins();
  ExampleResult r = make_row("mv-best-fund", 7, "growth-price maximizing fund");
  r.expected = "w* = 0.3514, price = 21.4134";
  r.computed = fmt::format("w* = {:.6f}, price = {:.6f}", c.w_star, c.price_star);
  r.pass = within(c.w_star, 0.3514, 1e-3) && within(c.price_star, 21.4134, 1e-3);
  return r;
}

ExampleResult mv_allocation() {
  const FundComparison c = independent_coins();
  const std::vector<double> alloc{c.allocation.to_x, c.allocation.to_y, c.allocation.to_riskfree};
  ExampleResult r = make_row("mv-allocation", 7, "split across X, Y and the risk-free asset");
  r.expected = "(0.1484, 0.2738, 0.5778)";
  r.computed = pair_text(alloc, 6);
  r.pass = within(alloc[0], 0.1484, 1e-3) && within(alloc[1], 0.2738, 1e-3) && within(alloc[2], 0.5778, 1e-3);
  return r;
}

ExampleResult parity() {
  std::mt19937_64 rng(109);
  const std::size_t instances = 50;
  std::size_t failures = 0;
  double worst = 0.0;
  std::size_t done = 0;
  while (done < instances) {
    const std::size_t m = done % 3 == 2 ? 3 : 2;
    const OutcomeSpace space = m == 2 ? OutcomeSpace::fair_coin() : random_space(rng, m);
    std::vector<double> s(m);
    for (double& v : s) v = random_in(rng, 1.0, 30.0);
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    if (*hi - *lo < 1.0) continue;
    const double strike = random_in(rng, *lo + 0.2, *hi - 0.2);
    const bool near_payoff =
        std::any_of(s.begin(), s.end(), [&](double v) { return std::abs(v - strike) < 0.1; });
    if (near_payoff) continue;
    const Rate rate = Rate::continuous(random_in(rng, 0.01, 0.1));
    const ParityReport report = put_call_parity(Game(s), space, strike, rate);
    ++done;
    const double rel = std::abs(report.residual) / strike;
    worst = std::max(worst, rel);
    if (report.degenerate || !(rel < 1e-7)) ++failures;
  }
  ExampleResult r = make_row("put-call-parity", 8, "parity residual on random (S, K)");
  r.expected = fmt::format("|residual| < 1e-7 K on {} instances", instances);
  r.computed = fmt::format("{}/{} ok, worst |residual|/K = {:.1e}", instances - failures, instances, worst);
  r.pass = failures == 0;
  return r;
}

ExampleResult property_suite() {
  ExampleResult r = make_row("property-suite", 9, "invariants on randomized inputs");
  const std::vector<PropertyCheck> checks = run_property_suite();
  std::size_t ok = 0;
  for (const PropertyCheck& c : checks) {
    ok += c.pass ? 1 : 0;
    r.details.push_back(fmt::format("{} {}: {}", c.pass ? "PASS" : "FAIL", c.name, c.detail));
  }
  r.expected = fmt::format("all {} checks hold", checks.size());
  r.computed = fmt::format("{}/{} hold", ok, checks.size());
  r.pass = ok == checks.size();
  return r;
}

ExampleResult sim_deterministic() {
  const Game b({10, 10});
  const PriceResult p = price(b, OutcomeSpace::fair_coin(), kRate);
  SimConfig config;
  config.attempts = 1000;
  config.paths = 200;
  config.seed = 7;
  config.price = p.price;
  config.proportion = p.proportion;
  const SimReport rep = simulate_growth(b, OutcomeSpace::fair_coin(), config);
  const double g = kRate.growth_factor();
  ExampleResult r = make_row("sim-deterministic", 10, "game B held at its price");
  r.expected = fmt::format("growth {:.12f} on every path", g);
  r.computed = fmt::format("mean {:.12f}, variance {:.1e}", rep.mean_growth, rep.var_growth);
  r.pass = within(rep.mean_growth, g, 1e-12 * g) && rep.var_growth <= 1e-24 && rep.failed_paths == 0;
  return r;
}

ExampleResult sim_growth_limit() {
  const Game a({19, 1});
  SimConfig config;
  config.paths = 1000;
  config.seed = 1;
  config.price = 7.224;
  config.proportion = 0.274;
  config.attempts = 10'000;
  const SimReport long_run = simulate_growth(a, OutcomeSpace::fair_coin(), config);
  config.attempts = 100;
  const SimReport short_run = simulate_growth(a, OutcomeSpace::fair_coin(), config);
  const double g = kRate.growth_factor();
  const double decay = long_run.var_growth / short_run.var_growth;
  ExampleResult r = make_row("sim-growth-limit", 10, "game A at (7.224, 0.274), 1000 paths");
  r.expected = fmt::format("mean within 3 CI of {:.6f}, variance ratio N=10000 vs N=100 <= 0.1", g);
  r.computed = fmt::format("mean {:.6f} +- {:.1e}, ratio {:.4f}", long_run.mean_growth, long_run.ci_halfwidth, decay);
  r.pass = std::abs(long_run.mean_growth - g) <= 3.0 * long_run.ci_halfwidth && decay <= 0.1;
  return r;
}

struct Row {
  const char* id;
  int criterion;
  std::function<ExampleResult()> run;
};

const std::vector<Row>& rows() {
  static const std::vector<Row> table{
      {"game-a", 1, game_a},
      {"game-b", 2, game_b},
      {"cone-constant-mix", 3, cone_constant_mix},
      {"cone-linear", 4, cone_linear},
      {"cone-concave", 5, cone_concave},
      {"st-petersburg", 6, st_petersburg},
      {"mv-prices", 7, mv_prices},
      {"mv-one-fund", 7, mv_one_fund},
      {"mv-best-fund", 7, mv_best_fund},
      {"mv-allocation", 7, mv_allocation},
      {"put-call-parity", 8, parity},
      {"property-suite", 9, property_suite},
      {"sim-deterministic", 10, sim_deterministic},
      {"sim-growth-limit", 10, sim_growth_limit},
  };
  return table;
}

}  // namespace

std::vector<PropertyCheck> run_property_suite() {
  std::vector<PropertyCheck> out;
  out.push_back(check_homogeneity());
  out.push_back(check_am_gm());
  out.push_back(check_sandwich_and_foc(false));
  out.push_back(check_sandwich_and_foc(true));
  out.push_back(check_closed_form());
  out.push_back(check_concavity());
  const std::vector<SolvedBasis> bases = solved_bases();
  out.push_back(check_arbitrage_free(bases));
  out.push_back(check_minimality(bases));
  out.push_back(check_uniqueness(bases));
  return out;
}

std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const Row& row : rows()) ids.emplace_back(row.id);
  return ids;
}

std::vector<ExampleResult> run_examples(std::string_view only) {
  std::vector<ExampleResult> out;
  for (const Row& row : rows()) {
    if (!only.empty() && only != row.id) continue;
    const auto start = Clock::now();
    ExampleResult result;
    try {
      result = row.run();
    } catch (const std::exception& e) {
      result.id = row.id;
      result.criterion = row.criterion;
      result.computed = std::string("error: ") + e.what();
      result.pass = false;
    }
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace lsqprice::cli
