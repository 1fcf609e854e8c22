#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "game_spec.hpp"
#include "lsqprice/lsqprice.hpp"
#include "worked_examples.hpp"

namespace lsqprice::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "table";
  bool full_precision = false;
  std::optional<double> rate;
  std::optional<std::string> convention;
  double tol_price = 1e-12;
  double tol_ls = 1e-9;

  std::string file;
  std::string game;
  std::string series;
  std::uint64_t seed = 0;
  std::size_t paths = 1000;
  std::size_t attempts = 1000;
  unsigned threads = 0;
  std::optional<double> price;
  std::optional<double> proportion;
  std::size_t grid = 21;
  std::string x;
  std::string y;
  double strike = 0.0;
  std::string only;
};

class Printer {
 public:
  Printer(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  std::string price(double v) const { return o_.full_precision ? fmt::format("{:.17g}", v) : fmt::format("{:#.4g}", v); }
  std::string share(double v) const { return o_.full_precision ? fmt::format("{:.17g}", v) : fmt::format("{:.3f}", v); }
  std::string stat(double v) const { return o_.full_precision ? fmt::format("{:.17g}", v) : fmt::format("{:.6g}", v); }
  std::string list(std::span<const double> v, bool shares) const {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + (shares ? share(v[i]) : price(v[i]));
    return s + ")";
  }

  bool json_mode() const { return o_.format == "json"; }
  bool csv_mode() const { return o_.format == "csv"; }
  void emit(const json& doc) const { out_ << doc.dump(2) << '\n'; }
  std::ostream& out() const { return out_; }

 private:
  const Options& o_;
  std::ostream& out_;
};

std::string regime_name(Regime r) { return r == Regime::full_investment ? "full" : "interior"; }

PricerTolerances pricer_tolerances(const Options& o) {
  PricerTolerances tol;
  tol.price_rel = o.tol_price;
  tol.proportion = o.tol_price;
  return tol;
}

Rate resolve_rate(const Options& o, const std::optional<Rate>& from_file) {
  const Compounding convention = o.convention ? parse_convention(*o.convention)
                                 : from_file  ? from_file->convention()
                                              : Compounding::continuous;
  if (o.rate) return Rate(*o.rate, convention);
  if (from_file) return Rate(from_file->value(), convention);
  throw UsageError("no interest rate: pass --rate or add \"rate\" to the spec file");
}

GameSpec load(const Options& o) {
  if (o.file.empty()) throw UsageError("missing game-spec file");
  return load_game_spec(o.file);
}

json rate_json(const Rate& rate) {
  return json{{"value", rate.value()}, {"convention", std::string(convention_name(rate.convention()))}};
}

json price_json(const std::string& name, const PriceResult& p) {
  return json{{"game", name},
              {"price", p.price},
              {"proportion", p.proportion},
              {"regime", regime_name(p.regime)},
              {"achieved_growth", p.achieved_growth}};
}

int cmd_price(const Options& o, const Printer& pr) {
  std::vector<std::pair<std::string, PriceResult>> results;
  std::optional<Rate> file_rate;
  if (!o.series.empty()) {
    if (o.series != "st-petersburg") throw UsageError("unknown series game '" + o.series + "'");
    const Rate rate = resolve_rate(o, std::nullopt);
    results.emplace_back(o.series, price_series(SeriesGame::st_petersburg(), rate, {}, pricer_tolerances(o)));
    file_rate = rate;
  } else {
    const GameSpec spec = load(o);
    const Rate rate = resolve_rate(o, spec.rate);
    file_rate = rate;
    for (const auto& [name, game] : spec.games) {
      if (!o.game.empty() && name != o.game) continue;
      results.emplace_back(name, price(game, spec.space, rate, pricer_tolerances(o)));
    }
    if (results.empty()) spec.game(o.game);
  }

  const bool single = results.size() == 1;
  if (pr.json_mode()) {
    json doc = json::array();
    for (const auto& [name, p] : results) {
      json row = price_json(name, p);
      row["rate"] = rate_json(*file_rate);
      doc.push_back(std::move(row));
    }
    pr.emit(single ? doc[0] : doc);
  } else if (pr.csv_mode()) {
    pr.out() << "game,price,proportion,regime,achieved_growth\n";
    for (const auto& [name, p] : results) {
      pr.out() << fmt::format("{},{},{},{},{}\n", name, p.price, p.proportion, regime_name(p.regime), p.achieved_growth);
    }
  } else {
    for (const auto& [name, p] : results) {
      if (!single) pr.out() << name << ": ";
      pr.out() << "u=" << pr.price(p.price) << " t=" << pr.share(p.proportion) << " regime=" << regime_name(p.regime)
               << '\n';
    }
  }
  return kOk;
}

int cmd_ls_price(const Options& o, const Printer& pr) {
  const GameSpec spec = load(o);
  const Rate rate = resolve_rate(o, spec.rate);
  const std::vector<Game> games = spec.all_games();
  const std::size_t n_in = games.size();

  bool reducible = spec.space.is_fair_coin() && spec.space.size() == 2;
  for (const Game& g : games) reducible = reducible && g.min_payoff() > 0.0;

  std::optional<BasisReduction> reduction;
  std::vector<std::size_t> basis_indices;
  std::vector<std::vector<double>> coords;
  if (reducible) {
    reduction = reduce_to_basis(games);
    basis_indices = reduction->basis_indices;
    coords = reduction->coords;
  } else {
    for (std::size_t i = 0; i < n_in; ++i) {
      basis_indices.push_back(i);
      std::vector<double> unit(n_in, 0.0);
      unit[i] = 1.0;
      coords.push_back(std::move(unit));
    }
  }
  const ConeBasis basis = reduction ? reduction->basis : ConeBasis(spec.space, games);

  LsOptions options;
  options.ratio_tolerance = o.tol_ls;
  options.pricer = pricer_tolerances(o);
  const LsSolution s = least_squares_prices(basis, rate, options);

  struct Row {
    std::string name;
    double standalone;
    double ls;
    double ceiling;
    std::optional<double> x;
  };
  std::vector<Row> rows;
  const double g = rate.growth_factor();
  for (std::size_t j = 0; j < n_in; ++j) {
    Row row{spec.games[j].first, 0.0, price_in_cone(s, coords[j]), expectation(games[j], spec.space) / g, {}};
    const auto pos = std::find(basis_indices.begin(), basis_indices.end(), j);
    if (pos != basis_indices.end()) {
      const auto b = static_cast<std::size_t>(pos - basis_indices.begin());
      row.standalone = s.standalone[b];
      row.x = s.x[b];
    } else {
      row.standalone = price(games[j], spec.space, rate, options.pricer).price;
    }
    rows.push_back(std::move(row));
  }

  if (pr.json_mode()) {
    json names = json::array();
    for (std::size_t b : basis_indices) names.push_back(spec.games[b].first);
    json per_game = json::array();
    for (const Row& r : rows) {
      json item{{"game", r.name}, {"standalone", r.standalone}, {"ls_price", r.ls}, {"ceiling", r.ceiling}};
      item["x"] = r.x ? json(*r.x) : json(nullptr);
      per_game.push_back(std::move(item));
    }
    pr.emit(json{{"basis", names},
                 {"x", s.x},
                 {"prices", s.prices},
                 {"certificate", std::vector<double>(s.certificate.weights().begin(), s.certificate.weights().end())},
                 {"iterations", s.iterations},
                 {"max_violation", s.max_violation},
                 {"games", per_game},
                 {"rate", rate_json(rate)}});
  } else if (pr.csv_mode()) {
    pr.out() << "game,standalone,ls_price,ceiling,x\n";
    for (const Row& r : rows) {
      pr.out() << fmt::format("{},{},{},{},{}\n", r.name, r.standalone, r.ls, r.ceiling,
                              r.x ? fmt::format("{}", *r.x) : std::string());
    }
  } else {
    for (const Row& r : rows) {
      pr.out() << r.name << ": u=" << pr.price(r.standalone) << " ls=" << pr.price(r.ls)
               << " ceiling=" << pr.price(r.ceiling);
      if (r.x) pr.out() << " x=" << pr.share(*r.x);
      pr.out() << '\n';
    }
    pr.out() << "certificate=" << pr.list(s.certificate.weights(), true) << " iterations=" << s.iterations
             << " max_violation=" << fmt::format("{:.1e}", s.max_violation) << '\n';
  }
  return kOk;
}

struct Priced {
  GameSpec spec;
  Rate rate;
  Game game;
  double price;
  double proportion;
};

Priced priced_game(const Options& o) {
  GameSpec spec = load(o);
  const Rate rate = resolve_rate(o, spec.rate);
  if (o.game.empty() && spec.games.size() != 1) throw UsageError("--game is required when the file has several games");
  const Game game = o.game.empty() ? spec.games.front().second : spec.game(o.game);
  double u = 0.0;
  double t = 0.0;
  if (o.price) {
    u = *o.price;
    t = o.proportion ? *o.proportion : optimal_proportion(game, spec.space, u, pricer_tolerances(o)).proportion;
  } else {
    const PriceResult p = price(game, spec.space, rate, pricer_tolerances(o));
    u = p.price;
    t = o.proportion ? *o.proportion : p.proportion;
  }
  return Priced{std::move(spec), rate, game, u, t};
}

int cmd_simulate(const Options& o, const Printer& pr) {
  const Priced pg = priced_game(o);
  SimConfig config;
  config.attempts = o.attempts;
  config.paths = o.paths;
  config.seed = o.seed;
  config.threads = o.threads;
  config.price = pg.price;
  config.proportion = pg.proportion;
  const SimReport rep = simulate_growth(pg.game, pg.spec.space, config);
  const double g = pg.rate.growth_factor();

  if (pr.json_mode()) {
    pr.emit(json{{"price", pg.price},
                 {"proportion", pg.proportion},
                 {"attempts", o.attempts},
                 {"paths", o.paths},
                 {"seed", o.seed},
                 {"mean_growth", rep.mean_growth},
                 {"var_growth", rep.var_growth},
                 {"ci_halfwidth", rep.ci_halfwidth},
                 {"failed_paths", rep.failed_paths},
                 {"riskfree_growth", g}});
  } else if (pr.csv_mode()) {
    pr.out() << "price,proportion,mean_growth,var_growth,ci,failed_paths,riskfree_growth\n";
    pr.out() << fmt::format("{},{},{},{},{},{},{}\n", pg.price, pg.proportion, rep.mean_growth, rep.var_growth,
                            rep.ci_halfwidth, rep.failed_paths, g);
  } else {
    pr.out() << "u=" << pr.price(pg.price) << " t=" << pr.share(pg.proportion) << " mean=" << pr.stat(rep.mean_growth)
             << " ci=" << pr.stat(rep.ci_halfwidth) << " var=" << pr.stat(rep.var_growth) << " g=" << pr.stat(g);
    if (rep.failed_paths > 0) pr.out() << " failed=" << rep.failed_paths;
    pr.out() << '\n';
  }
  return kOk;
}

int cmd_sweep(const Options& o, const Printer& pr) {
  const Priced pg = priced_game(o);
  SimConfig config;
  config.attempts = o.attempts;
  config.paths = o.paths;
  config.seed = o.seed;
  config.threads = o.threads;
  const std::vector<SweepRow> rows = sweep_proportion(pg.game, pg.spec.space, pg.price, o.grid, config);
  const std::size_t best = sweep_argmax(rows);

  if (pr.json_mode()) {
    json doc = json::array();
    for (const SweepRow& r : rows) {
      doc.push_back(json{{"t", r.proportion}, {"mean_growth", r.mean_growth}, {"var_growth", r.var_growth},
                         {"ci", r.ci_halfwidth}});
    }
    pr.emit(json{{"price", pg.price}, {"rows", doc}, {"argmax_t", rows[best].proportion}});
  } else if (pr.csv_mode()) {
    pr.out() << "t,mean_growth,var_growth,ci\n";
    for (const SweepRow& r : rows) {
      pr.out() << fmt::format("{},{},{},{}\n", r.proportion, r.mean_growth, r.var_growth, r.ci_halfwidth);
    }
  } else {
    pr.out() << fmt::format("{:>8}  {:>12}  {:>12}  {:>12}\n", "t", "mean_growth", "var_growth", "ci");
    for (const SweepRow& r : rows) {
      pr.out() << fmt::format("{:>8}  {:>12}  {:>12}  {:>12}\n", pr.share(r.proportion), pr.stat(r.mean_growth),
                              pr.stat(r.var_growth), pr.stat(r.ci_halfwidth));
    }
    pr.out() << "argmax t=" << pr.share(rows[best].proportion) << " (pricer t=" << pr.share(pg.proportion) << ")\n";
  }
  return kOk;
}

int cmd_compare_mv(const Options& o, const Printer& pr) {
  const GameSpec spec = load(o);
  const Rate rate = resolve_rate(o, spec.rate);
  if (!spec.space.is_fair_coin()) throw UsageError("compare-mv expects two fair-coin games");
  if (spec.games.size() < 2 && (o.x.empty() || o.y.empty())) throw UsageError("compare-mv needs two games");
  const Game& x = o.x.empty() ? spec.games[0].second : spec.game(o.x);
  const Game& y = o.y.empty() ? spec.games[1].second : spec.game(o.y);
  const FundComparison c = compare_mean_variance(x, y, rate, 1e-8, pricer_tolerances(o));

  const std::vector<std::pair<std::string, double>> fields{
      {"v_x", c.inputs.variance_x},     {"v_y", c.inputs.variance_y},  {"u_x", c.inputs.price_x},
      {"u_y", c.inputs.price_y},        {"r_x", c.inputs.return_x},    {"r_y", c.inputs.return_y},
      {"w_onefund", c.w_onefund},       {"price_onefund", c.price_onefund}, {"w_star", c.w_star},
      {"price_star", c.price_star},     {"t_star", c.t_star},          {"alloc_x", c.allocation.to_x},
      {"alloc_y", c.allocation.to_y},   {"alloc_riskfree", c.allocation.to_riskfree}};

  if (pr.json_mode()) {
    json doc;
    for (const auto& [k, v] : fields) {
      if (k.rfind("alloc_", 0) != 0) doc[k] = v;
    }
    doc["allocation"] = json{{"x", c.allocation.to_x}, {"y", c.allocation.to_y}, {"riskfree", c.allocation.to_riskfree}};
    doc["rate"] = rate_json(rate);
    pr.emit(doc);
  } else if (pr.csv_mode()) {
    pr.out() << "quantity,value\n";
    for (const auto& [k, v] : fields) pr.out() << fmt::format("{},{}\n", k, v);
  } else {
    for (const auto& [k, v] : fields) {
      const bool is_price = k.rfind("u_", 0) == 0 || k.rfind("price_", 0) == 0;
      pr.out() << fmt::format("{:<15}", k) << (is_price ? pr.price(v) : pr.stat(v)) << '\n';
    }
  }
  return kOk;
}

int cmd_parity(const Options& o, const Printer& pr) {
  const GameSpec spec = load(o);
  const Rate rate = resolve_rate(o, spec.rate);
  if (o.game.empty() && spec.games.size() != 1) throw UsageError("--game is required when the file has several games");
  const Game& s = o.game.empty() ? spec.games.front().second : spec.game(o.game);
  LsOptions options;
  options.ratio_tolerance = o.tol_ls;
  options.pricer = pricer_tolerances(o);
  const ParityReport r = put_call_parity(s, spec.space, o.strike, rate, options);

  if (pr.json_mode()) {
    json doc{{"strike", r.strike}, {"degenerate", r.degenerate}};
    if (r.degenerate) {
      doc["reason"] = r.reason;
    } else {
      doc.update(json{{"put", r.put},
                      {"call", r.call},
                      {"capped", r.capped},
                      {"underlying", r.underlying},
                      {"discounted_strike", r.discounted_strike},
                      {"residual", r.residual},
                      {"within_tolerance", r.within_tolerance},
                      {"dropped", r.dropped}});
    }
    pr.emit(doc);
  } else if (pr.csv_mode()) {
    pr.out() << "strike,put,call,capped,underlying,discounted_strike,residual,within_tolerance\n";
    pr.out() << fmt::format("{},{},{},{},{},{},{},{}\n", r.strike, r.put, r.call, r.capped, r.underlying,
                            r.discounted_strike, r.residual, r.within_tolerance);
  } else if (r.degenerate) {
    pr.out() << "degenerate: " << r.reason << '\n';
  } else {
    pr.out() << "put=" << pr.price(r.put) << " call=" << pr.price(r.call) << " capped=" << pr.price(r.capped)
             << " K/g=" << pr.price(r.discounted_strike) << " residual=" << fmt::format("{:.1e}", r.residual)
             << (r.within_tolerance ? " ok" : " MISMATCH") << '\n';
  }
  return r.degenerate || r.within_tolerance ? kOk : kSolverError;
}

int cmd_worked_examples(const Options& o, const Printer& pr) {
  if (!o.only.empty()) {
    const std::vector<std::string> ids = example_ids();
    if (std::find(ids.begin(), ids.end(), o.only) == ids.end()) {
      std::string known;
      for (const std::string& id : ids) known += (known.empty() ? "" : ", ") + id;
      throw UsageError("unknown example '" + o.only + "'; known: " + known);
    }
  }
  const std::vector<ExampleResult> results = run_examples(o.only);
  const bool all_pass = std::all_of(results.begin(), results.end(), [](const ExampleResult& r) { return r.pass; });

  if (pr.json_mode()) {
    json doc = json::array();
    for (const ExampleResult& r : results) {
      doc.push_back(json{{"id", r.id},
                         {"criterion", r.criterion},
                         {"title", r.title},
                         {"expected", r.expected},
                         {"computed", r.computed},
                         {"pass", r.pass},
                         {"details", r.details},
                         {"seconds", r.seconds}});
    }
    pr.emit(doc);
  } else if (pr.csv_mode()) {
    pr.out() << "id,criterion,pass,expected,computed,seconds\n";
    auto quote = [](std::string s) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    for (const ExampleResult& r : results) {
      pr.out() << fmt::format("{},{},{},{},{},{:.3f}\n", r.id, r.criterion, r.pass ? "PASS" : "FAIL",
                              quote(r.expected), quote(r.computed), r.seconds);
    }
  } else {
    for (const ExampleResult& r : results) {
      pr.out() << fmt::format("{} {:<18} [{}] {}\n", r.pass ? "PASS" : "FAIL", r.id, r.criterion, r.title);
      pr.out() << "    expected: " << r.expected << "\n    computed: " << r.computed
               << fmt::format("  ({:.2f} s)\n", r.seconds);
      for (const std::string& d : r.details) pr.out() << "      " << d << '\n';
    }
    const auto passed = std::count_if(results.begin(), results.end(), [](const ExampleResult& r) { return r.pass; });
    pr.out() << passed << "/" << results.size() << " passed\n";
  }
  return all_pass ? kOk : kExampleFailed;
}

CLI::Validator positive_tolerance() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          return "not a number: " + s;
        }
        return v > 0.0 && v <= 1e-2 ? std::string() : "tolerance must lie in (0, 1e-2]";
      },
      "(0, 1e-2]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Growth-rate and least-squares pricing of finite games", "lsqprice"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_flag("--full-precision", o.full_precision, "Print 17 significant digits");
  app.add_option("--rate", o.rate, "Interest rate per period (overrides the spec file)");
  app.add_option("--convention", o.convention, "Compounding convention")
      ->check(CLI::IsMember({"continuous", "simple"}));
  app.add_option("--tol-price", o.tol_price, "Relative bracket width of the pricer")->check(positive_tolerance());
  app.add_option("--tol-ls", o.tol_ls, "Ratio tolerance of the least-squares solver")->check(positive_tolerance());

  auto add_file = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("spec", o.file, "Game-spec JSON file");
    if (required) opt->required();
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--game", o.game, "Game name");
    sub->add_option("--price", o.price, "Purchase price (default: growth-rate price)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--paths", o.paths, "Independent paths")->check(CLI::PositiveNumber);
    sub->add_option("--attempts", o.attempts, "Attempts per path")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
    add_file(sub, true);
  };

  CLI::App* price_cmd = app.add_subcommand("price", "Growth-rate price of a game");
  price_cmd->add_option("--game", o.game, "Game name (default: every game in the file)");
  price_cmd->add_option("--series", o.series, "Price a built-in series game instead (st-petersburg)");
  add_file(price_cmd, false);

  CLI::App* ls_cmd = app.add_subcommand("ls-price", "Least-squares prices of every game in the file");
  add_file(ls_cmd, true);

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo growth rate at a price and proportion");
  add_sim(sim_cmd);
  sim_cmd->add_option("--proportion", o.proportion, "Proportion of capital staked (default: optimal)")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Empirical growth curve over the proportion");
  add_sim(sweep_cmd);
  sweep_cmd->add_option("--grid", o.grid, "Grid points in [0, min(1, t_max)]")->check(CLI::Range(3, 100000));

  CLI::App* mv_cmd = app.add_subcommand("compare-mv", "Mean-variance one-fund weight vs growth-optimal fund");
  mv_cmd->add_option("--x", o.x, "First game (default: first in file)");
  mv_cmd->add_option("--y", o.y, "Second game (default: second in file)");
  add_file(mv_cmd, true);

  CLI::App* parity_cmd = app.add_subcommand("parity", "Put-call parity under least-squares prices");
  parity_cmd->add_option("--game", o.game, "Underlying game");
  parity_cmd->add_option("--strike", o.strike, "Strike K")->required();
  add_file(parity_cmd, true);

  CLI::App* examples_cmd = app.add_subcommand("paper-examples", "Reproduce the worked examples");
  examples_cmd->add_option("--only", o.only, "Run a single example id");

  std::vector<const char*> argv{"lsqprice"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  const Printer printer(o, out);
  try {
    if (price_cmd->parsed()) return cmd_price(o, printer);
    if (ls_cmd->parsed()) return cmd_ls_price(o, printer);
    if (sim_cmd->parsed()) return cmd_simulate(o, printer);
    if (sweep_cmd->parsed()) return cmd_sweep(o, printer);
    if (mv_cmd->parsed()) return cmd_compare_mv(o, printer);
    if (parity_cmd->parsed()) return cmd_parity(o, printer);
    return cmd_worked_examples(o, printer);
  } catch (const SpecParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kParseError;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const BasisError& e) {
    err << "basis error: " << e.what() << '\n';
    return kBasisError;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace lsqprice::cli
