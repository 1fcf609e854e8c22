#include "lsqprice/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "lsqprice/pricer.hpp"

namespace lsqprice {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void validate(const Game& game, const OutcomeSpace& space, const SimConfig& config) {
  check_aligned(game, space);
  if (config.attempts == 0 || config.paths == 0) {
    throw InvariantError("simulation sizes positive", "attempts and paths must be >= 1");
  }
  if (!(config.price > 0.0)) {
    throw InvariantError("price positive", "u = " + std::to_string(config.price));
  }
  if (!(config.proportion >= 0.0 && config.proportion <= 1.0)) {
    throw InvariantError("proportion in [0,1]", "t = " + std::to_string(config.proportion));
  }
}

}  // namespace

SimReport simulate_growth(const Game& game, const OutcomeSpace& space, const SimConfig& config) {
  validate(game, space, config);
  const std::size_t m = space.size();

  std::vector<double> cdf(m);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += space[j];
    cdf[j] = acc;
  }
  cdf.back() = 1.0;

  std::vector<double> log_factor(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double factor = 1.0 + config.proportion * (game[j] - config.price) / config.price;
    log_factor[j] = factor > 0.0 ? std::log(factor) : -std::numeric_limits<double>::infinity();
  }

  const double inv_n = 1.0 / static_cast<double>(config.attempts);
  std::vector<double> growth(config.paths);

  auto run_paths = [&](std::size_t begin, std::size_t end) {
    for (std::size_t path = begin; path < end; ++path) {
      std::mt19937_64 engine(splitmix64(config.seed ^ splitmix64(path + 1)));
      double log_capital = 0.0;
      for (std::size_t k = 0; k < config.attempts; ++k) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        const auto j = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        log_capital += log_factor[std::min(j, m - 1)];
      }
      growth[path] = std::exp(log_capital * inv_n);
    }
  };

  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.paths));
  if (threads <= 1) {
    run_paths(0, config.paths);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (config.paths + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(config.paths, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(run_paths, begin, end);
    }
    for (std::thread& t : workers) t.join();
  }

  // Aggregate in path order so the result does not depend on scheduling.
  CompensatedSum total;
  std::size_t ok = 0;
  for (double g : growth) {
    if (g > 0.0) {
      total.add(g);
      ++ok;
    }
  }
  SimReport report{0.0, 0.0, 0.0, config.paths - ok};
  if (ok == 0) return report;
  report.mean_growth = total.value() / static_cast<double>(ok);
  if (ok > 1) {
    CompensatedSum squares;
    for (double g : growth) {
      if (g > 0.0) squares.add((g - report.mean_growth) * (g - report.mean_growth));
    }
    report.var_growth = squares.value() / static_cast<double>(ok - 1);
    report.ci_halfwidth = kZ95 * std::sqrt(report.var_growth / static_cast<double>(ok));
  }
  return report;
}

std::vector<SweepRow> sweep_proportion(const Game& game, const OutcomeSpace& space, double price,
                                       std::size_t grid, SimConfig config) {
  if (grid < 3) {
    throw InvariantError("sweep grid >= 3", "grid = " + std::to_string(grid));
  }
  config.price = price;
  const double t_max = log_domain_limit(game, price);
  const double t_hi = t_max > 1.0 ? 1.0 : t_max * (1.0 - 1e-9);
  std::vector<SweepRow> rows;
  rows.reserve(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    config.proportion = t_hi * static_cast<double>(k) / static_cast<double>(grid - 1);
    const SimReport r = simulate_growth(game, space, config);
    rows.push_back({config.proportion, r.mean_growth, r.var_growth, r.ci_halfwidth});
  }
  return rows;
}

std::size_t sweep_argmax(const std::vector<SweepRow>& rows) {
  const auto it = std::max_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.mean_growth < b.mean_growth;
  });
  return static_cast<std::size_t>(it - rows.begin());
}

}  // namespace lsqprice
