#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lsqprice/core.hpp"

namespace lsqprice {

/// Repeated proportional investment: each attempt stakes `proportion` of the
/// current capital on a game bought at `price`.
struct SimConfig {
  std::size_t attempts = 1000;
  std::size_t paths = 1000;
  std::uint64_t seed = 0;
  double price = 1.0;
  double proportion = 0.0;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Statistics of the per-path growth rate c_N^(1/N).
struct SimReport {
  double mean_growth;
  double var_growth;
  /// 95% normal-approximation half-width on mean_growth.
  double ci_halfwidth;
  std::size_t failed_paths;
};

/// Bit-identical for a fixed seed regardless of the thread count.
SimReport simulate_growth(const Game& game, const OutcomeSpace& space, const SimConfig& config);

struct SweepRow {
  double proportion;
  double mean_growth;
  double var_growth;
  double ci_halfwidth;
};

/// Empirical growth curve on `grid` evenly spaced proportions in
/// [0, min(1, t_max)]; every grid point reuses the seed in `config`.
std::vector<SweepRow> sweep_proportion(const Game& game, const OutcomeSpace& space, double price,
                                       std::size_t grid, SimConfig config);

/// Index of the row with the highest mean growth.
std::size_t sweep_argmax(const std::vector<SweepRow>& rows);

}  // namespace lsqprice
