#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsqprice::detail {

/// normal . t >= offset
struct HalfSpace {
  std::vector<double> normal;
  double offset;
};

struct MinNormResult {
  std::vector<double> point;
  std::size_t iterations;
};

/// Minimum Euclidean norm point of {t in [0,1]^n : every cut holds}.
///
/// Primal active-set method for the identity-Hessian QP, started from the
/// all-ones corner. The caller guarantees that corner is feasible.
MinNormResult min_norm_point(std::span<const HalfSpace> cuts, std::size_t n);

}  // namespace lsqprice::detail
