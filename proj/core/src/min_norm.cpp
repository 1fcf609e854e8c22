#include "min_norm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "lsqprice/error.hpp"

namespace lsqprice::detail {

namespace {

struct Constraint {
  Eigen::VectorXd normal;
  double offset;
};

std::vector<Constraint> build_constraints(std::span<const HalfSpace> cuts, std::size_t n) {
  std::vector<Constraint> out;
  out.reserve(cuts.size() + 2 * n);
  for (const HalfSpace& cut : cuts) {
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(cut.normal.data(), static_cast<Eigen::Index>(n));
    const double norm = a.norm();
    if (norm == 0.0) {
      if (cut.offset > 1e-12) throw SolverError("internal: infeasible empty cut");
      continue;
    }
    out.push_back({a / norm, cut.offset / norm});
  }
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(i)] = -1.0;
    out.push_back({e, -1.0});
    e[static_cast<Eigen::Index>(i)] = 1.0;
    out.push_back({e, 0.0});
  }
  return out;
}

}  // namespace

MinNormResult min_norm_point(std::span<const HalfSpace> cuts, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  const std::vector<Constraint> constraints = build_constraints(cuts, n);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(dim);
  std::vector<std::size_t> working;

  const std::size_t max_iterations = 50 * (constraints.size() + n) + 100;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    // Projection of the origin onto {y : a_k . y = b_k, k in working}.
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd lambda;
    if (!working.empty()) {
      const auto k = static_cast<Eigen::Index>(working.size());
      Eigen::MatrixXd a(k, dim);
      Eigen::VectorXd b(k);
      for (Eigen::Index r = 0; r < k; ++r) {
        a.row(r) = constraints[working[static_cast<std::size_t>(r)]].normal.transpose();
        b[r] = constraints[working[static_cast<std::size_t>(r)]].offset;
      }
      const Eigen::MatrixXd gram = a * a.transpose();
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
      lambda = ldlt.solve(b);
      y = a.transpose() * lambda;
      // Multipliers for the current x rather than for y.
      lambda = ldlt.solve(a * x);
    }
    const Eigen::VectorXd d = y - x;

    // A full working set pins y to a vertex, so any residual d is rounding.
    if (working.size() >= n || d.norm() <= 1e-12 * (1.0 + x.norm())) {
      if (working.empty()) return {{x.data(), x.data() + dim}, iter};
      Eigen::Index worst = 0;
      const double min_lambda = lambda.minCoeff(&worst);
      if (min_lambda >= -1e-13) return {{x.data(), x.data() + dim}, iter};
      working.erase(working.begin() + worst);
      continue;
    }

    double step = 1.0;
    std::size_t blocking = constraints.size();
    const double flat = 1e-12 * d.norm();
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      if (std::find(working.begin(), working.end(), c) != working.end()) continue;
      const double slope = constraints[c].normal.dot(d);
      if (slope >= -flat) continue;
      const double slack = constraints[c].normal.dot(x) - constraints[c].offset;
      const double reach = std::max(0.0, slack) / -slope;
      if (reach < step) {
        step = reach;
        blocking = c;
      }
    }
    x += step * d;
    if (blocking < constraints.size()) working.push_back(blocking);
  }
  throw SolverError("min-norm active-set solver exceeded " + std::to_string(max_iterations) +
                    " iterations");
}

}  // namespace lsqprice::detail
