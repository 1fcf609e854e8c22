#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lsqprice::cli {

/// One reproduced figure: what the reference value is, what we computed, and
/// whether it landed within tolerance.
struct ExampleResult {
  std::string id;
  /// Acceptance criterion this row belongs to (1-based).
  int criterion = 0;
  std::string title;
  std::string expected;
  std::string computed;
  bool pass = false;
  /// Per-check lines for composite rows.
  std::vector<std::string> details;
  double seconds = 0.0;
};

std::vector<std::string> example_ids();

/// Runs every row, or only the row named by `only`. Unknown ids yield an
/// empty result.
std::vector<ExampleResult> run_examples(std::string_view only = {});

struct PropertyCheck {
  std::string name;
  bool pass;
  std::string detail;
};

/// Invariant checks over randomized inputs with fixed seeds.
std::vector<PropertyCheck> run_property_suite();

}  // namespace lsqprice::cli
