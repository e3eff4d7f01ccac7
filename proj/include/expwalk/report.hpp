#pragma once

#include <string>

namespace expwalk {

/// Uniform carrier for every inequality checker: holds <=> lhs <= rhs + 1e-12.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  std::string context;

  static constexpr double kSlack = 1e-12;

  static BoundReport make(double lhs, double rhs, std::string context) {
    return {lhs, rhs, lhs <= rhs + kSlack, std::move(context)};
  }
};

}  // namespace expwalk
