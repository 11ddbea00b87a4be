#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mixsn/problem.hpp"

namespace mixsn {

/// #{k in Z^d : u(k) <= r}.
///
/// In float mode thresholds are snapped inward by 1e-12 relative, and
/// tie_sensitive reports whether the unsnapped count differs between
/// r(1-1e-12) and r(1+1e-12). In integer mode the count is exact and
/// tie_sensitive is always false.
struct CountResult {
  std::uint64_t value = 0;
  bool tie_sensitive = false;
  double r = 1.0;
};

struct CountOptions {
  /// Maximum number of recursion nodes before BudgetExceeded.
  std::uint64_t node_cap = 500'000'000;
};

inline constexpr double kCountSnapTol = 1e-12;

/// 2 floor((r^{q/s} - 1)^{1/q}) + 1, or 2 floor(r^{1/s}) + 1 for q = inf.
CountResult count_1d(double s, double q, double r);

/// Exact count by recursion over the last coordinate, memoized per call.
CountResult count_exact(const ProblemSpec& spec, double r, const CountOptions& options = {});

/// A_alpha prod_{j>=2} (2 zeta(alpha s_j) - 1) r^alpha for sorted s with s_1 = 1.
double count_upper_clever(std::span<const double> s, double r, double alpha);

/// Smoothness vector and radius for which count_upper_clever bounds
/// count_exact(spec, r): s -> s/q (needs 1 <= q < inf), then s -> s/s_1 and
/// r -> r^{1/s_1}.
struct CleverInput {
  std::vector<double> s;
  double r = 1.0;
};
CleverInput normalize_for_clever(const ProblemSpec& spec, double r);

}  // namespace mixsn
