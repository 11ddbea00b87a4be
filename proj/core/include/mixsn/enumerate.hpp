#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mixsn/problem.hpp"

namespace mixsn {

struct EnumerateOptions {
  /// Maximum number of live frontier nodes before BudgetExceeded.
  std::size_t node_cap = 100'000'000;
  /// Finish the plateau containing the last requested index so that the
  /// final (theta, n) pair is a full count.
  bool complete_last_plateau = true;
};

/// Tolerance on |log sigma_1 - log sigma_2| for merging float weights into one plateau.
inline constexpr double kPlateauLogTol = 1e-10;

/// A coordinatewise nonincreasing function on N_0^d, described by its log.
/// Points with log_value = -inf are treated as absent (and so are all their
/// successors).
struct MonotoneGrid {
  std::size_t dim = 0;
  std::function<double(std::span<const std::int64_t>)> log_value;
  /// Optional exact integer key, ascending in the same order as log_value
  /// descends. When present, plateaus are formed by exact key equality.
  std::function<std::optional<std::uint64_t>(std::span<const std::int64_t>)> exact_key;
  /// Multiplicity 2^{#nonzero} for sign-symmetric weights on Z^d, else 1.
  bool sign_symmetric = true;
};

/// Grid view of a weight. The grid keeps a reference; `weight` must outlive it.
MonotoneGrid grid_for(const WeightFunction& weight);

/// One group of equal weights, representatives in lexicographic order.
struct PlateauBlock {
  double log_sigma = 0.0;      // smallest log value in the group
  double log_sigma_max = 0.0;  // largest log value in the group
  std::optional<std::uint64_t> exact_reciprocal;
  std::uint64_t count = 0;  // sum of multiplicities
  std::vector<LatticePoint> points;
  bool merged_by_tolerance = false;  // float values that differ but were grouped
  bool complete = true;              // false if collection stopped at max_count
};

/// Best-first enumeration of a MonotoneGrid. Each point is reached through
/// a unique parent (drop the first nonzero coordinate by one), so no visited
/// set is needed. Single client; not thread-safe.
class FrontierEnumerator {
 public:
  explicit FrontierEnumerator(MonotoneGrid grid, EnumerateOptions options = {});
  ~FrontierEnumerator();
  FrontierEnumerator(FrontierEnumerator&&) noexcept;
  FrontierEnumerator& operator=(FrontierEnumerator&&) noexcept;

  /// Next plateau in decreasing weight order; false when the grid is exhausted.
  /// With keep_points = false only the count is filled in. Collection stops
  /// early (complete = false) once count reaches max_count; the remainder of
  /// that plateau is returned by the next call.
  bool next_plateau(PlateauBlock& out, bool keep_points = true,
                    std::uint64_t max_count = UINT64_MAX);

  /// Largest number of frontier nodes alive at once so far.
  std::size_t peak_frontier() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Plateau {
  double theta = 1.0;  // reciprocal of the weight value
  std::uint64_t n = 0; // cumulative count through this plateau
};

struct SingularSequence {
  std::vector<double> values;
  std::vector<Plateau> plateaus;
  /// Some plateau was formed by merging float values within kPlateauLogTol,
  /// or two consecutive plateaus are within 100x that tolerance.
  bool tie_sensitive = false;
};

/// First n_max terms of the nonincreasing rearrangement of sigma over Z^d.
SingularSequence singular_values(const WeightFunction& weight, std::uint64_t n_max,
                                 const EnumerateOptions& options = {});

/// Same as singular_values on an arbitrary grid.
SingularSequence rearrange(const MonotoneGrid& grid, std::uint64_t n_max,
                           const EnumerateOptions& options = {});

double nth_singular_value(const WeightFunction& weight, std::uint64_t n,
                          const EnumerateOptions& options = {});

/// The m_max largest distinct weights as (theta_m, n_m).
std::vector<Plateau> jump_sequence(const WeightFunction& weight, std::size_t m_max,
                                   const EnumerateOptions& options = {});

/// n-1 frequencies of smallest u, in the user's coordinate order. Ties within
/// the last plateau are broken lexicographically on representatives, then
/// by sign pattern (+ before -, first coordinate slowest).
std::vector<std::vector<std::int64_t>> optimal_index_set(const ProblemSpec& spec, std::uint64_t n,
                                                         const EnumerateOptions& options = {});

/// All sign variants of an orthant representative in the order above.
std::vector<std::vector<std::int64_t>> expand_signs(std::span<const std::int64_t> k);

}  // namespace mixsn
