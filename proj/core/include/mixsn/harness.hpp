#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixsn/bounds.hpp"
#include "mixsn/problem.hpp"

namespace mixsn {

// ---------------------------------------------------------------------------
// Brute-force oracle (independent of the frontier enumeration)

/// First n_max singular values by scanning the box {-R..R}^d, d <= 4.
/// With box_radius = 0 the radius starts small and doubles until every
/// point outside the box is provably below a_{n_max}; BoxTooSmall if that
/// needs more than radius_cap.
std::vector<double> brute_force_an(const ProblemSpec& spec, std::uint64_t n_max,
                                   std::int64_t box_radius = 0,
                                   std::int64_t radius_cap = std::int64_t{1} << 22);

/// #{k : u(k) <= r} by nested loops, d <= 4, target L2.
std::uint64_t brute_force_count(const ProblemSpec& spec, double r);

// ---------------------------------------------------------------------------
// Reference tables

enum class TableId { CD_TABLE, DELTA_D_TABLE, BETA_KAPPA_TABLE };
std::string_view to_string(TableId id) noexcept;
/// Accepts "cd", "delta-d", "beta-kappa" and the enum names.
TableId table_from_string(std::string_view name);

struct TableRow {
  double input = 0.0;
  double computed = 0.0;
  double reference_value = 0.0;
  double abs_error = 0.0;
  /// BETA_KAPPA_TABLE only: root of the stationarity form of F.
  std::optional<double> alternative;
};

struct TableSpec {
  TableId table_id = TableId::CD_TABLE;
  std::vector<TableRow> rows;
};

TableSpec reproduce_table(TableId id);

// ---------------------------------------------------------------------------
// Sandwich verification

struct SandwichOptions {
  BoundParams params;
  /// Multiplies every upper bound before comparison (negative controls).
  double upper_scale = 1.0;
  bool include_lower = true;
  /// For H1 problems also check a_n <= a_n of the tensor majorant.
  bool check_majorant = true;
  double rel_tol = 1e-12;
};

struct SandwichEntry {
  TheoremId theorem_id;
  double value;
  bool applicable;
};

struct SandwichRow {
  std::uint64_t n = 0;
  double exact = 0.0;
  std::optional<double> lower;  // set when the lower bound is applicable
  std::vector<SandwichEntry> uppers;
  std::optional<double> majorant;
};

struct Violation {
  std::uint64_t n = 0;
  std::string kind;  // theorem name, "LOWER_KRIEG" or "MAJORANT"
  double exact = 0.0;
  double bound = 0.0;
};

struct SandwichReport {
  ProblemSpec spec;
  std::vector<SandwichRow> rows;
  std::vector<Violation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

SandwichReport verify_sandwich(const ProblemSpec& spec, const std::vector<std::uint64_t>& n_grid,
                               const std::vector<TheoremId>& theorems,
                               ConstantMode mode = ConstantMode::DerivationSafe,
                               const SandwichOptions& options = {});

// ---------------------------------------------------------------------------
// Asymptotic traces

struct RatioPoint {
  std::uint64_t n = 0;
  double a_n = 0.0;
  double ratio = 0.0;  // n^{s_1} a_n / (ln n)^{(nu-1) s_1}
};
std::vector<RatioPoint> asymptotic_ratio_trace(const ProblemSpec& spec,
                                               const std::vector<std::uint64_t>& checkpoints);

struct CountRatioPoint {
  double r = 0.0;
  std::uint64_t count = 0;
  double ratio = 0.0;   // C(r) / (r^{1/s_1} (ln C(r))^{nu-1})
  double target = 0.0;  // asymptotic_constant^{1/s_1}
};
std::vector<CountRatioPoint> counting_ratio_trace(const ProblemSpec& spec,
                                                  const std::vector<double>& radii);

// ---------------------------------------------------------------------------
// Tensor-product merge probe

/// Positive nonincreasing sequence indexed from 1.
struct SequenceRule {
  enum class Kind { Power, Geometric, Single };
  Kind kind = Kind::Power;
  double param = 1.0;  // exponent p of j^{-p}, or ratio x of x^j

  static SequenceRule power(double p) { return {Kind::Power, p}; }
  static SequenceRule geometric(double x) { return {Kind::Geometric, x}; }
  static SequenceRule single() { return {Kind::Single, 1.0}; }

  double log_term(std::uint64_t j) const;  // -inf for zero terms
  /// sum_k term(k)^{1/beta}, +inf when divergent.
  double power_sum(double beta) const;
};

struct TensorTracePoint {
  std::uint64_t n = 0;
  double c_n = 0.0;
  double a_n = 0.0;
  double ratio = 0.0;  // n^beta c_n / (ln n)^alpha
};

struct TensorMergeReport {
  double target = 0.0;  // lambda (sum_k b_k^{1/beta})^beta
  std::vector<TensorTracePoint> trace;
};

/// Rearranges (a_j b_k) through the frontier engine and traces the ratio at
/// n = 10, 100, ... and n_max.
TensorMergeReport tensor_merge_check(const SequenceRule& a, const SequenceRule& b,
                                     std::uint64_t n_max, double alpha, double beta,
                                     double lambda);

}  // namespace mixsn
