#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixsn/problem.hpp"

namespace mixsn {

enum class TheoremId {
  SMALL,
  SMALLBBB,
  SMALLB,
  SMALLBCB,
  SMALLDD_Q,
  JUMP_BIG_NU,
  JUMP_SMALL_NU,
  JUMP_NU1,
  JUMP_REORDERED,
  LOGGROWTH,
  ENERGY_MAIN0,
  ENERGY_MAIN1,
  ENERGY_MAIN2,
  LOWER_KRIEG,
};

std::string_view to_string(TheoremId id) noexcept;
/// Throws UnknownTheorem.
TheoremId theorem_from_string(std::string_view name);
/// All upper-bound identifiers (LOWER_KRIEG excluded).
const std::vector<TheoremId>& upper_bound_theorems();

/// DerivationSafe replaces the nominal constant 38.02 by exp(1.5 * 3.2326).
enum class ConstantMode { AsPrinted, DerivationSafe };
std::string_view to_string(ConstantMode mode) noexcept;

/// value = constant * n^{-gamma}.
struct RateReport {
  double gamma = 0.0;
  double constant = 1.0;
  std::string form;
};

struct BoundResult {
  double value = 0.0;
  TheoremId theorem_id = TheoremId::SMALL;
  bool applicable = false;
  std::string validity_note;
  ConstantMode constant_mode = ConstantMode::AsPrinted;
  RateReport rate;
};

struct BoundParams {
  std::optional<double> beta;   // SMALLB (required), LOGGROWTH (defaults to the largest valid)
  std::optional<double> alpha;  // LOGGROWTH (required)
  int part = 1;                 // SMALLDD_Q: 1 or 2
};

/// Evaluates an upper bound for a_n. Hypotheses that fail leave the value
/// computed but set applicable = false and say why in validity_note.
BoundResult upper_bound(const ProblemSpec& spec, std::uint64_t n, TheoremId id,
                        ConstantMode mode = ConstantMode::AsPrinted,
                        const BoundParams& params = {});

/// 2^{-s/q} n^{-s/(q gamma_krieg(n,d))} for constant s and constant q >= 1.
BoundResult lower_bound_krieg(const ProblemSpec& spec, std::uint64_t n);
BoundResult lower_bound_krieg(std::size_t d, double s, double q, std::uint64_t n);

/// [2^nu/(nu-1)! prod_{j>nu} B_j]^{s_1}; with sobolev_integer the factors use
/// the integer-order norm (s must be integral, q is ignored).
double asymptotic_constant(const ProblemSpec& spec, bool sobolev_integer = false);

/// [1 + (1 + 2/log2(d-1))/(d-1)]^{d-1}, d >= 3.
double c_of_d(int d);
/// ((d-1) - ln C(d)) / ((d-1)(1 + log2(d-1))).
double delta_of_d(int d);
/// exp(3.2326 / (2^t (d-1)^{t-1})).
double c_t_d(double t, int d);
/// 6 / 2^{1/beta} (zeta(alpha beta) - 1).
double c_alpha_beta(double alpha, double beta);

double gamma_rate(double n, double beta, int d);
double gamma_star(double n, int d);
double gamma_krieg(double n, int d);

/// Intervals in ln n: the sufficient window [4(d-1)^{3/5}, 2(d-1)/7] for
/// gamma_star to beat 1/(1+log2(d-1)), and, for a given delta = 2/beta, the
/// exact window (ln n > (d-1)/(delta[(d-1)^{1-delta}/2^{1+delta} - 1]), ln n <= d-1).
struct ImprovementRegion {
  double lower = 0.0;
  double upper = 0.0;
  bool empty = true;
  std::optional<double> delta;
  double delta_lower = 0.0;
  double delta_upper = 0.0;
  bool delta_empty = true;
};
ImprovementRegion improvement_region_check(int d, std::optional<double> delta = std::nullopt);

/// s_j = s_1 (1 + beta log2 j).
struct LogGrowthRule {
  double s1 = 1.0;
  double beta = 0.0;
  double s(std::size_t j) const;  // j >= 1
};

struct TractabilityReport {
  double partial_product = 0.0;   // prod_{j<=d_max} (2 zeta(2 tau s_j) - 1)
  bool product_defined = false;   // 2 tau s_1 > 1
  double partial_sum = 0.0;       // sum_{j<=d_max} 2^{-2 tau s_j}
  bool sum_converges = false;     // 2 tau s_1 beta > 1
  double limsup = 0.0;            // limsup ln j / s_j
  bool limsup_finite = false;
  double tau_threshold = 0.0;     // 1/(2 s_1 beta): smallest tau with a convergent sum
  bool strongly_tractable = false;
};
TractabilityReport tractability_verdict(const LogGrowthRule& rule, double tau, std::size_t d_max);

}  // namespace mixsn
