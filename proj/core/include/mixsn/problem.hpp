#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace mixsn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Target space of the embedding.
enum class Target { L2, H1 };

/// Canonical description of an embedding H^{s,q}_mix -> target.
///
/// Coordinates are stored sorted by smoothness (ties broken by fine index),
/// so that s[0] = ... = s[nu-1] < s[nu] <= ... . `order[i]` is the user
/// index of canonical coordinate i. Approximation numbers do not depend on
/// the order of coordinates; the permutation is kept only for reporting.
struct ProblemSpec {
  std::vector<double> s;
  std::vector<double> q;  // kInf allowed
  Target target = Target::L2;
  std::size_t nu = 1;
  std::vector<std::size_t> order;

  std::size_t dim() const noexcept { return s.size(); }
  bool constant_smoothness() const noexcept;
  bool constant_fine_index() const noexcept;
  /// q = (1,...,1) and all s_j positive integers: weights are exact integers.
  bool integer_mode() const noexcept;
};

/// Validates and canonicalizes. For Target::H1 the fine index is fixed to 2
/// (the energy weight is only defined for q = 2); q entries are still
/// validated.
ProblemSpec make_problem(std::span<const double> s, std::span<const double> q,
                         Target target = Target::L2);
ProblemSpec make_problem(std::size_t d, std::span<const double> s,
                         std::span<const double> q, Target target = Target::L2);

/// Maps a canonical-order vector back to the user's coordinate order.
std::vector<std::int64_t> to_user_order(const ProblemSpec& spec,
                                        std::span<const std::int64_t> canonical);

/// u_{s,q}(k) = prod_j (1+|k_j|^{q_j})^{s_j/q_j}, max(1,|k_j|)^{s_j} if q_j = inf.
/// k is given in canonical order. Requires target L2.
double weight_u(const ProblemSpec& spec, std::span<const std::int64_t> k);
double log_weight_u(const ProblemSpec& spec, std::span<const std::int64_t> k);

/// (1+|k|_2^2)^{1/2} / prod_j (1+k_j^2)^{s_j/2}. Requires target H1.
double weight_energy(const ProblemSpec& spec, std::span<const std::int64_t> k);

/// prod_j (1+k_j^2)^{-(s_j-1)/2}; dominates weight_energy pointwise.
double weight_energy_majorant(const ProblemSpec& spec, std::span<const std::int64_t> k);

enum class WeightKind { TensorL2, EnergyH1 };

/// Reciprocal weight sigma on N_0^d with sigma(0) = 1, nonincreasing in
/// every coordinate. TensorL2: sigma = 1/u. EnergyH1: sigma = weight_energy.
class WeightFunction {
 public:
  static WeightFunction tensor(ProblemSpec spec);
  static WeightFunction energy(ProblemSpec spec);
  /// Tensor for L2 problems, energy for H1 problems.
  static WeightFunction for_problem(ProblemSpec spec);

  WeightKind kind() const noexcept { return kind_; }
  const ProblemSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return spec_.dim(); }

  /// True when reciprocals are exact integers (tensor weight in integer mode).
  bool exact() const noexcept { return exact_; }

  double log_sigma(std::span<const std::int64_t> k) const;
  double sigma(std::span<const std::int64_t> k) const;

  /// 1/sigma(k) as an exact integer. Only meaningful when exact();
  /// returns nullopt if the value does not fit in 64 bits.
  std::optional<std::uint64_t> exact_reciprocal(std::span<const std::int64_t> k) const;

 private:
  WeightFunction(WeightKind kind, ProblemSpec spec);

  WeightKind kind_;
  ProblemSpec spec_;
  bool exact_ = false;
  std::vector<std::uint32_t> int_exponent_;
};

/// Orthant representative with its sign-symmetry multiplicity 2^{#nonzero}.
struct LatticePoint {
  std::vector<std::int64_t> k;
  std::uint64_t multiplicity = 1;
};

std::uint64_t sign_multiplicity(std::span<const std::int64_t> k) noexcept;

/// Lower-level 1-D pieces shared by the counting code.
namespace detail {
/// log (1+|k|^q)^{s/q}, or s log max(1,|k|) for q = inf.
double log_weight_1d(double s, double q, std::int64_t k) noexcept;
/// (1+|k|)^e as an exact integer; nullopt on overflow.
std::optional<std::uint64_t> int_power(std::uint64_t base, std::uint32_t e) noexcept;
}  // namespace detail

}  // namespace mixsn
