#include "mixsn/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mixsn/error.hpp"

namespace mixsn {

namespace {

std::uint64_t abs_u64(std::int64_t v) noexcept {
  return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
}

void check_dim(const ProblemSpec& spec, std::size_t n) {
  if (n != spec.dim())
    throw Error(Errc::InvalidArgument, "lattice point has dimension " + std::to_string(n) +
                                           ", expected " + std::to_string(spec.dim()));
}

}  // namespace

bool ProblemSpec::constant_smoothness() const noexcept {
  return std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); });
}

bool ProblemSpec::constant_fine_index() const noexcept {
  return std::all_of(q.begin(), q.end(), [&](double v) { return v == q.front(); });
}

bool ProblemSpec::integer_mode() const noexcept {
  if (target != Target::L2) return false;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (q[j] != 1.0) return false;
    if (s[j] != std::floor(s[j]) || s[j] > 64.0) return false;
  }
  return true;
}

ProblemSpec make_problem(std::span<const double> s, std::span<const double> q, Target target) {
  return make_problem(s.size(), s, q, target);
}

ProblemSpec make_problem(std::size_t d, std::span<const double> s, std::span<const double> q,
                         Target target) {
  if (d == 0) throw Error(Errc::InvalidArgument, "dimension must be at least 1");
  if (s.size() != d || q.size() != d)
    throw Error(Errc::InvalidArgument, "smoothness and fine-index lists must have length d = " +
                                           std::to_string(d));
  for (double v : s) {
    if (std::isnan(v) || std::isinf(v))
      throw Error(Errc::InvalidArgument, "smoothness entries must be finite");
    if (v <= 0.0) throw Error(Errc::NonPositiveSmoothness, "smoothness entries must be positive");
  }
  for (double v : q)
    if (std::isnan(v) || v <= 0.0)
      throw Error(Errc::InvalidFineIndex, "fine-index entries must be positive or inf");
  if (target == Target::H1 && *std::min_element(s.begin(), s.end()) <= 1.0)
    throw Error(Errc::EnergyNeedsSmoothness, "target H1 requires every s_j > 1");

  ProblemSpec spec;
  spec.target = target;
  spec.order.resize(d);
  std::iota(spec.order.begin(), spec.order.end(), std::size_t{0});
  std::stable_sort(spec.order.begin(), spec.order.end(), [&](std::size_t a, std::size_t b) {
    if (s[a] != s[b]) return s[a] < s[b];
    return q[a] < q[b];
  });
  spec.s.reserve(d);
  spec.q.reserve(d);
  for (std::size_t i : spec.order) {
    spec.s.push_back(s[i]);
    spec.q.push_back(target == Target::H1 ? 2.0 : q[i]);
  }
  spec.nu = static_cast<std::size_t>(
      std::count(spec.s.begin(), spec.s.end(), spec.s.front()));
  return spec;
}

std::vector<std::int64_t> to_user_order(const ProblemSpec& spec,
                                        std::span<const std::int64_t> canonical) {
  check_dim(spec, canonical.size());
  std::vector<std::int64_t> out(canonical.size());
  for (std::size_t i = 0; i < canonical.size(); ++i) out[spec.order[i]] = canonical[i];
  return out;
}

namespace detail {

double log_weight_1d(double s, double q, std::int64_t k) noexcept {
  const double a = static_cast<double>(abs_u64(k));
  if (a == 0.0) return 0.0;
  const double la = std::log(a);
  if (std::isinf(q)) return s * la;
  // (s/q) log(1 + a^q) = s log a + (s/q) log1p(a^{-q}), stable for a >= 1.
  return s * la + (s / q) * std::log1p(std::exp(-q * la));
}

std::optional<std::uint64_t> int_power(std::uint64_t base, std::uint32_t e) noexcept {
  std::uint64_t result = 1;
  while (e > 0) {
    if (e & 1u) {
      if (__builtin_mul_overflow(result, base, &result)) return std::nullopt;
    }
    e >>= 1;
    if (e > 0 && __builtin_mul_overflow(base, base, &base)) return std::nullopt;
  }
  return result;
}

}  // namespace detail

double log_weight_u(const ProblemSpec& spec, std::span<const std::int64_t> k) {
  if (spec.target != Target::L2)
    throw Error(Errc::InvalidArgument, "weight_u requires target L2");
  check_dim(spec, k.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) acc += detail::log_weight_1d(spec.s[j], spec.q[j], k[j]);
  return acc;
}

double weight_u(const ProblemSpec& spec, std::span<const std::int64_t> k) {
  const double lu = log_weight_u(spec, k);
  if (spec.integer_mode()) {
    std::uint64_t prod = 1;
    bool ok = true;
    for (std::size_t j = 0; j < k.size() && ok; ++j) {
      auto f = detail::int_power(abs_u64(k[j]) + 1, static_cast<std::uint32_t>(spec.s[j]));
      ok = f && !__builtin_mul_overflow(prod, *f, &prod);
    }
    if (ok) return static_cast<double>(prod);
  }
  return std::exp(lu);
}

namespace {

double log_energy(const ProblemSpec& spec, std::span<const std::int64_t> k) {
  double norm2 = 0.0;
  double denom = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double a = static_cast<double>(k[j]);
    norm2 += a * a;
    denom += 0.5 * spec.s[j] * std::log1p(a * a);
  }
  return 0.5 * std::log1p(norm2) - denom;
}

void require_h1(const ProblemSpec& spec, std::span<const std::int64_t> k, const char* what) {
  if (spec.target != Target::H1)
    throw Error(Errc::InvalidArgument, std::string(what) + " requires target H1");
  check_dim(spec, k.size());
}

}  // namespace

double weight_energy(const ProblemSpec& spec, std::span<const std::int64_t> k) {
  require_h1(spec, k, "weight_energy");
  return std::exp(log_energy(spec, k));
}

double weight_energy_majorant(const ProblemSpec& spec, std::span<const std::int64_t> k) {
  require_h1(spec, k, "weight_energy_majorant");
  double acc = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double a = static_cast<double>(k[j]);
    acc -= 0.5 * (spec.s[j] - 1.0) * std::log1p(a * a);
  }
  return std::exp(acc);
}

WeightFunction::WeightFunction(WeightKind kind, ProblemSpec spec)
    : kind_(kind), spec_(std::move(spec)) {
  if (kind_ == WeightKind::TensorL2 && spec_.integer_mode()) {
    exact_ = true;
    int_exponent_.reserve(spec_.dim());
    for (double v : spec_.s) int_exponent_.push_back(static_cast<std::uint32_t>(v));
  }
}

WeightFunction WeightFunction::tensor(ProblemSpec spec) {
  if (spec.target != Target::L2)
    throw Error(Errc::InvalidArgument, "tensor weight requires target L2");
  return WeightFunction(WeightKind::TensorL2, std::move(spec));
}

WeightFunction WeightFunction::energy(ProblemSpec spec) {
  if (spec.target != Target::H1)
    throw Error(Errc::InvalidArgument, "energy weight requires target H1");
  return WeightFunction(WeightKind::EnergyH1, std::move(spec));
}

WeightFunction WeightFunction::for_problem(ProblemSpec spec) {
  return spec.target == Target::H1 ? energy(std::move(spec)) : tensor(std::move(spec));
}

double WeightFunction::log_sigma(std::span<const std::int64_t> k) const {
  if (kind_ == WeightKind::EnergyH1) {
    check_dim(spec_, k.size());
    return log_energy(spec_, k);
  }
  return -log_weight_u(spec_, k);
}

double WeightFunction::sigma(std::span<const std::int64_t> k) const {
  if (exact_) {
    if (auto u = exact_reciprocal(k)) return 1.0 / static_cast<double>(*u);
  }
  return std::exp(log_sigma(k));
}

std::optional<std::uint64_t> WeightFunction::exact_reciprocal(
    std::span<const std::int64_t> k) const {
  if (!exact_) return std::nullopt;
  check_dim(spec_, k.size());
  std::uint64_t prod = 1;
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] == 0) continue;
    auto f = detail::int_power(abs_u64(k[j]) + 1, int_exponent_[j]);
    if (!f || __builtin_mul_overflow(prod, *f, &prod)) return std::nullopt;
  }
  return prod;
}

std::uint64_t sign_multiplicity(std::span<const std::int64_t> k) noexcept {
  std::uint64_t m = 1;
  for (auto v : k)
    if (v != 0) m <<= 1;
  return m;
}

}  // namespace mixsn
