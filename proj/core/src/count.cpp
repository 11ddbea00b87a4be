#include "mixsn/count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "mixsn/error.hpp"
#include "mixsn/specfun.hpp"

namespace mixsn {

namespace {

void require_radius(double r) {
  if (!(r >= 1.0) || !std::isfinite(r))
    throw Error(Errc::InvalidArgument, "radius must be a finite value >= 1");
}

// floor(t) where t within tol (relative) of an integer counts as that integer.
double snapped_floor(double t, double tol) {
  const double n = std::round(t);
  if (std::abs(t - n) <= tol * std::max(1.0, std::abs(t))) return n;
  return std::floor(t);
}

// Count of |k| with weight <= exp(lr) in one coordinate, lr >= 0.
std::uint64_t count_1d_log(double s, double q, double lr, double tol) {
  double t;
  if (std::isinf(q))
    t = std::exp(lr / s);
  else
    t = std::pow(std::expm1(q / s * lr), 1.0 / q);
  return 2 * static_cast<std::uint64_t>(snapped_floor(t, tol)) + 1;
}

struct KeyHash {
  std::size_t operator()(const std::pair<std::size_t, std::uint64_t>& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.second * 0x9E3779B97F4A7C15ull + k.first);
  }
};

class Counter {
 public:
  Counter(const ProblemSpec& spec, const CountOptions& options) : spec_(spec), options_(options) {}

  std::uint64_t integer(std::size_t l, std::uint64_t big_r) {
    tick();
    if (l == 0) return 2 * int_root(big_r, exponent(0)) + 1;
    const auto key = std::make_pair(l, big_r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t c = integer(l - 1, big_r);
    for (std::uint64_t m = 1;; ++m) {
      const auto w = detail::int_power(m + 1, exponent(l));
      if (!w || *w > big_r) break;
      c += 2 * integer(l - 1, big_r / *w);
    }
    memo_.emplace(key, c);
    return c;
  }

  std::uint64_t real(std::size_t l, double lr, double tol) {
    tick();
    if (l == 0) return count_1d_log(spec_.s[0], spec_.q[0], lr, tol);
    const auto key = std::make_pair(l, std::bit_cast<std::uint64_t>(lr));
    auto& memo = tol > 0.0 ? memo_ : raw_memo_;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t c = real(l - 1, lr, tol);
    for (std::int64_t m = 1;; ++m) {
      const double rest = lr - detail::log_weight_1d(spec_.s[l], spec_.q[l], m);
      if (rest < -tol) break;
      c += 2 * real(l - 1, std::max(rest, 0.0), tol);
    }
    memo.emplace(key, c);
    return c;
  }

 private:
  std::uint32_t exponent(std::size_t j) const { return static_cast<std::uint32_t>(spec_.s[j]); }

  // Largest t >= 0 with (1+t)^e <= big_r.
  static std::uint64_t int_root(std::uint64_t big_r, std::uint32_t e) {
    auto b = static_cast<std::uint64_t>(std::pow(static_cast<double>(big_r), 1.0 / e));
    b = std::max<std::uint64_t>(b, 1);
    auto fits = [&](std::uint64_t v) {
      auto p = detail::int_power(v, e);
      return p && *p <= big_r;
    };
    while (fits(b + 1)) ++b;
    while (b > 1 && !fits(b)) --b;
    return b - 1;
  }

  void tick() {
    if (++nodes_ > options_.node_cap)
      throw Error(Errc::BudgetExceeded,
                  "count recursion exceeded " + std::to_string(options_.node_cap) + " nodes");
  }

  const ProblemSpec& spec_;
  CountOptions options_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::pair<std::size_t, std::uint64_t>, std::uint64_t, KeyHash> memo_;
  std::unordered_map<std::pair<std::size_t, std::uint64_t>, std::uint64_t, KeyHash> raw_memo_;
};

}  // namespace

CountResult count_1d(double s, double q, double r) {
  require_radius(r);
  if (!(s > 0.0)) throw Error(Errc::NonPositiveSmoothness, "smoothness must be positive");
  if (!(q > 0.0)) throw Error(Errc::InvalidFineIndex, "fine index must be positive or inf");
  const double lr = std::log(r);
  CountResult out;
  out.r = r;
  out.value = count_1d_log(s, q, lr, kCountSnapTol);
  const auto lo = count_1d_log(s, q, std::max(0.0, lr - kCountSnapTol), 0.0);
  const auto hi = count_1d_log(s, q, lr + kCountSnapTol, 0.0);
  out.tie_sensitive = lo != hi;
  return out;
}

CountResult count_exact(const ProblemSpec& spec, double r, const CountOptions& options) {
  if (spec.target != Target::L2)
    throw Error(Errc::InvalidArgument, "count_exact requires target L2");
  require_radius(r);
  CountResult out;
  out.r = r;
  const std::size_t last = spec.dim() - 1;
  if (spec.integer_mode()) {
    if (r >= 9.0e18) throw Error(Errc::InvalidArgument, "radius too large for exact counting");
    const auto big_r = static_cast<std::uint64_t>(snapped_floor(r, kCountSnapTol));
    Counter counter(spec, options);
    out.value = counter.integer(last, big_r);
    return out;
  }
  const double lr = std::log(r);
  Counter counter(spec, options);
  out.value = counter.real(last, lr, kCountSnapTol);
  const auto lo = counter.real(last, std::max(0.0, lr - kCountSnapTol), 0.0);
  const auto hi = counter.real(last, lr + kCountSnapTol, 0.0);
  out.tie_sensitive = lo != hi;
  return out;
}

double count_upper_clever(std::span<const double> s, double r, double alpha) {
  if (!(alpha > 1.0))
    throw Error(Errc::AlphaTooSmall, "clever bound needs alpha > 1, got " + std::to_string(alpha));
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty smoothness vector");
  if (std::abs(s[0] - 1.0) > 1e-12)
    throw Error(Errc::InvalidArgument, "clever bound needs s_1 = 1; normalize by s_1 first");
  if (!std::is_sorted(s.begin(), s.end()))
    throw Error(Errc::InvalidArgument, "clever bound needs nondecreasing smoothness");
  require_radius(r);
  double prod = a_alpha(alpha);
  for (std::size_t j = 1; j < s.size(); ++j) prod *= 2.0 * zeta(alpha * s[j]) - 1.0;
  return prod * std::pow(r, alpha);
}

CleverInput normalize_for_clever(const ProblemSpec& spec, double r) {
  require_radius(r);
  CleverInput in;
  in.s.reserve(spec.dim());
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    const double q = spec.q[j];
    if (!(q >= 1.0) || std::isinf(q))
      throw Error(Errc::InvalidFineIndex, "clever bound needs 1 <= q_j < inf");
    in.s.push_back(spec.s[j] / q);
  }
  std::sort(in.s.begin(), in.s.end());
  const double s1 = in.s.front();
  for (double& v : in.s) v /= s1;
  in.s.front() = 1.0;
  in.r = std::pow(r, 1.0 / s1);
  return in;
}

}  // namespace mixsn
