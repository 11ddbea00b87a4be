#include "mixsn/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mixsn/count.hpp"
#include "mixsn/enumerate.hpp"
#include "mixsn/error.hpp"
#include "mixsn/specfun.hpp"

namespace mixsn {

namespace {

constexpr std::size_t kMaxOracleDim = 4;
constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

void require_small_dim(const ProblemSpec& spec) {
  if (spec.dim() > kMaxOracleDim)
    throw Error(Errc::InvalidArgument, "brute-force oracle supports d <= 4");
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  return __builtin_mul_overflow(a, b, &out) ? kSat : out;
}

std::uint64_t sat_pow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out = sat_mul(out, base);
  return out;
}

// Weights evaluated straight from their defining formulas.
struct DirectWeight {
  const ProblemSpec& spec;
  bool integer;

  double sigma(const std::array<std::int64_t, 4>& k) const {
    const std::size_t d = spec.dim();
    if (spec.target == Target::H1) {
      double norm2 = 0.0;
      double denom = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double a = static_cast<double>(k[j]);
        norm2 += a * a;
        denom *= std::pow(1.0 + a * a, spec.s[j] / 2.0);
      }
      return std::sqrt(1.0 + norm2) / denom;
    }
    double prod = 1.0;
    for (std::size_t j = 0; j < d; ++j) prod *= factor(j, k[j]);
    return prod;
  }

  // (1 + |k|^q)^{-s/q}, or max(1,|k|)^{-s} for q = inf.
  double factor(std::size_t j, std::int64_t kj) const {
    const double a = std::abs(static_cast<double>(kj));
    if (std::isinf(spec.q[j])) return std::pow(std::max(1.0, a), -spec.s[j]);
    return std::pow(1.0 + std::pow(a, spec.q[j]), -spec.s[j] / spec.q[j]);
  }

  std::uint64_t u(const std::array<std::int64_t, 4>& k) const {
    std::uint64_t prod = 1;
    for (std::size_t j = 0; j < spec.dim(); ++j)
      prod = sat_mul(prod, sat_pow(static_cast<std::uint64_t>(std::abs(k[j])) + 1,
                                   static_cast<int>(spec.s[j])));
    return prod;
  }
};

// Visits every signed k in {-R..R}^d with keep(k) true. keep must be
// monotone: false at (.., m, 0, ..) implies false for larger |m|.
template <class Keep, class Visit>
void scan_box(std::size_t d, std::int64_t radius, const Keep& keep, const Visit& visit) {
  std::array<std::int64_t, 4> k{};
  auto rec = [&](auto& self, std::size_t j) -> void {
    for (std::int64_t m = 0; m <= radius; ++m) {
      k[j] = m;
      if (!keep(k)) break;
      for (std::int64_t sgn : {1, -1}) {
        if (m == 0 && sgn < 0) continue;
        k[j] = sgn * m;
        if (j + 1 == d)
          visit(k);
        else
          self(self, j + 1);
      }
      k[j] = 0;
    }
    k[j] = 0;
  };
  rec(rec, 0);
}

// Per-coordinate factor tables for |k_j| <= radius.
template <class T, class F>
std::array<std::vector<T>, 4> factor_tables(std::size_t d, std::int64_t radius, const F& f) {
  std::array<std::vector<T>, 4> t;
  for (std::size_t j = 0; j < d; ++j) {
    t[j].resize(static_cast<std::size_t>(radius) + 1);
    for (std::int64_t m = 0; m <= radius; ++m) t[j][static_cast<std::size_t>(m)] = f(j, m);
  }
  return t;
}

}  // namespace

std::vector<double> brute_force_an(const ProblemSpec& spec, std::uint64_t n_max,
                                   std::int64_t box_radius, std::int64_t radius_cap) {
  require_small_dim(spec);
  if (n_max == 0) throw Error(Errc::InvalidArgument, "n_max must be at least 1");
  const DirectWeight w{spec, spec.integer_mode()};
  const std::size_t d = spec.dim();
  const bool automatic = box_radius <= 0;
  std::int64_t radius = automatic ? 2 : box_radius;

  for (;;) {
    std::array<std::int64_t, 4> edge{};
    if (w.integer) {
      // Every point outside the box has u >= min_j u((R+1) e_j).
      std::uint64_t bound = kSat;
      for (std::size_t j = 0; j < d; ++j) {
        edge.fill(0);
        edge[j] = radius + 1;
        bound = std::min(bound, w.u(edge));
      }
      std::vector<std::uint64_t> found;
      scan_box(d, radius, [&](const auto& k) { return w.u(k) < bound; },
               [&](const auto& k) { found.push_back(w.u(k)); });
      if (found.size() >= n_max) {
        std::sort(found.begin(), found.end());
        std::vector<double> out(n_max);
        for (std::size_t i = 0; i < n_max; ++i) out[i] = 1.0 / static_cast<double>(found[i]);
        return out;
      }
    } else {
      double bound = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        edge.fill(0);
        edge[j] = radius + 1;
        bound = std::max(bound, w.sigma(edge));
      }
      const double cut = bound * (1.0 + 1e-12);
      std::vector<double> found;
      scan_box(d, radius, [&](const auto& k) { return w.sigma(k) > cut; },
               [&](const auto& k) { found.push_back(w.sigma(k)); });
      if (found.size() >= n_max) {
        std::sort(found.begin(), found.end(), std::greater<>());
        found.resize(n_max);
        return found;
      }
    }
    if (!automatic || radius >= radius_cap)
      throw Error(Errc::BoxTooSmall,
                  "box radius " + std::to_string(radius) + " does not contain the first " +
                      std::to_string(n_max) + " values");
    radius = std::min(radius * 2, radius_cap);
  }
}

std::uint64_t brute_force_count(const ProblemSpec& spec, double r) {
  require_small_dim(spec);
  if (spec.target != Target::L2) throw Error(Errc::InvalidArgument, "counting requires target L2");
  if (!(r >= 1.0)) throw Error(Errc::InvalidArgument, "radius must be >= 1");
  const DirectWeight w{spec, spec.integer_mode()};
  // Coordinate radius: the 1-D weight alone must not exceed r.
  std::int64_t radius = 0;
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    std::int64_t m = 0;
    while (1.0 / w.factor(j, m + 1) <= r * (1.0 + 1e-12)) ++m;
    radius = std::max(radius, m);
  }
  const std::size_t d = spec.dim();
  auto idx = [](std::int64_t v) { return static_cast<std::size_t>(v < 0 ? -v : v); };
  std::uint64_t count = 0;
  if (w.integer) {
    const auto big_r = static_cast<std::uint64_t>(std::floor(r * (1.0 + 1e-12)));
    const auto tab = factor_tables<std::uint64_t>(d, radius, [&](std::size_t j, std::int64_t m) {
      return sat_pow(static_cast<std::uint64_t>(m) + 1, static_cast<int>(spec.s[j]));
    });
    auto u = [&](const auto& k) {
      std::uint64_t prod = 1;
      for (std::size_t j = 0; j < d; ++j) prod = sat_mul(prod, tab[j][idx(k[j])]);
      return prod;
    };
    scan_box(d, radius, [&](const auto& k) { return u(k) <= big_r; }, [&](const auto&) { ++count; });
  } else {
    const double cut = 1.0 / (r * (1.0 + 1e-12));
    const auto tab = factor_tables<double>(d, radius, [&](std::size_t j, std::int64_t m) {
      return w.factor(j, m);
    });
    auto sigma = [&](const auto& k) {
      double prod = 1.0;
      for (std::size_t j = 0; j < d; ++j) prod *= tab[j][idx(k[j])];
      return prod;
    };
    scan_box(d, radius, [&](const auto& k) { return sigma(k) >= cut; }, [&](const auto&) { ++count; });
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {

struct RefValue {
  double input;
  double value;
};

// Reference values, three decimals.
constexpr std::array<RefValue, 24> kCdRef = {{
    {3, 6.250},  {4, 5.396},  {5, 5.063},  {6, 4.866},  {7, 4.730},  {8, 4.627},
    {9, 4.545},  {10, 4.476}, {11, 4.419}, {12, 4.370}, {13, 4.326}, {14, 4.288},
    {15, 4.254}, {16, 4.222}, {17, 4.195}, {18, 4.169}, {19, 4.145}, {20, 4.123},
    {21, 4.103}, {22, 4.084}, {23, 4.067}, {24, 4.050}, {25, 4.034}, {26, 4.020},
}};

constexpr std::array<RefValue, 12> kDeltaRef = {{
    {3, 0.042},  {9, 0.203},  {17, 0.182}, {18, 0.180}, {19, 0.178}, {20, 0.176},
    {21, 0.175}, {22, 0.173}, {23, 0.171}, {24, 0.170}, {25, 0.169}, {26, 0.167},
}};

// Reference values, two decimals.
constexpr std::array<RefValue, 16> kBetaRef = {{
    {1, 9.60},     {2, 20.72},    {3, 34.77},    {4, 50.58},     {5, 67.60},    {6, 85.58},
    {7, 104.33},   {8, 123.73},   {9, 143.69},   {10, 164.15},   {20, 388.12},  {30, 634.94},
    {50, 1168.94}, {70, 1738.35}, {100, 2637.18}, {500, 16628.70},
}};

}  // namespace

std::string_view to_string(TableId id) noexcept {
  switch (id) {
    case TableId::CD_TABLE: return "CD_TABLE";
    case TableId::DELTA_D_TABLE: return "DELTA_D_TABLE";
    case TableId::BETA_KAPPA_TABLE: return "BETA_KAPPA_TABLE";
  }
  return "UNKNOWN";
}

TableId table_from_string(std::string_view name) {
  if (name == "cd" || name == "CD_TABLE") return TableId::CD_TABLE;
  if (name == "delta-d" || name == "DELTA_D_TABLE") return TableId::DELTA_D_TABLE;
  if (name == "beta-kappa" || name == "BETA_KAPPA_TABLE") return TableId::BETA_KAPPA_TABLE;
  throw Error(Errc::InvalidArgument, "unknown table '" + std::string(name) + "'");
}

TableSpec reproduce_table(TableId id) {
  TableSpec t;
  t.table_id = id;
  auto add = [&](double input, double computed, double ref) {
    t.rows.push_back({input, computed, ref, std::abs(computed - ref), std::nullopt});
  };
  switch (id) {
    case TableId::CD_TABLE:
      for (const auto& r : kCdRef) add(r.input, c_of_d(static_cast<int>(r.input)), r.value);
      break;
    case TableId::DELTA_D_TABLE:
      for (const auto& r : kDeltaRef) add(r.input, delta_of_d(static_cast<int>(r.input)), r.value);
      break;
    case TableId::BETA_KAPPA_TABLE:
      for (const auto& r : kBetaRef) {
        add(r.input, optimal_beta(r.input), r.value);
        t.rows.back().alternative = optimal_beta(r.input, BetaEquation::Stationarity);
      }
      break;
  }
  return t;
}

// ---------------------------------------------------------------------------

SandwichReport verify_sandwich(const ProblemSpec& spec, const std::vector<std::uint64_t>& n_grid,
                               const std::vector<TheoremId>& theorems, ConstantMode mode,
                               const SandwichOptions& options) {
  SandwichReport rep;
  rep.spec = spec;
  if (n_grid.empty()) return rep;
  const std::uint64_t n_max = *std::max_element(n_grid.begin(), n_grid.end());
  if (n_max == 0) throw Error(Errc::InvalidArgument, "n must be at least 1");
  const auto weight = WeightFunction::for_problem(spec);
  const auto seq = singular_values(weight, n_max);

  std::vector<double> majorant;
  const bool with_majorant = options.check_majorant && spec.target == Target::H1;
  if (with_majorant) {
    std::vector<double> sm(spec.s), qm(spec.dim(), 2.0);
    for (double& v : sm) v -= 1.0;
    const auto mspec = make_problem(sm, qm, Target::L2);
    majorant = singular_values(WeightFunction::tensor(mspec), n_max).values;
  }

  const double tol = options.rel_tol;
  for (std::uint64_t n : n_grid) {
    if (n == 0) throw Error(Errc::InvalidArgument, "n must be at least 1");
    SandwichRow row;
    row.n = n;
    row.exact = seq.values[n - 1];
    if (options.include_lower && spec.target == Target::L2) {
      const auto lo = lower_bound_krieg(spec, n);
      if (lo.applicable) {
        row.lower = lo.value;
        if (lo.value > row.exact * (1.0 + tol))
          rep.violations.push_back({n, "LOWER_KRIEG", row.exact, lo.value});
      }
    }
    for (TheoremId id : theorems) {
      const auto ub = upper_bound(spec, n, id, mode, options.params);
      const double v = ub.value * options.upper_scale;
      row.uppers.push_back({id, v, ub.applicable});
      if (ub.applicable && row.exact > v * (1.0 + tol))
        rep.violations.push_back({n, std::string(to_string(id)), row.exact, v});
    }
    if (with_majorant) {
      row.majorant = majorant[n - 1];
      if (row.exact > *row.majorant * (1.0 + tol))
        rep.violations.push_back({n, "MAJORANT", row.exact, *row.majorant});
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<RatioPoint> asymptotic_ratio_trace(const ProblemSpec& spec,
                                               const std::vector<std::uint64_t>& checkpoints) {
  if (checkpoints.empty()) return {};
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 3) throw Error(Errc::InvalidArgument, "checkpoints must be >= 3");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw Error(Errc::InvalidArgument, "checkpoints must be increasing");
  }
  const auto weight = WeightFunction::for_problem(spec);
  const auto seq = singular_values(weight, checkpoints.back());
  const double s1 = spec.s[0];
  const double logpow = (static_cast<double>(spec.nu) - 1.0) * s1;
  std::vector<RatioPoint> out;
  for (std::uint64_t n : checkpoints) {
    const double nn = static_cast<double>(n);
    const double a = seq.values[n - 1];
    out.push_back({n, a, std::pow(nn, s1) * a / std::pow(std::log(nn), logpow)});
  }
  return out;
}

std::vector<CountRatioPoint> counting_ratio_trace(const ProblemSpec& spec,
                                                  const std::vector<double>& radii) {
  const double s1 = spec.s[0];
  const double target = std::pow(asymptotic_constant(spec), 1.0 / s1);
  std::vector<CountRatioPoint> out;
  for (double r : radii) {
    const auto c = count_exact(spec, r);
    const double cd = static_cast<double>(c.value);
    const double denom = std::pow(r, 1.0 / s1) * std::pow(std::log(cd), double(spec.nu) - 1.0);
    out.push_back({r, c.value, cd / denom, target});
  }
  return out;
}

// ---------------------------------------------------------------------------

double SequenceRule::log_term(std::uint64_t j) const {
  const double jd = static_cast<double>(j);
  switch (kind) {
    case Kind::Power: return -param * std::log(jd);
    case Kind::Geometric: return jd * std::log(param);
    case Kind::Single: return j == 1 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double SequenceRule::power_sum(double beta) const {
  switch (kind) {
    case Kind::Power: return param / beta > 1.0 + 1e-9 ? zeta(param / beta) : kInf;
    case Kind::Geometric: {
      const double y = std::pow(param, 1.0 / beta);
      return y / (1.0 - y);
    }
    case Kind::Single: return 1.0;
  }
  return kInf;
}

TensorMergeReport tensor_merge_check(const SequenceRule& a, const SequenceRule& b,
                                     std::uint64_t n_max, double alpha, double beta,
                                     double lambda) {
  if (n_max < 2) throw Error(Errc::InvalidArgument, "n_max must be at least 2");
  for (const auto* rule : {&a, &b}) {
    if (rule->kind == SequenceRule::Kind::Power && !(rule->param > 0.0))
      throw Error(Errc::InvalidArgument, "power rule needs a positive exponent");
    if (rule->kind == SequenceRule::Kind::Geometric && !(rule->param > 0.0 && rule->param < 1.0))
      throw Error(Errc::InvalidArgument, "geometric rule needs a ratio in (0, 1)");
  }
  MonotoneGrid grid;
  grid.dim = 2;
  grid.sign_symmetric = false;
  grid.log_value = [&a, &b](std::span<const std::int64_t> k) {
    return a.log_term(static_cast<std::uint64_t>(k[0]) + 1) +
           b.log_term(static_cast<std::uint64_t>(k[1]) + 1);
  };
  EnumerateOptions opts;
  opts.complete_last_plateau = false;
  const auto seq = rearrange(grid, n_max, opts);

  TensorMergeReport rep;
  rep.target = lambda * std::pow(b.power_sum(beta), beta);
  std::vector<std::uint64_t> marks;
  for (std::uint64_t n = 10; n < n_max; n *= 10) marks.push_back(n);
  marks.push_back(n_max);
  for (std::uint64_t n : marks) {
    if (n > seq.values.size()) break;
    const double nn = static_cast<double>(n);
    const double c = seq.values[n - 1];
    const double ratio = std::pow(nn, beta) * c / std::pow(std::log(nn), alpha);
    rep.trace.push_back({n, c, std::exp(a.log_term(n)), ratio});
  }
  return rep;
}

}  // namespace mixsn
