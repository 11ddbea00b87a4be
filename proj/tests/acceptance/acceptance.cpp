// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mixsn/bounds.hpp"
#include "mixsn/count.hpp"
#include "mixsn/enumerate.hpp"
#include "mixsn/harness.hpp"
#include "mixsn/problem.hpp"
#include "mixsn/specfun.hpp"

using namespace mixsn;

namespace {

// Pinned tolerances.
constexpr double kTableAbsTol = 1e-3;
constexpr double kBetaRelTol = 5e-3;
constexpr double kBetaAnchor = 9.59824;
constexpr double kBetaAnchorTol = 1e-2;
constexpr double kGammaRate = 0.174528;
constexpr double kGammaStar = 0.174462;
constexpr double kGammaTol = 1e-5;
constexpr double kOracleRelTol = 1e-12;
constexpr double kScalingRelTol = 1e-12;
constexpr double kZetaRelTol = 1e-12;
constexpr double kZeta3Bound = 1.2021;
constexpr double kWn2bConstant = 3.2326;
constexpr double kAsymptoticTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

std::vector<double> filled(std::size_t d, double v) { return std::vector<double>(d, v); }

// Smoothness patterns: constant, one jump after the first coordinate, half.
std::vector<std::vector<double>> smoothness_patterns(std::size_t d) {
  std::vector<double> jumped(d, 2.0);
  jumped[0] = 1.0;
  return {filled(d, 1.0), jumped, filled(d, 0.5)};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// 1. C(d) table
void c1(Outcome& o) {
  const auto t = reproduce_table(TableId::CD_TABLE);
  double worst = 0.0;
  if (t.rows.size() != 24) o.fail("expected 24 rows, got " + std::to_string(t.rows.size()));
  for (const auto& r : t.rows) {
    worst = std::max(worst, r.abs_error);
    if (!(r.abs_error <= kTableAbsTol)) o.fail("d = " + std::to_string(int(r.input)) + " off");
  }
  o.detail << (o.pass ? "" : "; ") << "24 rows, max abs error " << worst;
}

// 2. beta(kappa) table
void c2(Outcome& o) {
  const auto t = reproduce_table(TableId::BETA_KAPPA_TABLE);
  double worst = 0.0;
  if (t.rows.size() != 16) o.fail("expected 16 rows, got " + std::to_string(t.rows.size()));
  for (const auto& r : t.rows) {
    const double rel = r.abs_error / r.reference_value;
    worst = std::max(worst, rel);
    if (!(rel <= kBetaRelTol)) o.fail("kappa = " + std::to_string(r.input) + " off");
  }
  const double b1 = optimal_beta(1.0);
  if (!(std::abs(b1 - kBetaAnchor) <= kBetaAnchorTol)) o.fail("optimal_beta(1) off");
  o.detail << (o.pass ? "" : "; ") << "16 rows, max rel error " << worst << ", beta(1) = " << b1;
}

// 3. delta(d) table
void c3(Outcome& o) {
  const auto t = reproduce_table(TableId::DELTA_D_TABLE);
  double worst = 0.0;
  if (t.rows.size() != 12) o.fail("expected 12 rows, got " + std::to_string(t.rows.size()));
  for (const auto& r : t.rows) {
    worst = std::max(worst, r.abs_error);
    if (!(r.abs_error <= kTableAbsTol)) o.fail("d = " + std::to_string(int(r.input)) + " off");
  }
  o.detail << (o.pass ? "" : "; ") << "12 rows, max abs error " << worst;
}

// 4. gamma anchors
void c4(Outcome& o) {
  double worst_rate = 0.0;
  double worst_star = 0.0;
  for (int d : {3, 10, 50}) {
    const double n = std::exp(double(d - 1));
    worst_rate = std::max(worst_rate, std::abs(gamma_rate(n, kBetaAnchor, d) - kGammaRate));
    worst_star = std::max(worst_star, std::abs(gamma_star(n, d) - kGammaStar));
  }
  if (!(worst_rate <= kGammaTol)) o.fail("gamma_rate off");
  if (!(worst_star <= kGammaTol)) o.fail("gamma_star off");
  o.detail << (o.pass ? "" : "; ") << "|gamma - 0.174528| = " << worst_rate
           << ", |gamma* - 0.174462| = " << worst_star;
}

// 5. oracle equivalence
void c5(Outcome& o) {
  constexpr std::uint64_t n_max = 10000;
  int configs = 0;
  double worst = 0.0;
  for (std::size_t d = 1; d <= 4; ++d) {
    for (double q : {1.0, 2.0, kInf}) {
      for (const auto& s : smoothness_patterns(d)) {
        const auto spec = make_problem(s, filled(d, q));
        const auto weight = WeightFunction::tensor(spec);
        EnumerateOptions opts;
        opts.complete_last_plateau = false;
        const auto seq = singular_values(weight, n_max, opts);
        const auto bf = brute_force_an(spec, n_max);
        ++configs;
        if (seq.values.size() != bf.size()) {
          o.fail("length mismatch");
          continue;
        }
        for (std::size_t i = 0; i < bf.size(); ++i) {
          const double e = rel_err(seq.values[i], bf[i]);
          worst = std::max(worst, e);
          const bool ok = weight.exact() ? seq.values[i] == bf[i] : e <= kOracleRelTol;
          if (!ok) {
            o.fail("mismatch at d = " + std::to_string(d) + ", n = " + std::to_string(i + 1));
            break;
          }
        }
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << configs << " configurations to n = " << n_max
           << ", max rel error " << worst;
}

// 6. q = inf plateau
void c6(Outcome& o) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto edge = static_cast<std::uint64_t>(std::pow(3.0, double(d)));
    for (double s : {1.0, 2.5}) {
      const auto spec = make_problem(filled(d, s), filled(d, kInf));
      EnumerateOptions opts;
      opts.complete_last_plateau = false;
      const auto seq = singular_values(WeightFunction::tensor(spec), edge + 1, opts);
      for (std::uint64_t n = 0; n < edge; ++n)
        if (seq.values[n] != 1.0) o.fail("a_n < 1 inside the plateau at d = " + std::to_string(d));
      if (!(seq.values[edge] < 1.0)) o.fail("a_{3^d+1} = 1 at d = " + std::to_string(d));
    }
  }
  o.detail << (o.pass ? "" : "; ") << "d = 1..6, s in {1, 2.5}";
}

// 7. scaling law
void c7(Outcome& o) {
  constexpr std::uint64_t n_max = 1000;
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    for (double q : {1.0, 2.0, kInf}) {
      for (const auto& s : smoothness_patterns(d)) {
        const auto base = singular_values(WeightFunction::tensor(make_problem(s, filled(d, q))), n_max);
        for (double lambda : {0.5, 2.0, 3.0}) {
          std::vector<double> ls = s;
          for (double& v : ls) v *= lambda;
          const auto scaled =
              singular_values(WeightFunction::tensor(make_problem(ls, filled(d, q))), n_max);
          for (std::uint64_t n = 0; n < n_max; ++n) {
            const double e = rel_err(scaled.values[n], std::pow(base.values[n], lambda));
            worst = std::max(worst, e);
            if (!(e <= kScalingRelTol)) {
              o.fail("scaling broken at n = " + std::to_string(n + 1));
              break;
            }
          }
        }
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << "max rel error " << worst;
}

// 8. sandwich suite
void c8(Outcome& o) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = 2; n <= 1000; ++n) grid.push_back(n);
  std::vector<TheoremId> l2_ids;
  for (TheoremId id : upper_bound_theorems())
    if (id != TheoremId::ENERGY_MAIN0 && id != TheoremId::ENERGY_MAIN1 && id != TheoremId::ENERGY_MAIN2)
      l2_ids.push_back(id);
  SandwichOptions opts;
  opts.params.beta = kBetaAnchor;
  opts.params.alpha = 2.0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  for (std::size_t d = 3; d <= 10; ++d)
    for (double s : {1.0, 2.0})
      for (double q : {1.0, 2.0}) {
        const auto spec = make_problem(filled(d, s), filled(d, q));
        const auto rep = verify_sandwich(spec, grid, l2_ids, ConstantMode::DerivationSafe, opts);
        for (const auto& row : rep.rows)
          for (const auto& u : row.uppers) checks += u.applicable;
        violations += rep.violations.size();
      }

  std::vector<std::uint64_t> egrid;
  for (std::uint64_t n = 8; n <= 10000; ++n) egrid.push_back(n);
  const std::vector<TheoremId> energy_ids = {TheoremId::ENERGY_MAIN0, TheoremId::ENERGY_MAIN1,
                                             TheoremId::ENERGY_MAIN2};
  SandwichOptions eopts;
  eopts.include_lower = false;
  eopts.check_majorant = true;
  for (std::size_t d = 4; d <= 8; ++d) {
    const auto spec = make_problem(filled(d, 2.0), filled(d, 2.0), Target::H1);
    const auto rep = verify_sandwich(spec, egrid, energy_ids, ConstantMode::DerivationSafe, eopts);
    for (const auto& row : rep.rows)
      for (const auto& u : row.uppers) checks += u.applicable;
    violations += rep.violations.size();
  }
  if (violations) o.fail(std::to_string(violations) + " violations");
  if (checks == 0) o.fail("no applicable bound was checked");
  o.detail << (o.pass ? "" : "; ") << checks << " applicable upper-bound checks, " << violations
           << " violations";
}

// 9. counting
void c9(Outcome& o) {
  const std::vector<double> radii = {1.0, 1.5, 2.0, 3.0, 4.0, 7.5, 10.0, 16.0, 17.0, 25.0, 50.0, 64.0, 99.5, 100.0};
  std::size_t checks = 0;
  std::size_t upper_checks = 0;
  for (std::size_t d = 1; d <= 4; ++d)
    for (double q : {1.0, 2.0, kInf})
      for (const auto& s : smoothness_patterns(d)) {
        const auto spec = make_problem(s, filled(d, q));
        for (double r : radii) {
          const auto c = count_exact(spec, r);
          const auto bf = brute_force_count(spec, r);
          ++checks;
          if (c.value != bf) {
            o.fail("count mismatch at d = " + std::to_string(d) + ", r = " + std::to_string(r));
            continue;
          }
          if (std::isinf(q)) continue;
          const auto in = normalize_for_clever(spec, r);
          for (double alpha : {1.5, 2.0, 1.0 + std::log2(double(d) - 1.0)}) {
            if (!(alpha > 1.0)) continue;
            ++upper_checks;
            if (!(double(c.value) <= count_upper_clever(in.s, in.r, alpha)))
              o.fail("upper bound below count at d = " + std::to_string(d));
          }
        }
      }
  o.detail << (o.pass ? "" : "; ") << checks << " exact comparisons, " << upper_checks
           << " upper-bound comparisons";
}

// 10. zeta properties
void c10(Outcome& o) {
  const double pi = std::numbers::pi;
  const double e2 = rel_err(zeta(2.0), pi * pi / 6.0);
  const double e4 = rel_err(zeta(4.0), std::pow(pi, 4) / 90.0);
  if (!(e2 <= kZetaRelTol)) o.fail("zeta(2) off");
  if (!(e4 <= kZetaRelTol)) o.fail("zeta(4) off");
  if (!(zeta(3.0) < kZeta3Bound)) o.fail("zeta(3) >= 1.2021");
  for (double t : {1.5, 2.0, 3.0, 5.0, 8.0}) {
    const double v = 2.0 * zeta(t) - 1.0;
    const double p = std::pow(2.0, -t);
    if (!(1.0 + p <= v)) o.fail("lower zeta estimate fails at t = " + std::to_string(t));
    if (!(v <= 1.0 + p * (2.0 + 4.0 / (t - 1.0)))) o.fail("upper zeta estimate fails at t = " + std::to_string(t));
    if (t >= 3.0 && !(v < 1.0 + kWn2bConstant * p)) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "refined estimate fails at t = " << t << ": 2 zeta(t) - 1 = " << v << " >= " << 1.0 + kWn2bConstant * p
          << " (needs constant >= 16 (zeta(3) - 1) = " << 16.0 * (zeta(3.0) - 1.0) << ")";
      o.fail(msg.str());
    }
  }
  o.detail << (o.pass ? "" : "; ") << "rel error zeta(2) " << e2 << ", zeta(4) " << e4;
}

// 11. asymptotic constants (trend form)
void c11(Outcome& o) {
  for (std::size_t d : {2u, 3u}) {
    const auto spec = make_problem(filled(d, 1.0), filled(d, kInf));
    const auto trace = counting_ratio_trace(spec, {1e2, 1e3, 1e4});
    const double target = std::pow(2.0, double(d)) / std::tgamma(double(d));
    double prev = INFINITY;
    o.detail << "d=" << d << " errors";
    for (const auto& p : trace) {
      const double err = std::abs(p.ratio - target);
      o.detail << ' ' << err;
      if (!(err < prev)) o.fail("");
      prev = err;
    }
    o.detail << "; ";
  }
  const double pi = std::numbers::pi;
  const double c = asymptotic_constant(make_problem(std::vector<double>{1.0, 2.0}, filled(2, 1.0)));
  const double e = std::abs(c - 2.0 * (pi * pi / 3.0 - 1.0));
  if (!(e <= kAsymptoticTol)) o.fail("");
  o.detail << "constant error " << e;
}

// 12. tractability
void c12(Outcome& o) {
  const auto grow = tractability_verdict({1.0, 2.0}, 1.0, 10000);
  const auto flat = tractability_verdict({1.0, 0.0}, 1.0, 10000);
  const auto edge = tractability_verdict({1.0, 0.5}, 1.0, 10000);
  if (!(grow.strongly_tractable && grow.limsup_finite && grow.sum_converges)) o.fail("growing rule not tractable");
  if (flat.strongly_tractable || flat.limsup_finite || flat.sum_converges) o.fail("constant rule tractable");
  if (edge.strongly_tractable) o.fail("boundary rule tractable");
  o.detail << (o.pass ? "" : "; ") << "growing: " << grow.strongly_tractable
           << ", constant: " << flat.strongly_tractable << ", boundary: " << edge.strongly_tractable;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "C(d) table", 1.0, c1},
      {2, "beta(kappa) table", 1.0, c2},
      {3, "delta(d) table", 1.0, c3},
      {4, "gamma anchors", 1.0, c4},
      {5, "oracle equivalence", 120.0, c5},
      {6, "q = inf plateau", 10.0, c6},
      {7, "scaling law", 60.0, c7},
      {8, "sandwich suite", 300.0, c8},
      {9, "counting", 60.0, c9},
      {10, "zeta properties", 1.0, c10},
      {11, "asymptotic constants", 60.0, c11},
      {12, "tractability", 1.0, c12},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    o.detail.precision(3);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.fail("; over time budget");
    failures += !o.pass;
    std::printf("%s %2d  %-22s %8.3fs / %gs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
