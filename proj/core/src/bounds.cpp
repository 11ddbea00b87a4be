#include "mixsn/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mixsn/error.hpp"
#include "mixsn/specfun.hpp"

namespace mixsn {

namespace {

constexpr double kZetaBoundConst = 3.2326;
constexpr double kPrintedJumpConst = 38.02;

struct NamedTheorem {
  TheoremId id;
  std::string_view name;
};

constexpr std::array<NamedTheorem, 14> kNames = {{
    {TheoremId::SMALL, "SMALL"},
    {TheoremId::SMALLBBB, "SMALLBBB"},
    {TheoremId::SMALLB, "SMALLB"},
    {TheoremId::SMALLBCB, "SMALLBCB"},
    {TheoremId::SMALLDD_Q, "SMALLDD_Q"},
    {TheoremId::JUMP_BIG_NU, "JUMP_BIG_NU"},
    {TheoremId::JUMP_SMALL_NU, "JUMP_SMALL_NU"},
    {TheoremId::JUMP_NU1, "JUMP_NU1"},
    {TheoremId::JUMP_REORDERED, "JUMP_REORDERED"},
    {TheoremId::LOGGROWTH, "LOGGROWTH"},
    {TheoremId::ENERGY_MAIN0, "ENERGY_MAIN0"},
    {TheoremId::ENERGY_MAIN1, "ENERGY_MAIN1"},
    {TheoremId::ENERGY_MAIN2, "ENERGY_MAIN2"},
    {TheoremId::LOWER_KRIEG, "LOWER_KRIEG"},
}};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Collects hypotheses and which of them fail.
class Hypotheses {
 public:
  void require(bool ok, std::string what) {
    if (!stated_.empty()) stated_ += ", ";
    stated_ += what;
    if (!ok) {
      if (!failed_.empty()) failed_ += ", ";
      failed_ += what;
    }
  }
  void note(std::string extra) { extra_ += "; " + extra; }
  bool ok() const { return failed_.empty(); }
  std::string text() const {
    std::string out = "requires " + stated_ + extra_;
    if (!failed_.empty()) out += "; violated: " + failed_;
    return out;
  }

 private:
  std::string stated_;
  std::string failed_;
  std::string extra_;
};

bool all_q_equal(const ProblemSpec& spec, double q) {
  return std::all_of(spec.q.begin(), spec.q.end(), [q](double v) { return v == q; });
}

bool const_finite_q_ge1(const ProblemSpec& spec) {
  return spec.constant_fine_index() && spec.q[0] >= 1.0 && std::isfinite(spec.q[0]);
}

// (c / n)^e expressed as a RateReport.
RateReport power_rate(double c, double e, double prefactor = 1.0) {
  RateReport r;
  r.gamma = e;
  r.constant = prefactor * std::pow(c, e);
  r.form = (prefactor != 1.0 ? num(prefactor) + "*" : std::string()) + "(" + num(c) + "/n)^" + num(e);
  return r;
}

RateReport pure_rate(double gamma) {
  RateReport r;
  r.gamma = gamma;
  r.constant = 1.0;
  r.form = "n^-" + num(gamma);
  return r;
}

double eval(const RateReport& r, double n) { return r.constant * std::pow(n, -r.gamma); }

double log2_or_zero(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

double c_of_d_any(int d) {
  if (d < 3) return kInf;
  return c_of_d(d);
}

}  // namespace

std::string_view to_string(TheoremId id) noexcept {
  for (const auto& t : kNames)
    if (t.id == id) return t.name;
  return "UNKNOWN";
}

TheoremId theorem_from_string(std::string_view name) {
  for (const auto& t : kNames)
    if (t.name == name) return t.id;
  throw Error(Errc::UnknownTheorem, "no theorem named '" + std::string(name) + "'");
}

const std::vector<TheoremId>& upper_bound_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& t : kNames)
      if (t.id != TheoremId::LOWER_KRIEG) v.push_back(t.id);
    return v;
  }();
  return ids;
}

std::string_view to_string(ConstantMode mode) noexcept {
  return mode == ConstantMode::AsPrinted ? "AsPrinted" : "DerivationSafe";
}

double c_of_d(int d) {
  if (d < 3) throw Error(Errc::InvalidArgument, "C(d) needs d >= 3");
  const double m = d - 1.0;
  return std::pow(1.0 + (1.0 + 2.0 / std::log2(m)) / m, m);
}

double delta_of_d(int d) {
  const double m = d - 1.0;
  return (m - std::log(c_of_d(d))) / (m * (1.0 + std::log2(m)));
}

double c_t_d(double t, int d) {
  if (d < 2) throw Error(Errc::InvalidArgument, "C(t,d) needs d >= 2");
  return std::exp(kZetaBoundConst / (std::pow(2.0, t) * std::pow(d - 1.0, t - 1.0)));
}

double c_alpha_beta(double alpha, double beta) {
  return 6.0 / std::pow(2.0, 1.0 / beta) * (zeta(alpha * beta) - 1.0);
}

double gamma_rate(double n, double beta, int d) {
  if (!(n >= 2.0)) throw Error(Errc::InvalidArgument, "gamma_rate needs n >= 2");
  if (!(beta > 2.0)) throw Error(Errc::InvalidArgument, "gamma_rate needs beta > 2");
  return (1.0 - 2.0 / beta) / (1.0 + std::log2(2.0 + beta * (d - 1.0) / std::log(n)));
}

double gamma_star(double n, int d) {
  if (!(n >= 2.0)) throw Error(Errc::InvalidArgument, "gamma_star needs n >= 2");
  const double kappa = (d - 1.0) / std::log(n);
  return gamma_rate(n, std::pow(4.0 * kappa + 1.0, 11.0 / 8.0), d);
}

double gamma_krieg(double n, int d) {
  if (!(n > 2.0)) throw Error(Errc::InvalidArgument, "gamma_krieg needs n > 2");
  return std::log2(1.0 + 2.0 * d / (std::log(n) / std::log(3.0)));
}

BoundResult upper_bound(const ProblemSpec& spec, std::uint64_t n, TheoremId id, ConstantMode mode,
                        const BoundParams& params) {
  if (n == 0) throw Error(Errc::InvalidArgument, "n must be at least 1");
  BoundResult res;
  res.theorem_id = id;
  res.constant_mode = mode;
  const double nn = static_cast<double>(n);
  const int d = static_cast<int>(spec.dim());
  const double s1 = spec.s[0];
  const double q1 = spec.q[0];
  const bool l2 = spec.target == Target::L2;
  const double jump_const =
      mode == ConstantMode::AsPrinted ? kPrintedJumpConst : std::exp(1.5 * kZetaBoundConst);
  Hypotheses h;

  switch (id) {
    case TheoremId::SMALL:
      h.require(l2, "target L2");
      h.require(spec.constant_smoothness(), "constant s");
      h.require(all_q_equal(spec, 1.0), "q = 1");
      h.require(d >= 2, "d >= 2");
      h.require(n >= 6, "n >= 6");
      res.rate = power_rate(16.0 / 3.0, s1 / (1.0 + std::log2(d)));
      break;

    case TheoremId::SMALLBBB:
      h.require(l2, "target L2");
      h.require(spec.constant_smoothness(), "constant s");
      h.require(all_q_equal(spec, 1.0), "q = 1");
      h.require(d >= 3, "d >= 3");
      h.require(n >= 2, "n >= 2");
      res.rate = power_rate(c_of_d_any(d), s1 / (1.0 + log2_or_zero(d - 1.0)));
      break;

    case TheoremId::SMALLB: {
      if (!params.beta) throw Error(Errc::MissingParameter, "SMALLB needs beta");
      const double beta = *params.beta;
      h.require(l2, "target L2");
      h.require(spec.constant_smoothness(), "constant s");
      h.require(all_q_equal(spec, 1.0), "q = 1");
      h.require(d >= 2, "d >= 2");
      h.require(beta > 2.0, "beta > 2");
      h.require(n >= 2 && std::log(nn) <= d - 1.0, "2 <= n <= e^(d-1)");
      h.note("proof range n <= e^(beta(d-1)/2) = e^" + num(beta * (d - 1.0) / 2.0));
      const double g = n >= 2 && beta > 2.0
                           ? gamma_rate(nn, beta, d)
                           : (1.0 - 2.0 / beta) / (1.0 + std::log2(2.0 + beta * (d - 1.0) / std::log(nn)));
      res.rate = pure_rate(g * s1);
      break;
    }

    case TheoremId::SMALLBCB:
    case TheoremId::SMALLDD_Q: {
      const bool dd = id == TheoremId::SMALLDD_Q;
      const int part = dd ? params.part : 2;
      if (part != 1 && part != 2)
        throw Error(Errc::InvalidArgument, "SMALLDD_Q part must be 1 or 2");
      const double qdiv = dd ? q1 : 1.0;
      h.require(l2, "target L2");
      h.require(spec.constant_smoothness(), "constant s");
      if (dd)
        h.require(const_finite_q_ge1(spec), "constant finite q >= 1");
      else
        h.require(all_q_equal(spec, 1.0), "q = 1");
      if (part == 1) {
        h.require(d >= 3, "d >= 3");
        h.require(n >= 2, "n >= 2");
        res.rate = power_rate(c_of_d_any(d), s1 / (qdiv * (1.0 + log2_or_zero(d - 1.0))));
      } else {
        h.require(d >= 7, "d >= 7");
        h.require(n >= 2 && std::log(nn) <= d - 1.0, "2 <= n <= e^(d-1)");
        const double g = n >= 2 && d >= 2 ? gamma_star(nn, d) : 0.0;
        res.rate = pure_rate(g * s1 / qdiv);
      }
      break;
    }

    case TheoremId::JUMP_BIG_NU: {
      const double nu = static_cast<double>(spec.nu);
      h.require(l2, "target L2");
      h.require(const_finite_q_ge1(spec), "constant finite q >= 1");
      h.require(spec.nu >= 5 && spec.nu < spec.dim(), "5 <= nu < d");
      if (spec.nu < spec.dim()) {
        const double t = spec.s[spec.nu] / s1;
        const double need = std::log2(d - nu) / (1.0 + log2_or_zero(nu - 1.0));
        h.require(t >= need, "s_(nu+1)/s_1 >= log2(d-nu)/(1+log2(nu-1)) = " + num(need));
      }
      res.rate = power_rate(jump_const, s1 / (q1 * (1.0 + log2_or_zero(nu - 1.0))));
      break;
    }

    case TheoremId::JUMP_SMALL_NU: {
      const double nu = static_cast<double>(spec.nu);
      h.require(l2, "target L2");
      h.require(const_finite_q_ge1(spec), "constant finite q >= 1");
      h.require(spec.nu >= 1 && spec.nu < std::min<std::size_t>(5, spec.dim()), "1 <= nu < min(5, d)");
      if (spec.nu < spec.dim()) {
        const double t = spec.s[spec.nu] / s1;
        const double need = std::max(1.5, std::log2(d - nu) / 2.0);
        h.require(t >= need, "s_(nu+1)/s_1 >= max(1.5, log2(d-nu)/2) = " + num(need));
      }
      const double c = std::exp(4.0) * std::pow(std::numbers::pi * std::numbers::pi / 3.0 - 1.0, nu - 1.0);
      res.rate = power_rate(c, s1 / (2.0 * q1));
      break;
    }

    case TheoremId::JUMP_NU1: {
      h.require(l2, "target L2");
      h.require(const_finite_q_ge1(spec), "constant finite q >= 1");
      h.require(d >= 5, "d >= 5");
      h.require(spec.nu == 1 && d >= 2, "s_1 < s_2 (nu = 1)");
      const double t = d >= 2 ? spec.s[1] / s1 : 1.0;
      const double c = d >= 2 ? c_t_d(t, d) : kInf;
      res.rate = power_rate(c, s1 / (q1 * (1.0 + log2_or_zero(d - 1.0))));
      break;
    }

    case TheoremId::JUMP_REORDERED: {
      h.require(l2, "target L2");
      const bool finite_q = std::all_of(spec.q.begin(), spec.q.end(), [](double v) { return std::isfinite(v); });
      const double qmin = *std::min_element(spec.q.begin(), spec.q.end());
      h.require(finite_q && qmin > 1.0, "finite q with min q_j > 1");
      std::vector<double> r(spec.dim());
      for (std::size_t j = 0; j < spec.dim(); ++j) r[j] = spec.s[j] / spec.q[j];
      std::sort(r.begin(), r.end());
      const auto mu = static_cast<std::size_t>(std::count(r.begin(), r.end(), r[0]));
      const double mud = static_cast<double>(mu);
      h.require(mu >= 5 && mu < spec.dim(), "5 <= mu < d (mu = #{j : s_j/q_j = r_1})");
      if (mu < spec.dim()) {
        const double t = r[mu] / r[0];
        const double need = std::log2(d - mud) / (1.0 + log2_or_zero(mud - 1.0));
        h.require(t >= need, "r_(mu+1)/r_1 >= log2(d-mu)/(1+log2(mu-1)) = " + num(need));
      }
      res.rate = power_rate(jump_const, r[0] / (1.0 + log2_or_zero(mud - 1.0)));
      break;
    }

    case TheoremId::LOGGROWTH: {
      if (!params.alpha) throw Error(Errc::MissingParameter, "LOGGROWTH needs alpha");
      const double alpha = *params.alpha;
      // Largest beta with s_j >= (1 + beta log2 j) s_1 for all j.
      double beta_max = kInf;
      for (std::size_t j = 1; j < spec.dim(); ++j)
        beta_max = std::min(beta_max, (spec.s[j] / s1 - 1.0) / std::log2(j + 1.0));
      const double beta = params.beta.value_or(spec.dim() == 1 ? 1.0 : beta_max);
      h.require(l2, "target L2");
      h.require(const_finite_q_ge1(spec), "constant finite q >= 1");
      h.require(d >= 2, "d >= 2");
      h.require(beta > 0.0 && std::isfinite(beta), "beta > 0");
      h.require(beta <= beta_max * (1.0 + 1e-12), "s_j >= (1 + beta log2 j) s_1");
      h.require(alpha > 1.0 / beta, "alpha > 1/beta");
      h.require(alpha > 1.0, "alpha > 1");
      if (alpha > 1.0 && beta > 0.0 && alpha * beta > 1.0 + 1e-9 && std::isfinite(beta)) {
        const double c = a_alpha(alpha) * std::exp(c_alpha_beta(alpha, beta));
        res.rate = power_rate(c, s1 / (alpha * q1));
      } else {
        res.rate.gamma = 0.0;
        res.rate.constant = kInf;
        res.rate.form = "undefined";
      }
      h.note("beta = " + num(beta));
      break;
    }

    case TheoremId::ENERGY_MAIN0:
    case TheoremId::ENERGY_MAIN1:
    case TheoremId::ENERGY_MAIN2: {
      h.require(spec.target == Target::H1, "target H1");
      h.require(spec.constant_smoothness(), "constant s");
      h.require(s1 > 1.0, "s > 1");
      if (id == TheoremId::ENERGY_MAIN0) {
        h.require(d >= 3, "d >= 3");
        h.require(n >= 2, "n >= 2");
        res.rate = power_rate(c_of_d_any(d), (s1 - 1.0) / (2.0 * (1.0 + log2_or_zero(d - 1.0))));
      } else if (id == TheoremId::ENERGY_MAIN1) {
        h.require(d >= 4, "d >= 4");
        h.require(n >= 8, "n >= 8");
        res.rate = power_rate(std::exp(2.0), (s1 - 1.0) / (2.0 * log2_or_zero(d)));
      } else {
        const double need = 1.0 + std::max(std::pow(2.0, s1 - 1.0), std::pow(2.0, 1.0 / (s1 - 1.0)));
        h.require(d >= need, "d >= 1 + max(2^(s-1), 2^(1/(s-1))) = " + num(need));
        const double c = std::numbers::e * (2.154 + 3.0 / d);
        res.rate = power_rate(c, s1 / (2.0 * (1.0 + log2_or_zero(d - 1.0))), std::sqrt(double(d)));
      }
      break;
    }

    case TheoremId::LOWER_KRIEG:
      return lower_bound_krieg(spec, n);
  }

  res.value = eval(res.rate, nn);
  res.applicable = h.ok() && std::isfinite(res.value) && res.value > 0.0;
  res.validity_note = h.text();
  return res;
}

BoundResult lower_bound_krieg(const ProblemSpec& spec, std::uint64_t n) {
  BoundResult res;
  res.theorem_id = TheoremId::LOWER_KRIEG;
  const int d = static_cast<int>(spec.dim());
  const double s = spec.s[0];
  const double q = spec.q[0];
  const double nn = static_cast<double>(n);
  Hypotheses h;
  h.require(spec.target == Target::L2, "target L2");
  h.require(spec.constant_smoothness(), "constant s");
  h.require(const_finite_q_ge1(spec), "constant finite q >= 1");
  h.require(d >= 2, "d >= 2");
  const double top = std::pow(3.0, d);
  if (q == 1.0)
    h.require(nn >= 3.0 && nn <= top, "3 <= n <= 3^d");
  else
    h.require(nn > 2.0 && nn <= top, "2 < n <= 3^d");
  const double g = n > 2 ? gamma_krieg(nn, d) : kInf;
  res.rate.gamma = s / (q * g);
  res.rate.constant = std::pow(2.0, -s / q);
  res.rate.form = num(res.rate.constant) + "*n^-(s/(q*gamma(n,d)))";
  res.value = eval(res.rate, nn);
  res.applicable = h.ok();
  res.validity_note = h.text();
  return res;
}

BoundResult lower_bound_krieg(std::size_t d, double s, double q, std::uint64_t n) {
  const std::vector<double> sv(d, s);
  const std::vector<double> qv(d, q);
  return lower_bound_krieg(make_problem(d, sv, qv), n);
}

double asymptotic_constant(const ProblemSpec& spec, bool sobolev_integer) {
  const double s1 = spec.s[0];
  const std::size_t nu = spec.nu;
  double c = std::pow(2.0, double(nu)) / std::tgamma(double(nu));
  if (sobolev_integer) {
    for (double v : spec.s)
      if (v != std::floor(v))
        throw Error(Errc::InvalidArgument, "integer Sobolev constant needs integer smoothness");
    for (std::size_t j = nu; j < spec.dim(); ++j)
      c *= sobolev_factor(static_cast<int>(spec.s[j]), static_cast<int>(s1));
  } else {
    for (std::size_t j = nu; j < spec.dim(); ++j) c *= b_factor(spec.s[j], s1, spec.q[j]);
  }
  return std::pow(c, s1);
}

ImprovementRegion improvement_region_check(int d, std::optional<double> delta) {
  if (d < 7) throw Error(Errc::InvalidArgument, "improvement region needs d >= 7");
  ImprovementRegion out;
  const double m = d - 1.0;
  out.lower = 4.0 * std::pow(m, 0.6);
  out.upper = 2.0 * m / 7.0;
  out.empty = !(out.lower <= out.upper);
  if (delta) {
    const double dl = *delta;
    if (!(dl > 0.0 && dl < 1.0)) throw Error(Errc::InvalidArgument, "delta must lie in (0, 1)");
    out.delta = dl;
    const double bracket = std::pow(m, 1.0 - dl) / std::pow(2.0, 1.0 + dl) - 1.0;
    out.delta_upper = m;
    out.delta_lower = bracket > 0.0 ? m / (dl * bracket) : kInf;
    out.delta_empty = !(out.delta_lower < out.delta_upper);
  }
  return out;
}

double LogGrowthRule::s(std::size_t j) const {
  return s1 * (1.0 + beta * std::log2(static_cast<double>(j)));
}

TractabilityReport tractability_verdict(const LogGrowthRule& rule, double tau, std::size_t d_max) {
  if (!(rule.s1 > 0.0)) throw Error(Errc::NonPositiveSmoothness, "s_1 must be positive");
  if (!(rule.beta >= 0.0)) throw Error(Errc::InvalidArgument, "beta must be nonnegative");
  if (!(tau > 0.0)) throw Error(Errc::InvalidArgument, "tau must be positive");
  if (d_max == 0) throw Error(Errc::InvalidArgument, "d_max must be at least 1");
  TractabilityReport r;
  r.product_defined = 2.0 * tau * rule.s1 > 1.0 + 1e-9;
  r.partial_product = 1.0;
  for (std::size_t j = 1; j <= d_max; ++j) {
    const double sj = rule.s(j);
    r.partial_sum += std::pow(2.0, -2.0 * tau * sj);
    if (r.product_defined) r.partial_product *= 2.0 * zeta(2.0 * tau * sj) - 1.0;
  }
  if (!r.product_defined) r.partial_product = kInf;
  // 2^{-2 tau s_j} = 2^{-2 tau s_1} j^{-2 tau s_1 beta}.
  r.sum_converges = 2.0 * tau * rule.s1 * rule.beta > 1.0;
  r.limsup_finite = rule.beta > 0.0;
  r.limsup = r.limsup_finite ? std::numbers::ln2 / (rule.s1 * rule.beta) : kInf;
  r.tau_threshold = r.limsup_finite ? 1.0 / (2.0 * rule.s1 * rule.beta) : kInf;
  r.strongly_tractable = r.sum_converges && r.product_defined;
  return r;
}

}  // namespace mixsn
