#include "mixsn/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mixsn/error.hpp"

namespace mixsn {

namespace {

// B_{2j} / (2j)! for j = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

constexpr double kRelTol = 1e-17;

// Sum of (a+k)^{-t} until terms stop mattering; used when t is large.
double hurwitz_direct(double t, double a) {
  double sum = 0.0;
  for (double k = 0.0;; k += 1.0) {
    const double term = std::pow(a + k, -t);
    sum += term;
    if (term <= kRelTol * sum) break;
  }
  return sum;
}

}  // namespace

double hurwitz_zeta(double t, double a) {
  if (!(t > 1.0 + 1e-9))
    throw Error(Errc::DivergentArgument, "zeta argument must exceed 1, got " + std::to_string(t));
  if (!(a > 0.0)) throw Error(Errc::InvalidArgument, "Hurwitz shift must be positive");
  if (t > 60.0 && a < 1e3) return hurwitz_direct(t, a);

  // Euler-Maclaurin with the remainder starting at x = a + N.
  const double x_min = std::max(15.0, t);
  const int n = a >= x_min ? 0 : static_cast<int>(std::ceil(x_min - a));
  double head = 0.0;
  for (int k = n - 1; k >= 0; --k) head += std::pow(a + k, -t);
  const double x = a + n;
  const double xt = std::pow(x, -t);
  double tail = x * xt / (t - 1.0) + 0.5 * xt;
  double rising = t;         // t (t+1) ... (t+2j-2)
  double xpow = xt / x;      // x^{-t-2j+1}
  const double inv_x2 = 1.0 / (x * x);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const double term = kBernoulliOverFactorial[j] * rising * xpow;
    tail += term;
    if (std::abs(term) <= kRelTol * (head + tail)) break;
    const double m = 2.0 * static_cast<double>(j + 1);
    rising *= (t + m - 1.0) * (t + m);
    xpow *= inv_x2;
  }
  return head + tail;
}

double zeta(double t) { return hurwitz_zeta(t, 1.0); }

double a_alpha(double alpha) {
  if (!(alpha > 1.0))
    throw Error(Errc::AlphaTooSmall, "A_alpha needs alpha > 1, got " + std::to_string(alpha));
  if (alpha >= std::log2(3.0)) return 1.0;
  // (2x-1)/x^alpha increases up to x* = alpha / (2(alpha-1)) and decreases after.
  const double peak = alpha / (2.0 * (alpha - 1.0));
  auto f = [alpha](double m) { return (2.0 * m - 1.0) / std::pow(m, alpha); };
  const double lo = std::max(1.0, std::floor(peak));
  return std::max({1.0, f(lo), f(lo + 1.0)});
}

double omega_m(int m, long long ell) {
  if (m < 1) throw Error(Errc::InvalidArgument, "omega_m needs m >= 1");
  const double l2 = static_cast<double>(ell) * static_cast<double>(ell);
  double acc = 1.0;
  for (int n = 0; n < m; ++n) acc = acc * l2 + 1.0;
  return std::sqrt(acc);
}

namespace {

// 1 + 2 sum_{m>=1} f(m) where f(m) = m^{-p} g(m^{-step}) and g has the power
// series coefficients `coef`. Terms below m0 come from `direct`.
template <class Direct>
double symmetric_series(double p, double step, long long m0, const std::vector<double>& coef,
                        Direct direct) {
  double head = 0.0;
  for (long long m = 1; m < m0; ++m) {
    head += direct(m);
    // Early exit once sum_{k>m} k^{-p} <= m^{1-p}/(p-1) is negligible.
    if (std::pow(static_cast<double>(m), 1.0 - p) / (p - 1.0) < 1e-18) return 1.0 + 2.0 * head;
  }
  double tail = 0.0;
  for (std::size_t i = 0; i < coef.size(); ++i) {
    if (coef[i] == 0.0) continue;
    const double term = coef[i] * hurwitz_zeta(p + step * static_cast<double>(i),
                                                static_cast<double>(m0));
    tail += term;
    if (std::abs(term) <= kRelTol) break;
  }
  return 1.0 + 2.0 * (head + tail);
}

constexpr long long kMaxDirect = 10'000'000;

}  // namespace

double b_factor(double s_j, double s_1, double q_j) {
  if (!(s_1 > 0.0) || !(q_j > 0.0))
    throw Error(Errc::InvalidArgument, "b_factor needs s_1 > 0 and q_j > 0");
  const double p = s_j / s_1;
  if (!(p > 1.0 + 1e-9))
    throw Error(Errc::DivergentArgument, "B_j diverges for s_j/s_1 <= 1");
  if (std::isinf(q_j)) return 1.0 + 2.0 * zeta(p);

  const double q = q_j;
  const double e = p / q;
  // Tail: m^{-p} (1 + m^{-q})^{-p/q} = sum_i binom(-p/q, i) m^{-p-qi}. Pick m0 so
  // consecutive binomial terms shrink at least by half.
  const double m0d = std::ceil(std::max({10.0, std::pow(2.0, 1.0 / q), std::pow(2.0 * e, 1.0 / q)}));
  if (m0d > static_cast<double>(kMaxDirect))
    throw Error(Errc::InvalidArgument, "fine index too small for B_j series");
  const auto m0 = static_cast<long long>(m0d);

  std::vector<double> coef;
  double c = 1.0;
  for (int i = 0; i < 200; ++i) {
    coef.push_back(c);
    c *= (-e - i) / (i + 1.0);
    if (!std::isfinite(c)) break;
  }
  return symmetric_series(p, q, m0, coef, [&](long long m) {
    return std::exp(-e * std::log1p(std::pow(static_cast<double>(m), q)));
  });
}

double sobolev_factor(int m_j, int m_1) {
  if (m_1 < 1) throw Error(Errc::InvalidArgument, "sobolev_factor needs m_1 >= 1");
  if (m_j <= m_1) throw Error(Errc::DivergentArgument, "series diverges for m_j <= m_1");
  const double p = static_cast<double>(m_j) / m_1;
  const double a = 1.0 / (2.0 * m_1);
  const std::size_t terms = 60;

  // (1 + l^2 + ... + l^{2m})^{-a} = l^{-m/m_1} (1-x)^a (1-x^{m+1})^{-a}, x = l^{-2}.
  std::vector<double> lhs(terms, 0.0);
  std::vector<double> rhs(terms, 0.0);
  double c = 1.0;
  for (std::size_t i = 0; i < terms; ++i) {
    lhs[i] = c;
    c *= (static_cast<double>(i) - a) / (i + 1.0);
  }
  c = 1.0;
  const std::size_t stride = static_cast<std::size_t>(m_j) + 1;
  for (std::size_t i = 0; i * stride < terms; ++i) {
    rhs[i * stride] = c;
    c *= (a + static_cast<double>(i)) / (i + 1.0);
  }
  std::vector<double> coef(terms, 0.0);
  for (std::size_t i = 0; i < terms; ++i)
    for (std::size_t k = 0; k + i < terms; ++k) coef[i + k] += lhs[i] * rhs[k];

  return symmetric_series(p, 2.0, 10, coef, [&](long long l) {
    return std::pow(omega_m(m_j, l), -1.0 / m_1);
  });
}

double f_kappa_beta(double kappa, double beta, BetaEquation form) {
  const double u = 2.0 + beta * kappa;
  const double pull = (beta * beta - 2.0 * beta) / (std::numbers::ln2 * u);
  return 2.0 * (1.0 + std::log2(u)) - (form == BetaEquation::Stationarity ? kappa * pull : pull);
}

double optimal_beta(double kappa, BetaEquation form) {
  if (!(kappa >= 1.0)) throw Error(Errc::InvalidArgument, "optimal_beta needs kappa >= 1");
  double lo = 2.0;
  if (!(f_kappa_beta(kappa, lo, form) > 0.0))
    throw Error(Errc::NoSignChange, "F(kappa, 2) is not positive");
  double hi = lo;
  for (;;) {
    hi = lo * 1.05;
    if (f_kappa_beta(kappa, hi, form) <= 0.0) break;
    lo = hi;
    if (lo > 1e12) throw Error(Errc::NoSignChange, "no root of F(kappa, .) below 1e12");
  }
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (f_kappa_beta(kappa, mid, form) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mixsn
