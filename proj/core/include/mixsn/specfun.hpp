#pragma once

namespace mixsn {

/// Riemann zeta for real t > 1, relative accuracy about 1e-14.
/// Throws DivergentArgument for t <= 1 + 1e-9.
double zeta(double t);

/// Hurwitz zeta sum_{k>=0} (a+k)^{-t} for t > 1, a > 0.
double hurwitz_zeta(double t, double a);

/// sup_{r>=1} (2 floor(r) - 1) / r^alpha; exactly 1 for alpha >= log2(3).
/// Throws AlphaTooSmall for alpha <= 1.
double a_alpha(double alpha);

/// sqrt(sum_{n=0}^m |ell|^{2n}), with 0^0 = 1.
double omega_m(int m, long long ell);

/// 1 + 2 sum_{m>=1} (1 + m^q)^{-p/q} with p = s_j/s_1; 1 + 2 zeta(p) for q = inf.
/// Throws DivergentArgument when s_j/s_1 <= 1.
double b_factor(double s_j, double s_1, double q_j);

/// 1 + 2 sum_{l>=1} (1 + l^2 + ... + l^{2 m_j})^{-1/(2 m_1)}.
/// Throws DivergentArgument when m_j <= m_1.
double sobolev_factor(int m_j, int m_1);

/// Two forms of the beta-selection function.
///
/// Stationarity: 2[1 + log2(2+b k)] - (b^2 - 2b) k / (ln2 (2+b k)); its root is
/// the stationary point of the rate exponent in beta.
/// Tabulated: 2[1 + log2(2+b k)] - (b^2 - 2b) / (ln2 (2+b k)); its roots are
/// the published beta(kappa) values. Both coincide at kappa = 1.
enum class BetaEquation { Tabulated, Stationarity };

double f_kappa_beta(double kappa, double beta, BetaEquation form = BetaEquation::Tabulated);

/// Smallest root of f_kappa_beta(kappa, .) in [2, inf), to 1e-6 absolute.
/// Throws NoSignChange if no sign change is found.
double optimal_beta(double kappa, BetaEquation form = BetaEquation::Tabulated);

}  // namespace mixsn
