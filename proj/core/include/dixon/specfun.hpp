#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "dixon/ddreal.hpp"
#include "dixon/types.hpp"

namespace dixon::specfun {

// Principal-branch log-gamma. Validated region: Re(s) in [-20, 50], |Im(s)| <= 300,
// relative accuracy 1e-12 away from poles. Throws pole_error at nonpositive integers.
complex log_gamma(complex s);

// Gamma on the real line, poles excluded. Reflection handles x < 0.
double gamma_real(double x);

// B(p, q) = Gamma(p)Gamma(q)/Gamma(p+q) via log-gamma. Throws pole_error when
// p, q, or p+q is a nonpositive integer.
complex beta(complex p, complex q);

// psi^{(n)}(x) for n >= 0, x > 0. n = 0 is the digamma. Supported n <= 40, x <= 100.
double polygamma(int n, double x);

// Bernoulli number B_n, B_1 = -1/2 convention. Supported n <= 60.
double bernoulli(int n);

// Gamma^{(nu)}(x) for nu = 0..nu_max at real x > 0, via the digamma recurrence
//   Gamma^{(nu+1)} = sum_j C(nu, j) Gamma^{(j)} psi^{(nu-j)}.
std::vector<double> gamma_derivs(double x, int nu_max);

// Derivatives of 1/Gamma at x = m+1 (Taylor-reciprocal of the Gamma series).
struct RecipGammaDerivs {
    int m;
    std::vector<double> d;   // d[nu] = (1/Gamma)^{(nu)}(m+1)
};
RecipGammaDerivs recip_gamma_derivs(int m, int nu_max);

// Laurent expansion data of Gamma(s) at its poles s = -m:
//   Gamma(-m + u) = (-1)^m/m! * 1/u + sum_{k>=0} c[k][m] u^k   (regular part)
// equivalently  u * Gamma(-m + u) = (-1)^m * sum_{k>=0} c[k][m] m! u^k / m!.
// Stored convention: c[k][m] are the coefficients of the entire function
//   E_m(u) = (-1)^m u Gamma(-m + u),  E_m(u) = sum_k c[k][m] u^k,
// so c[0][m] = 1/m! and c[1][m] = psi(m+1)/m!.
struct LaurentTable {
    int m_max = 0;
    int k_max = 0;
    std::vector<std::vector<double>> c;   // c[k][m], k <= k_max, m <= m_max

    double at(int k, int m) const;        // bounds-checked, throws table_depth_error

    // scaled coefficients m! * c[k][m] in extended precision, for internal
    // series assembly where 1/m! underflows double
    struct Scaled;
    std::shared_ptr<const Scaled> scaled;
};

// Builds the table through the recurrence on log-derivatives of E_m:
//   E_m(u) = exp(sum_i d_i u^i)/m!,  d_1 = psi(m+1), d_i = ((-1)^i zeta(i) + H_m^{(i)})/i.
LaurentTable laurent_coeffs(int m_max, int k_max);

// m!-scaled coefficients: ct[k][m] = m! c[k][m]. These stay O((ln m)^k/k!) for
// all m, unlike c itself which underflows double once m! > 1e308.
struct LaurentTable::Scaled {
    int m_max = 0;
    int k_max = 0;
    std::vector<std::vector<detail::dd>> ct;   // ct[k][m]
};

} // namespace dixon::specfun
