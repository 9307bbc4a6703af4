#include "dixon/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace dixon::specfun {

using detail::dd;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// Stirling series; requires Re(w) >= 25 so the Bernoulli tail is far below 1e-14.
complex log_gamma_stirling(complex w) {
    complex lw = std::log(w);
    complex s = (w - 0.5) * lw - w + 0.91893853320467274178;
    complex w2 = w * w;
    complex wp = w;
    static const double b2j_over[12] = {
        // B_{2j} / (2j (2j-1))
        1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
        43867.0 / 244188.0, -174611.0 / 125400.0, 77683.0 / 5796.0,
        -236364091.0 / 1506960.0};
    for (double c : b2j_over) {
        s += c / wp;
        wp *= w2;
    }
    return s;
}

} // namespace

complex log_gamma(complex s) {
    if (is_nonpositive_integer(s))
        throw pole_error("log_gamma: pole at nonpositive integer");
    // Shift into Re >= 25, then Stirling. Principal logs keep the principal
    // branch off the negative real axis; Im(s) == 0 is taken as the upper limit.
    int n = 0;
    if (s.real() < 25.0) n = int(std::ceil(25.0 - s.real()));
    complex shift = 0.0;
    for (int k = 0; k < n; ++k)
        shift += std::log(s + double(k));
    return log_gamma_stirling(s + double(n)) - shift;
}

double gamma_real(double x) {
    if (x > 0.0) {
        if (x > 171.6) throw overflow_error("gamma_real: overflow for x > 171.6");
        return double(detail::dd_exp(detail::dd_lgamma(dd(x))));
    }
    if (x == std::floor(x))
        throw pole_error("gamma_real: pole at nonpositive integer");
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)), with exact argument
    // reduction so sin(pi x) stays accurate near the poles
    double r = x - std::nearbyint(x);
    double sinpix = std::sin(kPi * r);
    if (std::fmod(std::nearbyint(x), 2.0) != 0.0) sinpix = -sinpix;
    double lg1mx = double(detail::dd_lgamma(dd(1.0 - x)));
    return kPi / (sinpix * std::exp(lg1mx));
}

complex beta(complex p, complex q) {
    if (is_nonpositive_integer(p) || is_nonpositive_integer(q))
        throw pole_error("beta: argument at nonpositive integer");
    if (is_nonpositive_integer(p + q))
        throw pole_error("beta: p+q at nonpositive integer");
    return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

double polygamma(int n, double x) {
    if (n < 0 || n > 40) throw size_error("polygamma: n outside [0, 40]");
    if (!(x > 0.0) || x > 100.0) throw domain_error("polygamma: x outside (0, 100]");
    if (n == 0) return double(detail::dd_digamma(dd(x)));
    return double(detail::dd_polygamma(n, dd(x)));
}

double bernoulli(int n) {
    if (n < 0 || n > 60) throw size_error("bernoulli: n outside [0, 60]");
    // standard recurrence sum_{j<=k} C(k+1, j) B_j = 0, run in extended
    // precision: the alternating sums shed digits in plain double by k ~ 40
    static std::vector<double> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        std::vector<dd> b(61);
        b[0] = dd(1.0);
        for (int k = 1; k <= 60; ++k) {
            dd acc(0.0);
            dd binom(1.0);   // C(k+1, j), j running upward
            for (int j = 0; j < k; ++j) {
                acc += binom * b[j];
                binom = binom * dd(double(k + 1 - j)) / dd(double(j + 1));
            }
            b[k] = -acc / dd(double(k + 1));
        }
        cache.resize(61);
        for (int k = 0; k <= 60; ++k) cache[k] = double(b[k]);
    }
    return cache[n];
}

std::vector<double> gamma_derivs(double x, int nu_max) {
    if (!(x > 0.0)) throw domain_error("gamma_derivs: x must be positive");
    if (nu_max < 0 || nu_max > 40) throw size_error("gamma_derivs: nu_max outside [0, 40]");
    // Gamma^{(nu+1)} = sum_j C(nu, j) Gamma^{(j)} psi^{(nu-j)}; all in extended
    // precision, downcast at the end
    std::vector<dd> g(nu_max + 1), psi(std::max(nu_max, 1));
    g[0] = detail::dd_exp(detail::dd_lgamma(dd(x)));
    for (int j = 0; j < nu_max; ++j)
        psi[j] = j == 0 ? detail::dd_digamma(dd(x)) : detail::dd_polygamma(j, dd(x));
    for (int nu = 0; nu < nu_max; ++nu) {
        dd acc(0.0);
        dd binom(1.0);
        for (int j = 0; j <= nu; ++j) {
            acc += binom * g[j] * psi[nu - j];
            binom = binom * dd(double(nu - j)) / dd(double(j + 1));
        }
        g[nu + 1] = acc;
    }
    std::vector<double> out(nu_max + 1);
    for (int i = 0; i <= nu_max; ++i) out[i] = double(g[i]);
    return out;
}

RecipGammaDerivs recip_gamma_derivs(int m, int nu_max) {
    if (m < 0 || m > 60) throw size_error("recip_gamma_derivs: m outside [0, 60]");
    if (nu_max < 0 || nu_max > 60) throw size_error("recip_gamma_derivs: nu_max outside [0, 60]");
    // Taylor coefficients t_k of Gamma at m+1, then the series reciprocal
    std::vector<dd> g(nu_max + 1), psi(std::max(nu_max, 1));
    dd x(double(m + 1));
    g[0] = detail::dd_exp(detail::dd_lgamma(x));
    for (int j = 0; j < nu_max; ++j)
        psi[j] = j == 0 ? detail::dd_digamma(x) : detail::dd_polygamma(j, x);
    for (int nu = 0; nu < nu_max; ++nu) {
        dd acc(0.0);
        dd binom(1.0);
        for (int j = 0; j <= nu; ++j) {
            acc += binom * g[j] * psi[nu - j];
            binom = binom * dd(double(nu - j)) / dd(double(j + 1));
        }
        g[nu + 1] = acc;
    }
    std::vector<dd> t(nu_max + 1), r(nu_max + 1);
    dd kf(1.0);
    for (int k = 0; k <= nu_max; ++k) {
        if (k > 0) kf *= dd(double(k));
        t[k] = g[k] / kf;
    }
    r[0] = dd(1.0) / t[0];
    for (int k = 1; k <= nu_max; ++k) {
        dd acc(0.0);
        for (int i = 1; i <= k; ++i) acc += t[i] * r[k - i];
        r[k] = -acc / t[0];
    }
    RecipGammaDerivs out;
    out.m = m;
    out.d.resize(nu_max + 1);
    dd nf(1.0);
    for (int nu = 0; nu <= nu_max; ++nu) {
        if (nu > 0) nf *= dd(double(nu));
        out.d[nu] = double(nf * r[nu]);
    }
    return out;
}

double LaurentTable::at(int k, int m) const {
    if (k < 0 || k > k_max || m < 0 || m > m_max)
        throw table_depth_error("LaurentTable::at: index beyond table depth");
    return c[k][m];
}

LaurentTable laurent_coeffs(int m_max, int k_max) {
    if (m_max < 0 || m_max > 20000) throw size_error("laurent_coeffs: m_max outside [0, 20000]");
    if (k_max < 0 || k_max > 128) throw size_error("laurent_coeffs: k_max outside [0, 128]");

    auto scaled = std::make_shared<LaurentTable::Scaled>();
    scaled->m_max = m_max;
    scaled->k_max = k_max;
    scaled->ct.assign(k_max + 1, std::vector<dd>(m_max + 1));

    // H^{(i)}_m advanced incrementally in m; zeta values cached in the dd layer
    std::vector<dd> H(k_max + 1, dd(0.0));
    std::vector<dd> zeta(k_max + 1, dd(0.0));
    for (int i = 2; i <= k_max; ++i) zeta[i] = detail::dd_zeta_int(i);

    std::vector<dd> d(k_max + 1), e(k_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) {
            // H^{(i)}_m = H^{(i)}_{m-1} + m^{-i}
            dd inv = dd(1.0) / dd(double(m));
            dd p = inv;
            for (int i = 1; i <= k_max; ++i) {
                H[i] += p;
                p *= inv;
            }
        }
        // log E_m + ln m! = sum_i d_i u^i
        if (k_max >= 1) d[1] = detail::dd_euler() * dd(-1.0) + H[1];
        for (int i = 2; i <= k_max; ++i) {
            dd zi = (i % 2 == 0) ? zeta[i] : -zeta[i];
            d[i] = (zi + H[i]) / dd(double(i));
        }
        // exp of the power series: k e_k = sum_i i d_i e_{k-i}
        e[0] = dd(1.0);
        for (int k = 1; k <= k_max; ++k) {
            dd acc(0.0);
            for (int i = 1; i <= k; ++i)
                acc += dd(double(i)) * d[i] * e[k - i];
            e[k] = acc / dd(double(k));
        }
        for (int k = 0; k <= k_max; ++k) scaled->ct[k][m] = e[k];
    }

    LaurentTable table;
    table.m_max = m_max;
    table.k_max = k_max;
    table.scaled = scaled;
    table.c.assign(k_max + 1, std::vector<double>(m_max + 1));
    // c = ct / m!; past m ~ 170 the quotient runs through the log to avoid
    // overflowing the factorial before the divide
    dd lmf(0.0);
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) lmf += detail::dd_log(dd(double(m)));
        for (int k = 0; k <= k_max; ++k) {
            dd ct = scaled->ct[k][m];
            if (ct.hi == 0.0) {
                table.c[k][m] = 0.0;
                continue;
            }
            double sign = ct.hi > 0.0 ? 1.0 : -1.0;
            dd lnv = detail::dd_log(dd_abs(ct)) - lmf;
            table.c[k][m] = lnv.hi < -745.0 ? 0.0 : sign * double(detail::dd_exp(lnv));
        }
    }
    return table;
}

} // namespace dixon::specfun
