#include "dixon/ddreal.hpp"

#include <array>
#include <cassert>
#include <mutex>
#include <vector>

namespace dixon::detail {

dd dd_pi()          { return {3.141592653589793, 1.2246467991473532e-16}; }
dd dd_ln2()         { return {0.6931471805599453, 2.3190468138462996e-17}; }
dd dd_euler()       { return {0.5772156649015329, -4.942915152430645e-18}; }
dd dd_ln_sqrt_2pi() { return {0.9189385332046728, -3.8782941580672414e-17}; }

dd dd_sqrt(dd x) {
    if (x.hi == 0.0) return {0.0, 0.0};
    double y0 = std::sqrt(x.hi);
    // one dd Newton step doubles the 53-bit seed
    dd y(y0);
    y = dd_ldexp(y + x / y, -1);
    return y;
}

dd dd_exp(dd x) {
    // range-reduce by ln2, then r/512 so the Taylor tail truncates fast.
    if (x.hi > 709.0) return {HUGE_VAL, 0.0};
    if (x.hi < -746.0) return {0.0, 0.0};
    double k = std::nearbyint(x.hi / 0.693147180559945286);
    dd r = x - dd(k) * dd_ln2();
    r = dd_ldexp(r, -9);
    // |r| <= ln2/1024 : r^13/13! < 1e-43
    dd sum(1.0), term(1.0);
    for (int i = 1; i <= 13; ++i) {
        term = term * r / dd(double(i));
        sum += term;
    }
    for (int i = 0; i < 9; ++i) sum = sum * sum;
    return dd_ldexp(sum, int(k));
}

dd dd_log(dd x) {
    assert(x.hi > 0.0);
    // Newton on y -> y + x e^{-y} - 1, seeded from the double log
    dd y(std::log(x.hi));
    for (int i = 0; i < 2; ++i)
        y = y + x * dd_exp(-y) - dd(1.0);
    return y;
}

dd dd_pow(dd x, dd y) { return dd_exp(y * dd_log(x)); }

dd dd_bernoulli2(int j) {
    // exact rationals B_2 .. B_28; enough for Stirling / Euler-Maclaurin at w >= 40
    static const std::array<std::pair<double, double>, 14> r = {{
        {1.0, 6.0},
        {-1.0, 30.0},
        {1.0, 42.0},
        {-1.0, 30.0},
        {5.0, 66.0},
        {-691.0, 2730.0},
        {7.0, 6.0},
        {-3617.0, 510.0},
        {43867.0, 798.0},
        {-174611.0, 330.0},
        {854513.0, 138.0},
        {-236364091.0, 2730.0},
        {8553103.0, 6.0},
        {-23749461029.0, 870.0},
    }};
    assert(j >= 1 && j <= 14);
    return dd(r[j - 1].first) / dd(r[j - 1].second);
}

namespace {

// Stirling series at w >= 40: remainder below 1e-36 with 14 Bernoulli terms.
constexpr double kStirlingCut = 40.0;

dd lgamma_stirling(dd w) {
    dd lw = dd_log(w);
    dd s = (w - dd(0.5)) * lw - w + dd_ln_sqrt_2pi();
    dd w2 = w * w;
    dd wp = w;  // w^{2j-1}
    for (int j = 1; j <= 14; ++j) {
        s += dd_bernoulli2(j) / (dd(double(2 * j * (2 * j - 1))) * wp);
        wp = wp * w2;
    }
    return s;
}

} // namespace

dd dd_lgamma(dd x) {
    assert(x.hi > 0.0);
    dd shift(0.0);
    dd w = x;
    while (w.hi < kStirlingCut) {
        shift += dd_log(w);
        w += dd(1.0);
    }
    return lgamma_stirling(w) - shift;
}

dd dd_digamma(dd x) {
    assert(x.hi > 0.0);
    dd shift(0.0);
    dd w = x;
    while (w.hi < kStirlingCut) {
        shift += dd(1.0) / w;
        w += dd(1.0);
    }
    // psi(w) = ln w - 1/(2w) - sum B_2j / (2j w^{2j})
    dd s = dd_log(w) - dd(0.5) / w;
    dd w2 = w * w;
    dd wp = w2;  // w^{2j}
    for (int j = 1; j <= 14; ++j) {
        s -= dd_bernoulli2(j) / (dd(double(2 * j)) * wp);
        wp = wp * w2;
    }
    return s - shift;
}

dd dd_hurwitz_zeta_int(int s, dd w) {
    assert(s >= 2 && w.hi > 0.0);
    // shift w upward, then Euler-Maclaurin:
    // zeta(s,w) = sum_{j<N} (w+j)^{-s} + ws^{1-s}/(s-1) + ws^{-s}/2
    //           + sum_j B_2j/(2j)! (s)_{2j-1} ws^{-s-2j+1}
    dd head(0.0);
    dd ws = w;
    while (ws.hi < kStirlingCut) {
        head += dd_pow(ws, dd(double(-s)));
        ws += dd(1.0);
    }
    dd inv = dd(1.0) / ws;
    dd invs = dd_pow(ws, dd(double(-s)));  // ws^{-s}
    dd tail = invs * ws / dd(double(s - 1)) + dd(0.5) * invs;
    dd rising{double(s)};     // (s)_{2j-1} built incrementally
    dd fact(1.0);             // (2j)!
    dd wp = invs * inv;       // ws^{-s-2j+1} at j=1
    for (int j = 1; j <= 14; ++j) {
        fact = fact * dd(double(2 * j - 1)) * dd(double(2 * j));
        if (j > 1)
            rising = rising * dd(double(s + 2 * j - 3)) * dd(double(s + 2 * j - 2));
        tail += dd_bernoulli2(j) / fact * rising * wp;
        wp = wp * inv * inv;
    }
    return head + tail;
}

dd dd_polygamma(int n, dd x) {
    assert(n >= 1 && x.hi > 0.0);
    // psi^{(n)}(x) = (-1)^{n+1} n! zeta(n+1, x)
    dd nf(1.0);
    for (int i = 2; i <= n; ++i) nf *= dd(double(i));
    dd z = dd_hurwitz_zeta_int(n + 1, x);
    dd v = nf * z;
    return (n % 2 == 1) ? v : -v;
}

dd dd_zeta_int(int k) {
    assert(k >= 2);
    static std::vector<dd> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (int(cache.size()) < k + 1) {
        size_t old = cache.size();
        cache.resize(std::max<size_t>(k + 1, 64));
        for (size_t i = std::max<size_t>(old, 2); i < cache.size(); ++i)
            cache[i] = dd_hurwitz_zeta_int(int(i), dd(1.0));
    }
    return cache[k];
}

} // namespace dixon::detail
