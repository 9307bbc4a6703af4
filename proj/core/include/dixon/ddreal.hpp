#pragma once

// Double-double arithmetic, implementation detail of the residue series
// assembly. Tail sums of the pole expansion cancel up to ~10^25 : 1 in the
// worst accepted regime, so ~32 significant digits are needed internally
// even though every public interface stays plain double.

#include <cmath>
#include <cstdint>

namespace dixon::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

// Error-free transforms. two_sum/two_prod are exact: a+b == s+e, a*b == p+e.
inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline dd fast_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

inline dd renorm(double hi, double lo) { return fast_two_sum(hi, lo); }

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    double lo = s.lo + t.hi;
    dd r = fast_two_sum(s.hi, lo);
    r.lo += t.lo;
    return fast_two_sum(r.hi, r.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return fast_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    dd q = fast_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

inline dd dd_abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }
inline dd dd_ldexp(dd a, int k) { return {std::ldexp(a.hi, k), std::ldexp(a.lo, k)}; }

dd dd_pi();
dd dd_ln2();
dd dd_euler();    // Euler-Mascheroni constant
dd dd_ln_sqrt_2pi();

dd dd_exp(dd x);
dd dd_log(dd x);               // x > 0
dd dd_pow(dd x, dd y);         // x > 0
dd dd_sqrt(dd x);

// Bernoulli number B_{2j} as an exact-ratio double-double, 1 <= j <= 14.
dd dd_bernoulli2(int j);

dd dd_lgamma(dd x);            // x > 0
dd dd_digamma(dd x);           // x > 0
dd dd_polygamma(int n, dd x);  // psi^{(n)}(x), n >= 1, x > 0
dd dd_zeta_int(int k);         // zeta(k), k >= 2 (cached)
dd dd_hurwitz_zeta_int(int s, dd w);  // zeta(s, w), integer s >= 2, w > 0

} // namespace dixon::detail
