#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dixon/ddreal.hpp"
#include "oracles.hpp"

using namespace dixon::detail;

namespace {

double rel(dd v, double ref) {
    double d = std::abs(v.hi + v.lo - ref);
    return d / std::max(1.0, std::abs(ref));
}

// |v - ref| in units of ref, resolving v at full dd width
double rel_dd(dd v, dd ref) {
    dd d = dd_abs(v - ref);
    dd r = dd_abs(ref);
    double den = r.hi > 1.0 ? r.hi : 1.0;
    return (d.hi + d.lo) / den;
}

} // namespace

TEST_CASE("two-sum keeps the low word") {
    dd x = dd(1e16) + dd(1.0);
    CHECK((x - dd(1e16)).hi == 1.0);
    dd y = dd(1.0) / dd(3.0);
    dd z = y * dd(3.0) - dd(1.0);
    CHECK(std::abs(z.hi) < 1e-31);
}

TEST_CASE("constants") {
    CHECK(rel(dd_pi(), 3.14159265358979323846) < 1e-16);
    CHECK(std::abs(dd_pi().lo) > 0.0);   // low word populated
    CHECK(rel(dd_euler(), oracle::k_euler_gamma) < 1e-16);
    CHECK(rel(dd_ln2(), 0.6931471805599453) < 1e-16);
}

TEST_CASE("exp and log round-trip") {
    for (double x : {1e-8, 0.1, 1.0, 3.5, 40.0, 300.0}) {
        dd lx = dd_log(dd(x));
        CHECK(rel_dd(dd_exp(lx), dd(x)) < 5e-29);
    }
    CHECK(rel(dd_exp(dd(1.0)), 2.718281828459045235360287) < 1e-16);
    CHECK(rel(dd_exp(dd(0.0)), 1.0) == 0.0);
}

TEST_CASE("pow and sqrt") {
    CHECK(rel(dd_sqrt(dd(2.0)), 1.41421356237309504880169) < 1e-16);
    CHECK(rel(dd_pow(dd(2.0), dd(10.0)), 1024.0) < 1e-16);
    CHECK(rel(dd_pow(dd(0.5), dd(0.5)), 0.70710678118654752440) < 1e-16);
}

TEST_CASE("lgamma on the dd track") {
    CHECK(rel(dd_lgamma(dd(0.5)), oracle::sf_lg_0p5) < 1e-15);
    CHECK(rel(dd_lgamma(dd(0.001)), oracle::sf_lg_0p001) < 1e-15);
    CHECK(rel(dd_lgamma(dd(1.0)), 0.0) < 1e-16);
    CHECK(rel(dd_lgamma(dd(2.0)), 0.0) < 1e-16);
    // Gamma(5) = 24
    CHECK(rel(dd_exp(dd_lgamma(dd(5.0))), 24.0) < 1e-15);
}

TEST_CASE("digamma and polygamma") {
    CHECK(rel(dd_digamma(dd(1.0)), oracle::sf_psi_0_1) < 1e-15);
    CHECK(rel(dd_digamma(dd(2.0)), oracle::sf_psi_0_2) < 1e-15);
    CHECK(rel(dd_digamma(dd(0.1)), oracle::sf_psi_0_0p1) < 1e-15);
    CHECK(rel(dd_polygamma(1, dd(1.0)), oracle::sf_psi_1_1) < 1e-15);
    CHECK(rel(dd_polygamma(5, dd(3.7)), oracle::sf_psi_5_3p7) < 1e-14);
    CHECK(rel(dd_polygamma(20, dd(1.5)), oracle::sf_psi_20_1p5) < 1e-14);
    CHECK(rel(dd_polygamma(40, dd(10.0)), oracle::sf_psi_40_10) < 1e-14);
    CHECK(rel(dd_polygamma(12, dd(0.3)), oracle::sf_psi_12_0p3) < 1e-14);
    CHECK(rel(dd_polygamma(2, dd(97.3)), oracle::sf_psi_2_97p3) < 1e-14);
}

TEST_CASE("zeta at integers") {
    CHECK(rel(dd_zeta_int(2), oracle::sf_zeta_2) < 1e-16);
    CHECK(rel(dd_zeta_int(3), oracle::sf_zeta_3) < 1e-16);
    CHECK(rel(dd_zeta_int(7), oracle::sf_zeta_7) < 1e-16);
    CHECK(rel(dd_zeta_int(13), oracle::sf_zeta_13) < 1e-16);
    CHECK(rel(dd_zeta_int(17), oracle::sf_zeta_17) < 1e-16);
    CHECK(rel(dd_zeta_int(35), oracle::sf_zeta_35) < 1e-16);
}

TEST_CASE("hurwitz zeta") {
    // zeta(s, 1) = zeta(s)
    CHECK(rel_dd(dd_hurwitz_zeta_int(5, dd(1.0)), dd_zeta_int(5)) < 1e-28);
    // zeta(2, 1/2) = pi^2/2
    dd p = dd_pi() * dd_pi() * dd(0.5);
    CHECK(rel_dd(dd_hurwitz_zeta_int(2, dd(0.5)), p) < 1e-28);
    // recurrence zeta(s, w) = zeta(s, w+1) + w^{-s}
    dd w{1.75, 0.0};
    dd lhs = dd_hurwitz_zeta_int(3, w);
    dd rhs = dd_hurwitz_zeta_int(3, w + dd(1.0)) + dd(1.0) / (w * w * w);
    CHECK(rel_dd(lhs, rhs) < 1e-28);
}

TEST_CASE("bernoulli numbers on the dd track") {
    CHECK(rel(dd_bernoulli2(1), 1.0 / 6.0) < 1e-16);            // B_2
    CHECK(rel(dd_bernoulli2(6), oracle::sf_bern_12) < 1e-15);   // B_12
    CHECK(rel(dd_bernoulli2(14), -23749461029.0 / 870.0) < 1e-16);  // B_28
}
