#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <tuple>

#include "dixon/mellin.hpp"
#include "dixon/problem.hpp"
#include "oracles.hpp"

using namespace dixon;
using namespace dixon::mellin;

namespace {

ProblemSpec set1() { return ProblemSpec::make(0.5, 1.0, {0.5, 0.0}); }
ProblemSpec set2() { return ProblemSpec::make(1.0, 1.0, {0.4, 0.0}); }
ProblemSpec set3() { return ProblemSpec::make(2.5, 2.0, {oracle::k_lambda3, 0.0}); }

// V(z) = (1/2pi) Int KR(s) z^{1-s}/(1-s) dt extracted through the interior
// formula with fA = 1:  f = 1 - lambda V  =>  V = (1 - f)/lambda
complex v_of(double x, const ProblemSpec& s, double sigma = 0.5, double tol = 1e-11) {
    ContourSettings cs;
    cs.sigma = sigma;
    cs.abs_tol = tol;
    complex f = f_interior_mb(x, s, complex(1.0, 0.0), cs);
    return (1.0 - f) / s.lambda;
}

} // namespace

TEST_CASE("kernel_ratio reference values and guards") {
    auto s1 = set1();
    CHECK(std::abs(kernel_ratio({0.5, 0.0}, s1).real() - oracle::mq_KR_set1_s0p5) < 1e-13);
    // on the symmetric line Re s = 1/2 the ratio is real for real lambda
    complex k37 = kernel_ratio({0.5, 3.7}, s1);
    CHECK(std::abs(k37.real() - oracle::mq_KR_set1_s0p5_3p7i) < 1e-15);
    CHECK(std::abs(k37.imag()) < 1e-18);
    CHECK(std::abs(kernel_ratio({1.2, 0.0}, s1).real() - oracle::mq_KR_set1_s1p2) < 1e-10);
    complex k3 = kernel_ratio({0.5, 1.0}, set3());
    CHECK(std::abs(k3.real() - oracle::mq_KR_set3_s0p5_1i) < 1e-13);
    // exponential decay in |Im s|
    CHECK(std::abs(std::abs(kernel_ratio({0.5, 20.0}, s1)) - oracle::mq_absKR_set1_t20) <
          1e-15 * oracle::mq_absKR_set1_t20 * 1e3);
    CHECK(std::abs(std::abs(kernel_ratio({0.5, 25.0}, s1)) - oracle::mq_absKR_set1_t25) <
          1e-12 * oracle::mq_absKR_set1_t25 * 1e3);
    // gamma poles on the real axis
    CHECK_THROWS_AS(kernel_ratio({-0.5, 0.0}, s1), pole_error);
    CHECK_THROWS_AS(kernel_ratio({1.5, 0.0}, s1), pole_error);
    // resolvent zero
    CHECK_THROWS_AS(kernel_ratio({oracle::k_s0_set1, 0.0}, s1), near_zero_denominator_error);
}

TEST_CASE("contour line selection") {
    CHECK(default_interior(set1()).sigma == 0.5);
    CHECK_THROWS_AS(default_interior(ProblemSpec::make(0.5, 1.0, {1.6, 0.0})),
                    admissibility_error);
    // upper end of the exterior window is the resolvent zero
    CHECK(std::abs(exterior_sigma_upper(set1()) - oracle::k_s0_set1) < 1e-12);
    CHECK(std::abs(exterior_sigma_upper(set2()) - oracle::k_s0_set2) < 1e-12);
    CHECK(std::abs(exterior_sigma_upper(set3()) - oracle::k_s0_set3) < 1e-12);
    CHECK(std::abs(exterior_sigma_upper(ProblemSpec::make(0.5, 1.0, {0.1, 0.0})) -
                   oracle::k_s0_lam01) < 1e-12);
    auto cs1 = default_exterior(set1());
    CHECK(cs1.sigma > 1.0);
    CHECK(cs1.sigma < oracle::k_s0_set1);
    // window collapses for |lambda| >= 1
    CHECK_THROWS_AS(default_exterior(ProblemSpec::make(0.5, 1.0, {1.5, 0.0})),
                    admissibility_error);
    CHECK_THROWS_AS(exterior_sigma_upper(ProblemSpec::make(0.5, 1.0, {1.5, 0.0})),
                    admissibility_error);
}

TEST_CASE("interior values against the frozen contour integrals") {
    auto s1 = set1();
    CHECK(std::abs(v_of(0.3, s1) - oracle::mq_V_set1_z0_3) < 2e-10);
    CHECK(std::abs(v_of(0.5, s1) - oracle::mq_V_set1_z0_5) < 2e-10);
    CHECK(std::abs(v_of(0.9, s1) - oracle::mq_V_set1_z0_9) < 2e-10);
    CHECK(std::abs(v_of(1.0, s1) - oracle::mq_Ji_set1) < 2e-10);

    auto s2 = set2();
    CHECK(std::abs(v_of(0.3, s2) - oracle::mq_V_set2_z0_3) < 2e-10);
    CHECK(std::abs(v_of(0.5, s2) - oracle::mq_V_set2_z0_5) < 2e-10);
    CHECK(std::abs(v_of(0.9, s2) - oracle::mq_V_set2_z0_9) < 2e-10);

    auto s3 = set3();
    CHECK(std::abs(v_of(0.3 * 2.0, s3) - oracle::mq_V_set3_z0_3) < 2e-10);
    CHECK(std::abs(v_of(0.5 * 2.0, s3) - oracle::mq_V_set3_z0_5) < 2e-10);
    CHECK(std::abs(v_of(0.9 * 2.0, s3) - oracle::mq_V_set3_z0_9) < 2e-10);

    // small z: the integral shrinks like z^{1-sigma} without losing accuracy
    CHECK(std::abs(v_of(1e-3, s1) - oracle::mq_V_set1_z0_001) < 1e-12);
    CHECK(std::abs(v_of(1e-4, s1) - oracle::mq_V_set1_z0_0001) < 1e-12);
    CHECK(std::abs(v_of(1e-5, s1) - oracle::mq_V_set1_z1_0em5) < 1e-12);
}

TEST_CASE("interior formula composition and boundary") {
    auto s1 = set1();
    ContourSettings cs = default_interior(s1);
    complex fAi{oracle::mq_fAi_set1, 0.0};
    // closed with the interior junction value the formula reproduces it at x = A
    CHECK(std::abs(f_interior_mb(1.0, s1, fAi, cs) - fAi) < 1e-9);
    // f(0) = 1 exactly, est error zero
    double ee = -1.0;
    complex at0 = f_interior_mb(0.0, s1, fAi, cs, &ee);
    CHECK(at0.real() == 1.0);
    CHECK(at0.imag() == 0.0);
    CHECK(ee == 0.0);
    // value composition at x = 0.5
    complex expect = 1.0 - 0.5 * oracle::mq_fAi_set1 * oracle::mq_V_set1_z0_5;
    CHECK(std::abs(f_interior_mb(0.5, s1, fAi, cs) - expect) < 1e-9);
    CHECK_THROWS_AS(f_interior_mb(-0.1, s1, fAi, cs), range_error);
    CHECK_THROWS_AS(f_interior_mb(1.5, s1, fAi, cs), range_error);
}

TEST_CASE("interior line independence") {
    // the integrand is analytic between the admissible lines, so the value
    // cannot depend on sigma
    auto s1 = set1();
    complex ref = v_of(0.5, s1, 0.5, 1e-12);
    for (double sg : {0.2, 0.8}) {
        CHECK(std::abs(v_of(0.5, s1, sg, 1e-12) - ref) < 1e-10);
    }
    // complex lambda runs without the conjugate-symmetry shortcut
    auto sc = ProblemSpec::make(0.5, 1.0, {0.3, 0.2});
    ContourSettings a, b;
    a.sigma = 0.4;
    b.sigma = 0.6;
    a.abs_tol = b.abs_tol = 1e-12;
    complex va = f_interior_mb(0.5, sc, {1.0, 0.0}, a);
    complex vb = f_interior_mb(0.5, sc, {1.0, 0.0}, b);
    CHECK(std::abs(va - vb) < 1e-10);
    CHECK(std::abs(va.imag()) > 1e-6);   // genuinely complex response
}

TEST_CASE("exterior values against the frozen bracket integrals") {
    auto s1 = set1();
    ContourSettings cs = default_exterior(s1);
    cs.abs_tol = 1e-11;
    complex fAe{oracle::mq_fAe_set1, 0.0};
    // E(1) = 0: the bracket vanishes at the junction
    CHECK(std::abs(f_exterior_mb(1.0, s1, fAe, cs) - fAe) < 1e-9);
    // x = 2: f = fA (1 + lambda E(2))
    complex expect = oracle::mq_fAe_set1 * (1.0 + 0.5 * oracle::mq_E_set1_x2);
    CHECK(std::abs(f_exterior_mb(2.0, s1, fAe, cs) - expect) < 1e-8);

    auto s2 = set2();
    ContourSettings cs2 = default_exterior(s2);
    cs2.abs_tol = 1e-11;
    complex e2 = f_exterior_mb(3.0, s2, {1.0, 0.0}, cs2);
    CHECK(std::abs((e2 - 1.0) / s2.lambda - oracle::mq_E_set2_x3) < 1e-9);

    auto s3 = set3();
    ContourSettings cs3 = default_exterior(s3);
    cs3.abs_tol = 1e-11;
    complex e3 = f_exterior_mb(4.0, s3, {1.0, 0.0}, cs3);   // z = x/A = 2
    CHECK(std::abs((e3 - 1.0) / s3.lambda - oracle::mq_E_set3_z2) < 1e-9);

    CHECK_THROWS_AS(f_exterior_mb(0.9, s1, fAe, cs), range_error);
    ContourSettings bad = cs;
    bad.sigma = 0.9;
    CHECK_THROWS_AS(f_exterior_mb(2.0, s1, fAe, bad), range_error);
}

TEST_CASE("interior derivative") {
    auto s1 = set1();
    ContourSettings cs = default_interior(s1);
    cs.abs_tol = 1e-12;
    complex fAi{oracle::mq_fAi_set1, 0.0};
    complex d = fprime_interior_mb(0.5, s1, fAi, cs);
    complex expect = -0.5 * oracle::mq_fAi_set1 * oracle::mq_Vp_set1_z0p5;
    CHECK(std::abs(d - expect) < 1e-9);
    // central difference of the interior formula agrees
    double h = 1e-5;
    complex fd = (f_interior_mb(0.5 + h, s1, fAi, cs) - f_interior_mb(0.5 - h, s1, fAi, cs)) /
                 (2.0 * h);
    CHECK(std::abs(d - fd) < 1e-7);
    CHECK_THROWS_AS(fprime_interior_mb(0.0, s1, fAi, cs), range_error);
}

TEST_CASE("junction closures differ by the s = 1 residue") {
    for (auto [spec, fai, fae] :
         {std::tuple{set1(), oracle::mq_fAi_set1, oracle::mq_fAe_set1},
          std::tuple{set2(), oracle::mq_fAi_set2, oracle::mq_fAe_set2},
          std::tuple{set3(), oracle::mq_fAi_set3, oracle::mq_fAe_set3}}) {
        ContourSettings cs = default_exterior(spec);
        cs.abs_tol = 1e-11;
        ClosurePair p = f_at_A_both(spec, cs);
        CHECK(std::abs(p.interior - fai) < 1e-9);
        CHECK(std::abs(p.exterior - fae) < 5e-8);
        CHECK_FALSE(p.agree);
        // the gap equals the residue of KR/(1-s) at s = 1: closures satisfy
        // 1/fAe - 1/fAi = lambda (Je - Ji) = lambda/(lambda - 1)
        complex gap = 1.0 / p.exterior - 1.0 / p.interior;
        complex res = spec.lambda / (spec.lambda - 1.0);
        CHECK(std::abs(gap - res) < 1e-8);
        CHECK_THROWS_AS(f_at_A(spec, cs), disagreement_error);
    }
}

TEST_CASE("junction closure sigma independence in the exterior window") {
    // both exterior lines sit in the same analytic strip (1, s_zero), so the
    // closure cannot depend on the line; lambda = 0.1 keeps 1.4 inside
    auto s = ProblemSpec::make(0.5, 1.0, {0.1, 0.0});
    ContourSettings c12, c14;
    c12.sigma = 1.2;
    c14.sigma = 1.4;
    c12.abs_tol = c14.abs_tol = 1e-12;
    ClosurePair p12 = f_at_A_both(s, c12);
    ClosurePair p14 = f_at_A_both(s, c14);
    complex je12 = (1.0 / p12.exterior - 1.0) / s.lambda;
    complex je14 = (1.0 / p14.exterior - 1.0) / s.lambda;
    CHECK(std::abs(je12 - oracle::mq_Je_lam01_sig1_2) < 1e-10);
    CHECK(std::abs(je14 - oracle::mq_Je_lam01_sig1_4) < 1e-10);
    CHECK(std::abs(p12.exterior - p14.exterior) < 1e-10);
}

TEST_CASE("above-threshold lambda: interior works, exterior window is gone") {
    auto s = ProblemSpec::make(0.5, 1.0, {1.5, 0.0});
    ContourSettings cs = default_interior(s);   // sigma = 1/2 bound is pi/2 > 1.5
    cs.abs_tol = 1e-11;
    complex fAi{oracle::mq_fAi_lam15, 0.0};
    complex f05 = f_interior_mb(0.5, s, fAi, cs);
    complex expect = 1.0 - 1.5 * oracle::mq_fAi_lam15 * oracle::mq_V_lam15_z0p5;
    CHECK(std::abs(f05 - expect) < 1e-9);
    complex ji = v_of(1.0, s);
    CHECK(std::abs(ji - oracle::mq_Ji_lam15) < 1e-9);
    CHECK(std::abs(1.0 / (1.0 + 1.5 * ji) - oracle::mq_fAi_lam15) < 1e-9);
    // no admissible exterior line at |lambda| = 1.5
    ContourSettings ce;
    ce.sigma = 1.2;
    CHECK_THROWS_AS(f_exterior_mb(2.0, s, fAi, ce), admissibility_error);
}

TEST_CASE("contour settings validation") {
    auto s1 = set1();
    ContourSettings cs = default_interior(s1);
    cs.panel = 8;
    CHECK_THROWS_AS(f_interior_mb(0.5, s1, {1.0, 0.0}, cs), size_error);
    cs = default_interior(s1);
    cs.abs_tol = 0.0;
    CHECK_THROWS_AS(f_interior_mb(0.5, s1, {1.0, 0.0}, cs), domain_error);
    cs = default_interior(s1);
    cs.t_max = 0.5;
    CHECK_THROWS_AS(f_interior_mb(0.5, s1, {1.0, 0.0}, cs), domain_error);
    // junction helper validates the exterior line
    cs = default_interior(s1);
    CHECK_THROWS_AS(f_at_A_both(s1, cs), range_error);
}
