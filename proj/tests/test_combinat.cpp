#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dixon/combinat.hpp"
#include "dixon/ddreal.hpp"
#include "dixon/specfun.hpp"
#include "oracles.hpp"

using namespace dixon;
using namespace dixon::combinat;

TEST_CASE("partition enumeration counts and weights") {
    CHECK(enumerate_partitions(0).size() == 1);
    CHECK(enumerate_partitions(4).size() == 5);
    CHECK(enumerate_partitions(10).size() == 42);
    // sum of Faa di Bruno weights over partitions of r is the Bell number
    auto bell = [](int r) {
        double s = 0.0;
        for (const auto& p : enumerate_partitions(r)) s += p.weight;
        return s;
    };
    CHECK(bell(4) == doctest::Approx(15.0).epsilon(1e-13));
    CHECK(bell(10) == doctest::Approx(115975.0).epsilon(1e-12));
    for (const auto& p : enumerate_partitions(7)) {
        int r = 0, l = 0;
        for (size_t j = 1; j <= p.b.size(); ++j) {
            r += int(j) * p.b[j - 1];
            l += p.b[j - 1];
        }
        CHECK(r == 7);
        CHECK(l == p.l);
    }
    CHECK_THROWS_AS(enumerate_partitions(41), size_error);
}

TEST_CASE("power_derivative closed forms") {
    // g = exp: all derivatives 1, (g^n)^{(r)} at 0 is n^r
    std::vector<complex> e(9, complex(1.0, 0.0));
    CHECK(std::abs(power_derivative(e, 3, 5) - complex(243.0, 0.0)) < 1e-10);
    CHECK(std::abs(power_derivative(e, 2, 8) - complex(256.0, 0.0)) < 1e-9);
    // g = 1 + x: (g^n)^{(r)}(0) is the falling factorial n!/(n-r)!
    std::vector<complex> lin = {complex(1.0), complex(1.0), complex(0.0), complex(0.0)};
    CHECK(std::abs(power_derivative(lin, 7, 3) - complex(210.0, 0.0)) < 1e-11);
    // r = 0 is g^n itself
    std::vector<complex> c2 = {complex(2.0)};
    CHECK(std::abs(power_derivative(c2, 5, 0) - complex(32.0, 0.0)) < 1e-12);
}

TEST_CASE("gamma-power derivative against the frozen value") {
    // d^4/ds^4 [Gamma(a+1-s)]^3 at s = 0.2, a = 0.5; argument chain gives (-1)^j
    auto gd = specfun::gamma_derivs(1.3, 4);
    std::vector<complex> g(5);
    for (int j = 0; j <= 4; ++j)
        g[j] = complex((j % 2 == 0 ? 1.0 : -1.0) * gd[j], 0.0);
    complex v = power_derivative(g, 3, 4);
    CHECK(std::abs(v - complex(oracle::cb_fd_gamma3_r4_s0p2, 0.0)) /
              std::abs(oracle::cb_fd_gamma3_r4_s0p2) <
          1e-12);
}

TEST_CASE("dd instantiation matches double instantiation") {
    using detail::dd;
    auto gd = specfun::gamma_derivs(1.3, 4);
    std::vector<complex> g(5);
    std::vector<dd> gq(5);
    for (int j = 0; j <= 4; ++j) {
        double v = (j % 2 == 0 ? 1.0 : -1.0) * gd[j];
        g[j] = complex(v, 0.0);
        gq[j] = dd(v);
    }
    complex vd = power_derivative(g, 4, 4);
    dd vq = power_derivative_t<dd>(gq, 4, 4);
    CHECK(std::abs(vd.real() - (vq.hi + vq.lo)) / std::abs(vd.real()) < 1e-14);
}
