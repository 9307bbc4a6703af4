#include "dixon/combinat.hpp"

#include <array>
#include <mutex>

namespace dixon::combinat {

namespace {

void gen(int r, int j, int rem, std::vector<int>& b, double rfact,
         std::vector<FdBPartition>& out) {
    if (rem == 0) {
        FdBPartition p;
        p.r = r;
        p.b = b;
        double denom = 1.0;
        int l = 0;
        double jfact = 1.0;
        for (int i = 1; i <= r; ++i) {
            jfact *= double(i);
            int bi = b[i - 1];
            l += bi;
            for (int t = 1; t <= bi; ++t) denom *= double(t);   // b_i!
            for (int t = 0; t < bi; ++t) denom *= jfact;        // (i!)^{b_i}
        }
        p.l = l;
        p.weight = rfact / denom;
        out.push_back(std::move(p));
        return;
    }
    if (j > rem) return;
    for (int bj = rem / j; bj >= 0; --bj) {
        b[j - 1] = bj;
        gen(r, j + 1, rem - j * bj, b, rfact, out);
        b[j - 1] = 0;
    }
}

} // namespace

const std::vector<FdBPartition>& enumerate_partitions(int r) {
    if (r < 0 || r > 40) throw size_error("enumerate_partitions: r outside [0, 40]");
    static std::array<std::vector<FdBPartition>, 41> cache;
    static std::array<std::once_flag, 41> built;
    std::call_once(built[r], [r] {
        double rfact = 1.0;
        for (int i = 2; i <= r; ++i) rfact *= double(i);
        std::vector<int> b(r, 0);
        gen(r, 1, r, b, rfact, cache[r]);
    });
    return cache[r];
}

complex power_derivative(const std::vector<complex>& g_derivs, int n, int r) {
    if (n < 1) throw domain_error("power_derivative: n must be >= 1");
    if (r < 0 || r > 40) throw size_error("power_derivative: r outside [0, 40]");
    if (int(g_derivs.size()) < r + 1)
        throw length_error("power_derivative: need g^{(0..r)}");
    return power_derivative_t(g_derivs, n, r);
}

} // namespace dixon::combinat
