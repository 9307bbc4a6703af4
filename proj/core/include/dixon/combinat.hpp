#pragma once

#include <vector>

#include "dixon/types.hpp"

namespace dixon::combinat {

// One multiset partition of r in Faa di Bruno form: b[j-1] copies of part j,
// sum_j j b[j-1] = r, l = sum_j b[j-1] parts in total.
struct FdBPartition {
    int r = 0;
    std::vector<int> b;
    int l = 0;
    double weight = 0.0;   // r! / (prod_j b_j! (j!)^{b_j})
};

// All partitions of r in descending lexicographic b order, cached. r <= 40.
const std::vector<FdBPartition>& enumerate_partitions(int r);

// r-th derivative of g(x)^n from the derivatives of g:
//   (g^n)^{(r)} = sum_partitions weight * n!/(n-l)! * g^{n-l} * prod_j (g^{(j)})^{b_j}
// Terms with l > n vanish and are skipped. g[j] = g^{(j)}(x), j = 0..r.
template <class T>
T power_derivative_t(const std::vector<T>& g, int n, int r) {
    const auto& parts = enumerate_partitions(r);
    T total{};
    for (const auto& p : parts) {
        if (p.l > n) continue;
        double falling = 1.0;
        for (int i = 0; i < p.l; ++i) falling *= double(n - i);
        T term = T(p.weight * falling);
        for (int e = 0; e < n - p.l; ++e) term = term * g[0];
        for (int j = 1; j <= r; ++j)
            for (int e = 0; e < p.b[j - 1]; ++e) term = term * g[j];
        total = total + term;
    }
    return total;
}

complex power_derivative(const std::vector<complex>& g_derivs, int n, int r);

} // namespace dixon::combinat
