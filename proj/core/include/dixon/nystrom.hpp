#pragma once

#include <vector>

#include "dixon/types.hpp"

namespace dixon::nystrom {

// Discrete solution on a Gauss-Jacobi grid. weights absorb the y^{a-1} factor,
// so sum_j weights[j] g(nodes[j]) ~ Int_0^A y^{a-1} g(y) dy.
struct NystromGrid {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<complex> f_values;
    double cond_estimate = 0.0;     // 1-norm condition estimate of I - K
    double backward_error = 0.0;    // max_i |(I-K)f - 1|_i after the solve
};

// Dense collocation solve of (I - K) f = 1 on the n-point rule. n in [8, 2048].
NystromGrid nystrom_solve(const ProblemSpec& spec, int n);

// Natural interpolation f(x) = 1 + sum_j w_j K(x, y_j) f_j. Exact 1 at x = 0;
// defined on [0, A] only, range_error outside.
complex nystrom_eval(const NystromGrid& grid, const ProblemSpec& spec, double x);

struct PicardInfo {
    int iterations = 0;
    double last_delta = 0.0;    // sup-norm change of the final sweep
    double ratio = 0.0;         // observed contraction ratio
};

// Fixed-point iteration f <- 1 + K f from f = 1 on the same grid. Requires the
// operator to contract (admissibility at sigma = 1/2); throws
// nonconvergence_error with the achieved ratio when max_iter is hit.
NystromGrid picard_solve(const ProblemSpec& spec, int n, int max_iter, double tol,
                         PicardInfo* info = nullptr);

} // namespace dixon::nystrom
