#pragma once

#include <functional>

#include "dixon/types.hpp"

namespace dixon {

// Kernel profile h(x) = x^a (1+x)^{-1-2a}, the homogeneous shape behind the
// integral operator. x >= 0.
double kernel_h(double x, double a);

// Full Fredholm kernel including the coupling:
//   K(x, y) = lambda x^{a+1} y^{a-1} (x+y)^{-1-2a} / B(a, a+1),
// so the equation reads f(x) = 1 + Int_0^A K(x, y) f(y) dy.  x >= 0, y > 0.
complex fredholm_kernel(double x, double y, const ProblemSpec& spec);

struct Admissibility {
    bool ok = false;       // |lambda| strictly below the bound
    double margin = 0.0;   // bound - |lambda|
    double bound = 0.0;    // B(a, a+1) / B(a+sigma, a+1-sigma)
    double sigma = 0.0;
};

// Contraction test for the contour at Re(s) = sigma. sigma in (-a, a+1).
Admissibility admissible(const ProblemSpec& spec, double sigma);

// sup_i | f(x_i) - 1 - Int_0^A K(x_i, y) f(y) dy |  over n_check uniform
// points x_i = A i / n_check, with the integral done by an n_quad-point
// Gauss-Jacobi rule absorbing the y^{a-1} factor. n_quad, n_check >= 8.
double residual_supnorm(const std::function<complex(double)>& f,
                        const ProblemSpec& spec, int n_quad, int n_check);

} // namespace dixon
