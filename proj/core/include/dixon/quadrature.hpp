#pragma once

#include <functional>
#include <vector>

#include "dixon/types.hpp"

namespace dixon::quadrature {

// Gauss-Jacobi rule on [0, A] absorbing the weight y^{a-1}:
//   sum_j w[j] g(y[j]) ~ Int_0^A y^{a-1} g(y) dy.
// Nodes ascending in (0, A). Built by Golub-Welsch from the Jacobi matrix
// for weight (1+t)^{a-1} on [-1, 1].
struct GaussJacobi {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double A = 0.0;
};
GaussJacobi gauss_jacobi(int n, double a, double A);

// 16-point Gauss-Legendre on [t0, t1].
complex integrate_gl16(const std::function<complex(double)>& f, double t0, double t1);

// Adaptive bisection against the two-half refinement. err_out accumulates the
// observed refinement gaps; throws nonconvergence_error past max_depth.
complex integrate_adaptive(const std::function<complex(double)>& f, double t0,
                           double t1, double tol, int max_depth, double& err_out);

// (1/2pi) Int_{-inf}^{inf} F(sigma + it) dt for integrands decaying like
// e^{-decay |t|}. Panel pairs of the given width accumulate outward until the
// panel mass and the exponential tail bound sit below abs_tol; conj_sym skips
// the lower half line for F(conj s) = conj(F(s)). Throws nonconvergence_error
// when the stopping rule is still unmet at t_cap.
struct ContourOptions {
    double sigma = 0.5;
    double width = 1.0;
    double decay = 3.14159265358979323846;
    double abs_tol = 1e-10;
    double t_cap = 120.0;
    bool conj_sym = true;
};
complex contour_mean(const std::function<complex(complex)>& F,
                     const ContourOptions& opt, double* est_err = nullptr);

} // namespace dixon::quadrature
