#pragma once

#include "dixon/types.hpp"

namespace dixon::mellin {

// Vertical-line quadrature configuration. t_max is a hard cap on |Im s|;
// the integrator stops earlier once the exponential tail is below abs_tol.
struct ContourSettings {
    double sigma = 0.5;
    double t_max = 120.0;
    double abs_tol = 1e-10;
    int panel = 16;          // Gauss-Legendre points per panel
};

// Interior default: sigma = 1/2, the slackest admissible line.
ContourSettings default_interior(const ProblemSpec& spec);

// Exterior default: midpoint of the admissible window (1, min(a+1, s_zero)),
// where s_zero is the resolvent zero B(a+s, a+1-s) = B0/|lambda| when |lambda| < 1.
// Throws admissibility_error when the window is empty (|lambda| >= 1).
ContourSettings default_exterior(const ProblemSpec& spec);

// Upper end of the exterior window: min(a+1, resolvent zero).
double exterior_sigma_upper(const ProblemSpec& spec);

// Resolvent ratio  B(a+s, a+1-s) / (B0 - lambda B(a+s, a+1-s)).
// Throws pole_error at the gamma poles on the real axis and
// near_zero_denominator_error within 1e-10 (relative) of a resolvent zero.
complex kernel_ratio(complex s, const ProblemSpec& spec);

// f(x) = 1 - lambda fA (1/2pi) Int KR(s) (x/A)^{1-s}/(1-s) dt  on Re s = sigma,
// for x in [0, A]. fA is the junction value the formula is closed with.
complex f_interior_mb(double x, const ProblemSpec& spec, complex fA,
                      const ContourSettings& cs, double* est_err = nullptr);

// f(x) = fA [1 + lambda (1/2pi) Int KR(s) (1 - (x/A)^{1-s})/(1-s) dt]  for x >= A,
// on an exterior line sigma in (1, a+1).
complex f_exterior_mb(double x, const ProblemSpec& spec, complex fA,
                      const ContourSettings& cs, double* est_err = nullptr);

// f'(x) = -(lambda fA / A) (1/2pi) Int KR(s) (x/A)^{-s} dt,  x in (0, A].
complex fprime_interior_mb(double x, const ProblemSpec& spec, complex fA,
                           const ContourSettings& cs, double* est_err = nullptr);

// Both closures of the junction value:
//   exterior: f(A) = 1/(1 + lambda Jt(sigma_e)), from requiring f -> 1 at infinity;
//   interior: f(A) = 1/(1 + lambda Jt(sigma_i)), from the interior formula at x = A;
// Jt(sigma) = (1/2pi) Int KR/(1-s) dt. The two lines are separated by the pole
// at s = 1, so the closures differ by the residue there.
struct ClosurePair {
    complex exterior;
    complex interior;
    double est_error_ext = 0.0;
    double est_error_int = 0.0;
    bool agree = false;      // |exterior - interior| within 10x combined estimate
};
ClosurePair f_at_A_both(const ProblemSpec& spec, const ContourSettings& exterior_cs);

// Junction value by the exterior closure, cross-checked against the interior
// closure; throws disagreement_error when the two differ beyond 10x the
// combined quadrature estimate.
complex f_at_A(const ProblemSpec& spec, const ContourSettings& exterior_cs);

} // namespace dixon::mellin
