#pragma once

#include <string>

#include "dixon/specfun.hpp"
#include "dixon/types.hpp"

namespace dixon::series {

// Truncation plan for the double (Neumann x pole) series.
struct SeriesTruncation {
    int n_max = 0;       // Neumann depth
    int m_max = 0;       // pole depth available to residue sums
    double tol = 1e-9;   // absolute target on f
    double rho = 0.0;    // contraction ratio |lambda| / bound(1/2), < 1
};

// Chooses n_max from the geometric tail rho^{n+1}/(1-rho) <= tol/2 and m_max
// from the first-term pole decay at z_worst. Throws admissibility_error when
// rho >= 1.
SeriesTruncation auto_truncation(const ProblemSpec& spec, double tol, double z_worst = 0.95);

// r! [u^r] S(u)^n where S(u) = sum_k c[k][m] u^k is the shifted Laurent unit
// of u Gamma(u - m); carries the (-1)^{mn} orientation of the pole.
double pole_power_limit(int n, int r, int m, const specfun::LaurentTable& table);

// d^nu/ds^nu [ Gamma(a+1-s)^n ] at s = -(a+m); the chain rule contributes
// (-1)^nu relative to derivatives in the Gamma argument. Throws overflow_error
// when the value exceeds double range.
double gamma_power_derivative(int n, int nu, int m, double a);

// Residue of [Gamma(a+s)Gamma(a+1-s)]^n (x/A)^{1-s}/(1-s) at s = -(a+m), x in (0, A].
complex residue_interior(int n, int m, double x, const ProblemSpec& spec,
                         const specfun::LaurentTable& table);

// Residue at the exterior pole s = a+1+m, x >= A.
complex residue_exterior(int n, int m, double x, const ProblemSpec& spec,
                         const specfun::LaurentTable& table);

// T_n(z) = (1/2pi) Int [Gamma(a+s)Gamma(a+1-s)]^n z^{1-s}/(1-s) dt on Re s = sigma.
// Interior line sigma in (-a, a+1), z in (0, 1].
complex neumann_term_contour(int n, double z, double a, double abs_tol, double sigma = 0.5);

// Same Neumann term by its pole expansion: sum_m residues, accumulated in
// extended precision through the scaled table. max_term_out reports the largest
// |term| met, the conditioning certificate of the sum.
complex neumann_term_residues(int n, double z, double a, int m_cap,
                              const specfun::LaurentTable& table,
                              double* max_term_out = nullptr);

// X_n(z) = (1/2pi) Int [GG]^n z^{1-s}/(1-s) dt on an exterior line sigma in (1, a+1), z >= 1.
complex exterior_term_contour(int n, double z, double a, double abs_tol, double sigma);

// D*_n = (1/2pi) Int [GG]^n /(1-s) dt, sigma-independent inside (1, a+1); cached per (n, a).
complex exterior_constant_term(int n, double a, double abs_tol);

struct SeriesEval {
    complex value;
    double est_error = 0.0;
    int n_used = 0;
    int m_used = 0;           // deepest pole index consumed by any residue sum
    std::string route;        // "residues:<k> contour:<k>"
};

// f(x) = 1 - fA sum_n lt^n T_n(x/A), lt = lambda/(Gamma(a)Gamma(a+1)). Each
// Neumann term goes through its residue sum when that sum is well conditioned
// in extended precision and through contour quadrature otherwise.
SeriesEval f_interior_series(double x, const ProblemSpec& spec, complex fA,
                             const SeriesTruncation& trunc,
                             const specfun::LaurentTable& table);

// f(x) = fA [1 + sum_n lt^n (D*_n - X_n(x/A))] for x >= A. Each combined term
// is free of the s = 1 residue (it cancels between D*_n and X_n), so the sum
// converges at the interior ratio rho and the evaluation stays stable up to
// the sigma = 1/2 admissibility bound.
SeriesEval f_exterior_series(double x, const ProblemSpec& spec, complex fA,
                             const SeriesTruncation& trunc,
                             const specfun::LaurentTable& table);

struct ConstantSum {
    complex value;            // S = -sum_n lt^n D*_n
    double est_error = 0.0;
    int n_used = 0;
};

// The x-free part of the exterior display; the series closure of the junction
// value is fA = 1/(1 - S). Throws nonconvergence_error when |lambda| >= 1
// (the constant series has unit radius in |lambda|, unlike the combined
// exterior terms). The table parameter is accepted for interface symmetry
// with the other series evaluators; the constant part carries no pole data.
ConstantSum exterior_constant_sum(const ProblemSpec& spec, const SeriesTruncation& trunc,
                                  const specfun::LaurentTable& table);

} // namespace dixon::series
