#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dixon {

using complex = std::complex<double>;

// Error taxonomy. Every throwing precondition in the library maps onto one of
// these so callers (and the CLI exit-code logic) can dispatch on type.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid numeric input: argument outside the mathematical domain of the operation
struct domain_error : error {
    using error::error;
};

// argument outside a documented finite range (sigma windows, grid bounds, ...)
struct range_error : domain_error {
    using domain_error::domain_error;
};

// evaluation requested exactly at a pole
struct pole_error : domain_error {
    using domain_error::domain_error;
};

// discrete size parameter out of its supported range
struct size_error : domain_error {
    using domain_error::domain_error;
};

// a coefficient table is too shallow for the requested index
struct table_depth_error : size_error {
    using size_error::size_error;
};

// mismatched container lengths
struct length_error : domain_error {
    using domain_error::domain_error;
};

// intermediate quantity exceeds representable range and no rescaling applies
struct overflow_error : error {
    using error::error;
};

// |lambda| at or above the contraction bound for the sigma in use
struct admissibility_error : error {
    double bound;        // sup of |lambda| admissible at the offending sigma
    double abs_lambda;
    double sigma;
    admissibility_error(const std::string& msg, double bound_, double abs_lambda_, double sigma_)
        : error(msg), bound(bound_), abs_lambda(abs_lambda_), sigma(sigma_) {}
};

// an iteration or tail-extension loop hit its cap before meeting tolerance
struct nonconvergence_error : error {
    double achieved;     // best error estimate (or contraction ratio) reached
    nonconvergence_error(const std::string& msg, double achieved_ = 0.0)
        : error(msg), achieved(achieved_) {}
};

// two supposedly equal evaluations differ beyond their combined error budget
struct disagreement_error : error {
    double gap;
    double budget;
    disagreement_error(const std::string& msg, double gap_, double budget_)
        : error(msg), gap(gap_), budget(budget_) {}
};

// linear system numerically singular
struct singular_error : error {
    using error::error;
};

// near-zero denominator in a closure or resolvent expression
struct near_zero_denominator_error : error {
    using error::error;
};

// Problem data for  f(x) = 1 + lambda x^{a+1}/B(a,a+1) * Int_0^A y^{a-1} (x+y)^{-1-2a} f(y) dy.
struct ProblemSpec {
    double a = 0.5;            // kernel shape parameter, a > 0
    double A = 1.0;            // right endpoint of the integration interval, A >= 1
    complex lambda{0.5, 0.0};  // coupling constant, nonzero
    double b0 = 0.0;           // cached B(a, a+1)

    // Validates ranges and caches b0. Throws domain_error on bad input.
    static ProblemSpec make(double a, double A, complex lambda);

    bool real_lambda() const { return lambda.imag() == 0.0; }
    // lambda / (Gamma(a) Gamma(a+1)), the natural coupling of the contour form
    complex lambda_tilde() const;
};

enum class Method { nystrom, picard, mellin, series };

const char* method_name(Method m);

// One method's values over a shared evaluation grid.
struct MethodResult {
    Method method{};
    std::vector<double> xs;            // strictly increasing
    std::vector<complex> values;
    std::vector<double> est_error;     // per-point absolute error estimate
    std::map<std::string, std::string> meta;  // truncation indices, sigma, closure values, ...
};

} // namespace dixon
