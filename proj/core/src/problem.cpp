#include "dixon/problem.hpp"

#include <cmath>

#include "dixon/quadrature.hpp"
#include "dixon/specfun.hpp"

namespace dixon {

ProblemSpec ProblemSpec::make(double a, double A, complex lambda) {
    if (!(a > 0.0) || !std::isfinite(a)) throw domain_error("ProblemSpec: a must be positive and finite");
    if (a > 16.0) throw domain_error("ProblemSpec: a > 16 unsupported");
    if (!(A >= 1.0) || !std::isfinite(A)) throw domain_error("ProblemSpec: A must be >= 1 and finite");
    if (lambda == complex(0.0) || !std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw domain_error("ProblemSpec: lambda must be nonzero and finite");
    ProblemSpec s;
    s.a = a;
    s.A = A;
    s.lambda = lambda;
    s.b0 = specfun::beta(complex(a), complex(a + 1.0)).real();
    return s;
}

complex ProblemSpec::lambda_tilde() const {
    using detail::dd;
    dd lg = detail::dd_lgamma(dd(a)) + detail::dd_lgamma(dd(a + 1.0));
    return lambda * double(detail::dd_exp(-lg));
}

const char* method_name(Method m) {
    switch (m) {
        case Method::nystrom: return "nystrom";
        case Method::picard: return "picard";
        case Method::mellin: return "mellin";
        case Method::series: return "series";
    }
    return "?";
}

double kernel_h(double x, double a) {
    if (!(x >= 0.0)) throw domain_error("kernel_h: x must be >= 0");
    if (!(a > 0.0)) throw domain_error("kernel_h: a must be positive");
    if (x == 0.0) return 0.0;
    return std::exp(a * std::log(x) - (1.0 + 2.0 * a) * std::log1p(x));
}

complex fredholm_kernel(double x, double y, const ProblemSpec& spec) {
    if (!(x >= 0.0)) throw domain_error("fredholm_kernel: x must be >= 0");
    if (!(y > 0.0)) throw domain_error("fredholm_kernel: y must be positive");
    if (x == 0.0) return 0.0;
    double a = spec.a;
    double lg = (a + 1.0) * std::log(x) + (a - 1.0) * std::log(y) -
                (1.0 + 2.0 * a) * std::log(x + y);
    return spec.lambda * std::exp(lg) / spec.b0;
}

Admissibility admissible(const ProblemSpec& spec, double sigma) {
    if (!(sigma > -spec.a) || !(sigma < spec.a + 1.0))
        throw range_error("admissible: sigma outside (-a, a+1)");
    double bs = specfun::beta(complex(spec.a + sigma), complex(spec.a + 1.0 - sigma)).real();
    Admissibility r;
    r.sigma = sigma;
    r.bound = spec.b0 / bs;
    r.margin = r.bound - std::abs(spec.lambda);
    r.ok = r.margin > 0.0;
    return r;
}

double residual_supnorm(const std::function<complex(double)>& f,
                        const ProblemSpec& spec, int n_quad, int n_check) {
    if (n_quad < 8) throw size_error("residual_supnorm: n_quad must be >= 8");
    if (n_check < 8) throw size_error("residual_supnorm: n_check must be >= 8");
    auto rule = quadrature::gauss_jacobi(n_quad, spec.a, spec.A);
    std::vector<complex> fy(rule.nodes.size());
    for (size_t j = 0; j < rule.nodes.size(); ++j) fy[j] = f(rule.nodes[j]);
    double worst = 0.0;
    for (int i = 1; i <= n_check; ++i) {
        double x = spec.A * double(i) / double(n_check);
        complex acc = 0.0;
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            double y = rule.nodes[j];
            // weight already carries y^{a-1}
            double g = std::exp((spec.a + 1.0) * std::log(x) -
                                (1.0 + 2.0 * spec.a) * std::log(x + y));
            acc += rule.weights[j] * g * fy[j];
        }
        complex resid = f(x) - 1.0 - spec.lambda / spec.b0 * acc;
        worst = std::max(worst, std::abs(resid));
    }
    return worst;
}

} // namespace dixon
