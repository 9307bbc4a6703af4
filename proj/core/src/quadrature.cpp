#include "dixon/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace dixon::quadrature {

namespace {

struct Rule {
    std::vector<double> x, w;   // on [-1, 1]
};

// Golub-Welsch for weight (1+t)^{a-1} on [-1, 1] (Jacobi alpha=0, beta=a-1).
Rule jacobi_rule(int n, double a) {
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    double ab = a - 1.0;
    diag[0] = (a - 1.0) / (a + 1.0);
    for (int k = 1; k < n; ++k) {
        diag[k] = (a - 1.0) * (a - 1.0) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
        sub[k - 1] = 2.0 * k * (k + a - 1.0) /
                     ((2.0 * k + ab) * std::sqrt((2.0 * k + a) * (2.0 * k + a - 2.0)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw singular_error("jacobi_rule: eigen decomposition failed");
    double mu0 = std::pow(2.0, a) / a;
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int j = 0; j < n; ++j) {
        r.x[j] = es.eigenvalues()[j];
        double v0 = es.eigenvectors()(0, j);
        r.w[j] = mu0 * v0 * v0;
    }
    return r;
}

const Rule& gl16_rule() {
    static Rule r = jacobi_rule(16, 1.0);
    return r;
}

complex adapt(const std::function<complex(double)>& f, double t0, double t1,
              complex whole, double tol, int depth, double& err_out) {
    double tm = 0.5 * (t0 + t1);
    complex left = integrate_gl16(f, t0, tm);
    complex right = integrate_gl16(f, tm, t1);
    double gap = std::abs(left + right - whole);
    // once the gap reaches the roundoff floor of the panel values, further
    // bisection cannot improve the estimate; accept instead of recursing.
    // the factor covers chained special-function evaluation (lgamma, exp,
    // resolvent division), whose pointwise noise is far above one ulp
    double floor = 256.0 * std::numeric_limits<double>::epsilon() *
                   (std::abs(left) + std::abs(right) + std::abs(whole));
    if (gap <= tol || gap <= floor) {
        err_out += gap;
        return left + right;
    }
    if (depth <= 0)
        throw nonconvergence_error("integrate_adaptive: bisection depth exhausted", gap);
    return adapt(f, t0, tm, left, std::max(0.5 * tol, floor), depth - 1, err_out) +
           adapt(f, tm, t1, right, std::max(0.5 * tol, floor), depth - 1, err_out);
}

} // namespace

GaussJacobi gauss_jacobi(int n, double a, double A) {
    if (n < 1 || n > 4096) throw size_error("gauss_jacobi: n outside [1, 4096]");
    if (!(a > 0.0)) throw domain_error("gauss_jacobi: a must be positive");
    if (!(A > 0.0)) throw domain_error("gauss_jacobi: A must be positive");
    Rule r = jacobi_rule(n, a);
    GaussJacobi out;
    out.a = a;
    out.A = A;
    out.nodes.resize(n);
    out.weights.resize(n);
    double scale = std::pow(0.5 * A, a);
    for (int j = 0; j < n; ++j) {
        out.nodes[j] = 0.5 * A * (1.0 + r.x[j]);
        out.weights[j] = scale * r.w[j];
    }
    return out;
}

complex integrate_gl16(const std::function<complex(double)>& f, double t0, double t1) {
    const Rule& r = gl16_rule();
    double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
    complex acc = 0.0;
    for (int j = 0; j < 16; ++j)
        acc += r.w[j] * f(c + h * r.x[j]);
    return h * acc;
}

complex integrate_adaptive(const std::function<complex(double)>& f, double t0,
                           double t1, double tol, int max_depth, double& err_out) {
    complex whole = integrate_gl16(f, t0, t1);
    return adapt(f, t0, t1, whole, tol, max_depth, err_out);
}

complex contour_mean(const std::function<complex(complex)>& F,
                     const ContourOptions& opt, double* est_err) {
    if (!(opt.abs_tol > 0.0)) throw domain_error("contour_mean: abs_tol must be positive");
    if (!(opt.t_cap > opt.width)) throw domain_error("contour_mean: t_cap must exceed width");
    constexpr double kTwoPi = 6.28318530717958647692;
    double width = std::clamp(opt.width, 1.0 / 64.0, 4.0);
    complex acc = 0.0;
    double err = 0.0;
    int below = 0;
    double t = 0.0;
    double panel_tol = opt.abs_tol / 20.0;
    while (true) {
        double t1 = t + width;
        auto up = [&](double tt) { return F(complex(opt.sigma, tt)); };
        complex pair = integrate_adaptive(up, t, t1, panel_tol, 32, err);
        if (opt.conj_sym) {
            pair += std::conj(pair);
        } else {
            auto dn = [&](double tt) { return F(complex(opt.sigma, -tt)); };
            pair += integrate_adaptive(dn, t, t1, panel_tol, 32, err);
        }
        acc += pair;
        t = t1;
        double r = std::exp(-opt.decay * width);
        double tail = std::abs(pair) * r / std::max(1.0 - r, 1e-3);
        if (std::abs(pair) < opt.abs_tol / 10.0 && tail < opt.abs_tol / 2.0) {
            if (++below >= 2) break;
        } else {
            below = 0;
        }
        if (t >= opt.t_cap)
            throw nonconvergence_error(
                "contour_mean: not converged by t_cap = " + std::to_string(opt.t_cap),
                std::abs(pair));
    }
    if (est_err) *est_err = (err + opt.abs_tol) / kTwoPi;
    return acc / kTwoPi;
}

} // namespace dixon::quadrature
