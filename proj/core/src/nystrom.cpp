#include "dixon/nystrom.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "dixon/problem.hpp"
#include "dixon/quadrature.hpp"

namespace dixon::nystrom {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// K_ij = w_j * lambda/B0 * x_i^{a+1} (x_i + y_j)^{-1-2a}; the y^{a-1} of the
// kernel lives in the quadrature weight.
Mat build_matrix(const ProblemSpec& spec, const quadrature::GaussJacobi& rule) {
    int n = int(rule.nodes.size());
    Mat M(n, n);
    complex c = spec.lambda / spec.b0;
    for (int i = 0; i < n; ++i) {
        double x = rule.nodes[i];
        double xp = (spec.a + 1.0) * std::log(x);
        for (int j = 0; j < n; ++j) {
            double y = rule.nodes[j];
            complex k = c * std::exp(xp - (1.0 + 2.0 * spec.a) * std::log(x + y));
            M(i, j) = (i == j ? 1.0 : 0.0) - rule.weights[j] * k;
        }
    }
    return M;
}

// Hager-style 1-norm estimate of inv(M) through the factorization.
double inv_norm1_estimate(const Eigen::PartialPivLU<Mat>& lu, int n) {
    Vec x = Vec::Constant(n, complex(1.0 / n, 0.0));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        Vec y = lu.solve(x);
        est = y.lpNorm<1>();
        Vec xi(n);
        for (int i = 0; i < n; ++i) {
            double m = std::abs(y[i]);
            xi[i] = m == 0.0 ? complex(1.0) : y[i] / m;
        }
        Vec z = lu.adjoint().solve(xi);
        int jmax = 0;
        double zmax = 0.0;
        for (int i = 0; i < n; ++i)
            if (std::abs(z[i]) > zmax) { zmax = std::abs(z[i]); jmax = i; }
        if (zmax <= std::abs(z.dot(x))) break;
        x.setZero();
        x[jmax] = 1.0;
    }
    return est;
}

quadrature::GaussJacobi make_rule(const ProblemSpec& spec, int n) {
    if (n < 8 || n > 2048) throw size_error("nystrom: n outside [8, 2048]");
    return quadrature::gauss_jacobi(n, spec.a, spec.A);
}

} // namespace

NystromGrid nystrom_solve(const ProblemSpec& spec, int n) {
    auto rule = make_rule(spec, n);
    Mat M = build_matrix(spec, rule);
    Eigen::PartialPivLU<Mat> lu(M);
    Vec rhs = Vec::Constant(n, complex(1.0, 0.0));
    Vec f = lu.solve(rhs);
    if (!f.allFinite()) throw singular_error("nystrom_solve: singular collocation system");

    NystromGrid g;
    g.n = n;
    g.nodes = rule.nodes;
    g.weights = rule.weights;
    g.f_values.assign(f.data(), f.data() + n);

    double norm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(M(i, j));
        norm1 = std::max(norm1, col);
    }
    g.cond_estimate = norm1 * inv_norm1_estimate(lu, n);
    g.backward_error = (M * f - rhs).lpNorm<Eigen::Infinity>();
    return g;
}

complex nystrom_eval(const NystromGrid& grid, const ProblemSpec& spec, double x) {
    if (!(x >= 0.0) || x > spec.A)
        throw range_error("nystrom_eval: x outside [0, A]");
    if (x == 0.0) return complex(1.0, 0.0);
    complex acc = 0.0;
    double xp = (spec.a + 1.0) * std::log(x);
    for (size_t j = 0; j < grid.nodes.size(); ++j) {
        double g = std::exp(xp - (1.0 + 2.0 * spec.a) * std::log(x + grid.nodes[j]));
        acc += grid.weights[j] * g * grid.f_values[j];
    }
    return 1.0 + spec.lambda / spec.b0 * acc;
}

NystromGrid picard_solve(const ProblemSpec& spec, int n, int max_iter, double tol,
                         PicardInfo* info) {
    auto adm = admissible(spec, 0.5);
    if (!adm.ok)
        throw admissibility_error("picard_solve: operator does not contract at sigma = 1/2",
                                  adm.bound, std::abs(spec.lambda), 0.5);
    if (max_iter < 1) throw size_error("picard_solve: max_iter must be >= 1");
    if (!(tol > 0.0)) throw domain_error("picard_solve: tol must be positive");
    auto rule = make_rule(spec, n);
    int N = n;
    // iteration matrix K (without the identity)
    Mat K(N, N);
    complex c = spec.lambda / spec.b0;
    for (int i = 0; i < N; ++i) {
        double x = rule.nodes[i];
        double xp = (spec.a + 1.0) * std::log(x);
        for (int j = 0; j < N; ++j)
            K(i, j) = rule.weights[j] * c *
                      std::exp(xp - (1.0 + 2.0 * spec.a) * std::log(x + rule.nodes[j]));
    }
    Vec one = Vec::Constant(N, complex(1.0, 0.0));
    Vec f = one;
    double prev_delta = 0.0, delta = 0.0, ratio = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        Vec nf = one + K * f;
        delta = (nf - f).lpNorm<Eigen::Infinity>();
        f = nf;
        if (prev_delta > 0.0) ratio = delta / prev_delta;
        prev_delta = delta;
        if (delta < tol) { ++it; break; }
    }
    if (delta >= tol)
        throw nonconvergence_error("picard_solve: max_iter reached, contraction ratio " +
                                       std::to_string(ratio),
                                   ratio);
    if (info) {
        info->iterations = it;
        info->last_delta = delta;
        info->ratio = ratio;
    }
    NystromGrid g;
    g.n = N;
    g.nodes = rule.nodes;
    g.weights = rule.weights;
    g.f_values.assign(f.data(), f.data() + N);
    g.cond_estimate = 0.0;
    Vec resid = f - one - K * f;
    g.backward_error = resid.lpNorm<Eigen::Infinity>();
    return g;
}

} // namespace dixon::nystrom
