#include "dixon/mellin.hpp"

#include <algorithm>
#include <cmath>

#include "dixon/problem.hpp"
#include "dixon/quadrature.hpp"
#include "dixon/specfun.hpp"

namespace dixon::mellin {

namespace {

void validate(const ContourSettings& cs) {
    if (cs.panel != 16) throw size_error("ContourSettings: only 16-point panels supported");
    if (!(cs.abs_tol > 0.0)) throw domain_error("ContourSettings: abs_tol must be positive");
    if (!(cs.t_max > 1.0)) throw domain_error("ContourSettings: t_max must exceed 1");
}

complex contour_mean(const std::function<complex(complex)>& F, double sigma,
                     const ContourSettings& cs, double width, double decay,
                     bool conj_sym, double* est_err) {
    validate(cs);
    quadrature::ContourOptions opt;
    opt.sigma = sigma;
    opt.width = std::min(width, 1.0);
    opt.decay = decay;
    opt.abs_tol = cs.abs_tol;
    opt.t_cap = cs.t_max;
    opt.conj_sym = conj_sym;
    return quadrature::contour_mean(F, opt, est_err);
}

// Jt(sigma) = (1/2pi) Int KR/(1-s) dt
complex jt_integral(const ProblemSpec& spec, const ContourSettings& cs, double* est_err) {
    auto F = [&](complex s) { return kernel_ratio(s, spec) / (1.0 - s); };
    return contour_mean(F, cs.sigma, cs, 1.0, 3.14159265358979, spec.real_lambda(), est_err);
}

} // namespace

ContourSettings default_interior(const ProblemSpec& spec) {
    auto adm = admissible(spec, 0.5);
    if (!adm.ok)
        throw admissibility_error("default_interior: |lambda| at or above the sigma = 1/2 bound",
                                  adm.bound, std::abs(spec.lambda), 0.5);
    ContourSettings cs;
    cs.sigma = 0.5;
    return cs;
}

double exterior_sigma_upper(const ProblemSpec& spec) {
    double al = std::abs(spec.lambda);
    if (admissible(spec, 1.0 + 1e-9).margin <= 0.0 || al >= 1.0)
        throw admissibility_error("exterior window empty: |lambda| >= 1", 1.0, al, 1.0);
    // bound(sigma) decreases from 1 at sigma = 1 to 0 at sigma = a+1; the
    // window's upper end is where bound(sigma) = |lambda|
    double lo = 1.0, hi = spec.a + 1.0 - 1e-12;
    if (admissible(spec, hi).margin > 0.0) return spec.a + 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (admissible(spec, mid).margin > 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-14) break;
    }
    return lo;
}

ContourSettings default_exterior(const ProblemSpec& spec) {
    double up = exterior_sigma_upper(spec);
    ContourSettings cs;
    cs.sigma = 0.5 * (1.0 + up);
    if (cs.sigma - 1.0 < 1e-6)
        throw admissibility_error("exterior window too thin", up, std::abs(spec.lambda), cs.sigma);
    return cs;
}

complex kernel_ratio(complex s, const ProblemSpec& spec) {
    complex ap = complex(spec.a) + s;
    complex aq = complex(spec.a + 1.0) - s;
    auto at_pole = [](complex w) {
        return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real());
    };
    if (at_pole(ap) || at_pole(aq))
        throw pole_error("kernel_ratio: gamma pole on the evaluation line");
    complex b = specfun::beta(ap, aq);
    complex den = spec.b0 - spec.lambda * b;
    if (std::abs(den) < 1e-10 * spec.b0)
        throw near_zero_denominator_error("kernel_ratio: resolvent denominator below margin");
    return b / den;
}

complex f_interior_mb(double x, const ProblemSpec& spec, complex fA,
                      const ContourSettings& cs, double* est_err) {
    if (!(x >= 0.0) || x > spec.A)
        throw range_error("f_interior_mb: x outside [0, A]");
    {
        auto adm = admissible(spec, cs.sigma);
        if (!adm.ok)
            throw admissibility_error("f_interior_mb: sigma line not admissible",
                                      adm.bound, std::abs(spec.lambda), cs.sigma);
    }
    if (x == 0.0) {
        if (est_err) *est_err = 0.0;
        return complex(1.0, 0.0);
    }
    double L = std::log(x / spec.A);
    auto F = [&](complex s) {
        return kernel_ratio(s, spec) * std::exp((1.0 - s) * L) / (1.0 - s);
    };
    double width = std::min(1.0, 3.0 / std::max(1.0, std::abs(L)));
    double err = 0.0;
    complex v = contour_mean(F, cs.sigma, cs, width, 3.14159265358979,
                             spec.real_lambda(), &err);
    if (est_err) *est_err = std::abs(spec.lambda * fA) * err;
    return 1.0 - spec.lambda * fA * v;
}

complex f_exterior_mb(double x, const ProblemSpec& spec, complex fA,
                      const ContourSettings& cs, double* est_err) {
    if (!(x >= spec.A)) throw range_error("f_exterior_mb: x must be >= A");
    if (!(cs.sigma > 1.0) || !(cs.sigma < spec.a + 1.0))
        throw range_error("f_exterior_mb: sigma outside (1, a+1)");
    {
        auto adm = admissible(spec, cs.sigma);
        if (!adm.ok)
            throw admissibility_error("f_exterior_mb: sigma line not admissible",
                                      adm.bound, std::abs(spec.lambda), cs.sigma);
    }
    double L = std::log(x / spec.A);
    auto F = [&](complex s) {
        return kernel_ratio(s, spec) * (1.0 - std::exp((1.0 - s) * L)) / (1.0 - s);
    };
    double width = std::min(1.0, 3.0 / std::max(1.0, std::abs(L)));
    double err = 0.0;
    complex v = contour_mean(F, cs.sigma, cs, width, 3.14159265358979,
                             spec.real_lambda(), &err);
    if (est_err) *est_err = std::abs(spec.lambda * fA) * err;
    return fA * (1.0 + spec.lambda * v);
}

complex fprime_interior_mb(double x, const ProblemSpec& spec, complex fA,
                           const ContourSettings& cs, double* est_err) {
    if (!(x > 0.0) || x > spec.A)
        throw range_error("fprime_interior_mb: x outside (0, A]");
    {
        auto adm = admissible(spec, cs.sigma);
        if (!adm.ok)
            throw admissibility_error("fprime_interior_mb: sigma line not admissible",
                                      adm.bound, std::abs(spec.lambda), cs.sigma);
    }
    double L = std::log(x / spec.A);
    auto F = [&](complex s) { return kernel_ratio(s, spec) * std::exp(-s * L); };
    double width = std::min(1.0, 3.0 / std::max(1.0, std::abs(L)));
    double err = 0.0;
    complex v = contour_mean(F, cs.sigma, cs, width, 3.14159265358979,
                             spec.real_lambda(), &err);
    if (est_err) *est_err = std::abs(spec.lambda * fA / spec.A) * err;
    return -spec.lambda * fA / spec.A * v;
}

ClosurePair f_at_A_both(const ProblemSpec& spec, const ContourSettings& exterior_cs) {
    if (!(exterior_cs.sigma > 1.0) || !(exterior_cs.sigma < spec.a + 1.0))
        throw range_error("f_at_A_both: exterior sigma outside (1, a+1)");
    ClosurePair out;
    ContourSettings in = default_interior(spec);
    in.abs_tol = exterior_cs.abs_tol;
    in.t_max = exterior_cs.t_max;
    double ee = 0.0, ei = 0.0;
    complex je = jt_integral(spec, exterior_cs, &ee);
    complex ji = jt_integral(spec, in, &ei);
    complex de = 1.0 + spec.lambda * je;
    complex di = 1.0 + spec.lambda * ji;
    if (std::abs(de) < 1e-12 || std::abs(di) < 1e-12)
        throw near_zero_denominator_error("f_at_A: closure denominator vanishes");
    out.exterior = 1.0 / de;
    out.interior = 1.0 / di;
    double le = std::abs(spec.lambda);
    out.est_error_ext = le * ee * std::norm(out.exterior);
    out.est_error_int = le * ei * std::norm(out.interior);
    out.agree = std::abs(out.exterior - out.interior) <=
                10.0 * (out.est_error_ext + out.est_error_int);
    return out;
}

complex f_at_A(const ProblemSpec& spec, const ContourSettings& exterior_cs) {
    ClosurePair p = f_at_A_both(spec, exterior_cs);
    if (!p.agree)
        throw disagreement_error(
            "f_at_A: exterior and interior closures disagree; the contour lines are "
            "separated by the pole at s = 1 and the two limits differ by its residue",
            std::abs(p.exterior - p.interior),
            10.0 * (p.est_error_ext + p.est_error_int));
    return p.exterior;
}

} // namespace dixon::mellin
