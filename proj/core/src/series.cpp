#include "dixon/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "dixon/combinat.hpp"
#include "dixon/problem.hpp"
#include "dixon/quadrature.hpp"

namespace dixon::series {

using detail::dd;
using specfun::LaurentTable;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDDEps = 1e-31;          // double-double working precision
constexpr double kExpCap = 690.0;         // dd_exp overflow guard on ln scale
constexpr int kMsumNCap = 24;             // residue route cost cap in n

using dvec = std::vector<dd>;

dvec smul(const dvec& A, const dvec& B, int K) {
    dvec r(K + 1, dd(0.0));
    for (int k = 0; k <= K; ++k) {
        dd acc(0.0);
        for (int i = 0; i <= k; ++i)
            if (i < int(A.size()) && k - i < int(B.size())) acc += A[i] * B[k - i];
        r[k] = acc;
    }
    return r;
}

dvec spow_series(const dvec& A, int n, int K) {
    dvec r(K + 1, dd(0.0));
    r[0] = dd(1.0);
    for (int i = 0; i < n; ++i) r = smul(r, A, K);
    return r;
}

// exp of a power series with d[0] = 0:  k e_k = sum_i i d_i e_{k-i}
dvec sexp(const dvec& d, int K) {
    dvec e(K + 1, dd(0.0));
    e[0] = dd(1.0);
    for (int k = 1; k <= K; ++k) {
        dd acc(0.0);
        for (int i = 1; i <= k && i < int(d.size()); ++i)
            acc += dd(double(i)) * d[i] * e[k - i];
        e[k] = acc / dd(double(k));
    }
    return e;
}

// Absolute-value shadow of the dd pipeline: the same recurrences run on
// coefficient magnitudes in plain double. Every entry bounds the largest
// intermediate behind the corresponding dd coefficient, so PAbs * kDDEps
// bounds the cancellation noise of an assembled residue.
using avec = std::vector<double>;

avec amul(const avec& A, const avec& B, int K) {
    avec r(K + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (int i = 0; i <= k; ++i)
            if (i < int(A.size()) && k - i < int(B.size())) acc += A[i] * B[k - i];
        r[k] = acc;
    }
    return r;
}

avec apow(const avec& A, int n, int K) {
    avec r(K + 1, 0.0);
    r[0] = 1.0;
    for (int i = 0; i < n; ++i) r = amul(r, A, K);
    return r;
}

avec aexp(const avec& d, int K) {
    avec e(K + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k && i < int(d.size()); ++i) acc += double(i) * d[i] * e[k - i];
        e[k] = acc / double(k);
    }
    return e;
}

// Per-shape caches: log-gamma ratios, the polygamma ladder at w0 = 2a+1+m, and
// the z-independent series products of the residue assembly.
struct AsmCache {
    double a = 0.0;
    int m_cap = -1;
    int j_cap = -1;
    std::vector<dd> lg_ratio;               // lnGamma(2a+1+m) - ln m!
    std::vector<dvec> psi;                  // psi[j][m] = psi^{(j)}(2a+1+m)
    struct PgEntry {
        dvec pg;       // [u] series of S^n e^{n psi-sum}
        avec pg_abs;   // magnitude bound per coefficient
    };
    std::map<std::pair<int, int>, PgEntry> pg_int;
    std::map<std::pair<int, int>, PgEntry> pg_ext;
    std::mutex pg_mu;
};

std::shared_ptr<AsmCache> asm_cache(double a, int m_cap, int j_cap) {
    static std::map<uint64_t, std::shared_ptr<AsmCache>> store;
    static std::mutex mu;
    uint64_t key;
    std::memcpy(&key, &a, sizeof(key));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = store[key];
    if (slot && slot->m_cap >= m_cap && slot->j_cap >= j_cap) return slot;
    int mc = std::max(m_cap, slot ? slot->m_cap : 0);
    int jc = std::max(j_cap, slot ? slot->j_cap : 0);
    auto c = std::make_shared<AsmCache>();
    c->a = a;
    c->m_cap = mc;
    c->j_cap = jc;
    c->lg_ratio.resize(mc + 1);
    dd w0(2.0 * a + 1.0);
    dd lgw = detail::dd_lgamma(w0);
    dd lgmf(0.0);
    for (int m = 0; m <= mc; ++m) {
        c->lg_ratio[m] = lgw - lgmf;
        lgw = lgw + detail::dd_log(w0 + dd(double(m)));
        lgmf = lgmf + detail::dd_log(dd(double(m + 1)));
    }
    c->psi.assign(jc + 1, dvec(mc + 1));
    for (int j = 0; j <= jc; ++j) {
        c->psi[j][0] = j == 0 ? detail::dd_digamma(w0) : detail::dd_polygamma(j, w0);
        dd jf(1.0);
        for (int i = 2; i <= j; ++i) jf = jf * dd(double(i));
        for (int m = 0; m < mc; ++m) {
            // psi^{(j)}(x+1) = psi^{(j)}(x) + (-1)^j j! x^{-j-1}
            dd x = w0 + dd(double(m));
            dd inv = dd(1.0) / x;
            dd p = inv;
            for (int i = 0; i < j; ++i) p = p * inv;
            dd corr = jf * p;
            c->psi[j][m + 1] = c->psi[j][m] + ((j % 2 == 0) ? corr : dd(0.0) - corr);
        }
    }
    slot = c;
    return slot;
}

const LaurentTable::Scaled& scaled_of(const LaurentTable& table) {
    if (!table.scaled)
        throw domain_error("LaurentTable: missing scaled layer; build via laurent_coeffs");
    return *table.scaled;
}

// z-independent part of a residue: [u] series of S(+-u)^n e^{n psi-sum}
AsmCache::PgEntry pg_series(AsmCache& c, const LaurentTable::Scaled& sc, int n, int m,
                            bool exterior) {
    int K = n - 1;
    {
        std::lock_guard<std::mutex> lock(c.pg_mu);
        auto& memo = exterior ? c.pg_ext : c.pg_int;
        auto it = memo.find({n, m});
        if (it != memo.end()) return it->second;
    }
    dvec St(K + 1);
    avec Sa(K + 1);
    for (int k = 0; k <= K; ++k) {
        dd v = sc.ct[k][m];
        St[k] = (exterior && k % 2 == 1) ? dd(0.0) - v : v;   // exterior uses S(-u)
        Sa[k] = std::abs(double(v));
    }
    dvec Sn = spow_series(St, n, K);
    dvec dg(K + 1, dd(0.0));
    avec da(K + 1, 0.0);
    dd ifact(1.0);
    for (int i = 1; i <= K; ++i) {
        ifact = ifact * dd(double(i));
        dd v = dd(double(n)) * c.psi[i - 1][m] / ifact;
        dg[i] = (!exterior && i % 2 == 1) ? dd(0.0) - v : v;  // interior alternates
        da[i] = std::abs(double(v));
    }
    AsmCache::PgEntry out;
    out.pg = smul(Sn, sexp(dg, K), K);
    out.pg_abs = amul(apow(Sa, n, K), aexp(da, K), K);
    std::lock_guard<std::mutex> lock(c.pg_mu);
    auto& memo = exterior ? c.pg_ext : c.pg_int;
    return memo.emplace(std::make_pair(n, m), std::move(out)).first->second;
}

// Residue at s = -(a+m) (interior) or s = a+1+m (exterior) of
// [GG]^n z^{1-s}/(1-s), with an optional extra e^{ln_weight} folded into the
// exponential scale (used for |lambda-tilde|^n so weighted terms never leave
// the dd exponent range when the raw residue would).
dd residue_dd(AsmCache& c, const LaurentTable::Scaled& sc, int n, int m, dd L,
              double a, bool exterior, dd ln_weight, double* noise_out = nullptr) {
    int K = n - 1;
    const AsmCache::PgEntry pg = pg_series(c, sc, n, m, exterior);
    dd c0 = exterior ? dd(a) + dd(double(m)) : dd(1.0 + a) + dd(double(m));
    dd inv = dd(1.0) / c0;
    dvec W(K + 1);
    avec Wa(K + 1);
    {
        // 1/(c0 -+ u) expansion times the e^{-uL} series
        dvec Einv(K + 1), Eexp(K + 1);
        avec Ea(K + 1), Eb(K + 1);
        dd p = inv;
        for (int k = 0; k <= K; ++k) {
            Einv[k] = (exterior && k % 2 == 1) ? dd(0.0) - p : p;
            Ea[k] = std::abs(double(p));
            p = p * inv;
        }
        dd jf(1.0), Lp(1.0);
        for (int j = 0; j <= K; ++j) {
            if (j > 0) {
                jf = jf * dd(double(j));
                Lp = Lp * (dd(0.0) - L);
            }
            Eexp[j] = Lp / jf;
            Eb[j] = std::abs(double(Eexp[j]));
        }
        W = smul(Einv, Eexp, K);
        Wa = amul(Ea, Eb, K);
    }
    dd P(0.0);
    double Pa = 0.0;
    for (int k = 0; k <= K; ++k) {
        P += pg.pg[k] * W[K - k];
        Pa += pg.pg_abs[k] * Wa[K - k];
    }
    dd scale = dd(double(n)) * c.lg_ratio[m] + (exterior ? (dd(0.0) - c0) * L : c0 * L) +
               ln_weight;
    if (scale.hi > kExpCap) throw overflow_error("residue assembly: scale exceeds range");
    if (noise_out) {
        // cancellation in P leaves noise at the scale of the abs-pipeline bound,
        // not of P itself; work in ln to survive large Pa * e^{scale}
        double ln_noise = std::log(std::max(Pa, 1e-300) * double(K + 1) * kDDEps) + scale.hi;
        *noise_out = ln_noise > 690.0 ? HUGE_VAL : std::exp(ln_noise);
    }
    int sgn_pow = exterior ? (n + 1 + m * n) : (m * n);
    dd v = P * detail::dd_exp(scale);
    return (sgn_pow % 2 == 0) ? v : dd(0.0) - v;
}

// ln|term(m)| profile of a weighted residue sum, scanned in plain double to
// pick a route before anything expensive runs.
struct MsumPlan {
    bool ok = false;
    int m_need = 0;
    double peak_ln = -1e300;   // max over m of the ln-scale of a term
    double tail_ln = -1e300;   // ln-scale at m_need
};

MsumPlan plan_msum(int n, double a, double ln_weight, double c_const, double c_m,
                   double tol_n, int m_cap) {
    MsumPlan plan;
    if (n > kMsumNCap || c_m >= 0.0) return plan;
    double target = std::log(std::max(tol_n, 1e-290)) - 2.3;   // tol_n / 10
    double w0 = 2.0 * a + 1.0;
    for (int m = 0; m <= m_cap; ++m) {
        double w = n * (std::lgamma(w0 + m) - std::lgamma(double(m + 1))) + ln_weight +
                   c_const + c_m * m;
        plan.peak_ln = std::max(plan.peak_ln, w);
        if (w < target && m > 0 && c_m * m < -2.0 * a * n) {   // past the hump
            plan.m_need = m;
            plan.tail_ln = w;
            double noise_ln = plan.peak_ln + std::log(kDDEps * std::sqrt(double(m + 1)));
            plan.ok = plan.peak_ln < kExpCap &&
                      noise_ln < std::log(std::max(tol_n, 1e-290)) - 3.0;
            return plan;
        }
    }
    return plan;   // decay never reached the target within the table
}

// Weighted residue sum over m with measured stopping. The plan profile tracks
// only the exponential scale of a term and misses the assembled series factor,
// which grows with n; truncation and the dd-noise gate therefore run on
// observed magnitudes. ok = false sends the caller to the contour route.
struct MsumRun {
    bool ok = false;
    dd sum{0.0};
    int m_used = 0;
    double err = 0.0;   // measured dd noise plus the geometric tail bound
};

MsumRun msum_measured(AsmCache& c, const LaurentTable::Scaled& sc, int n, dd L,
                      double a, bool exterior, dd lnw, double ratio_inf,
                      double tol_n, int m_hard) {
    MsumRun run;
    dd acc(0.0);
    double max_t = 0.0, prev_t = -1.0, tail = 1e300, noise_sum = 0.0;
    int drop = 0, m = 0;
    bool conv = false;
    try {
        for (; m <= m_hard; ++m) {
            double t_noise = 0.0;
            dd t = residue_dd(c, sc, n, m, L, a, exterior, lnw, &t_noise);
            noise_sum += t_noise;
            if (!(noise_sum <= 0.25 * tol_n)) return run;   // assembly noise too large
            acc += t;
            double at = std::abs(double(t));
            max_t = std::max(max_t, at);
            if (prev_t >= 0.0) {
                if (at < prev_t) ++drop; else drop = 0;
                if (drop >= 3) {
                    // per-m ratio approaches ratio_inf from above once the
                    // polynomial factor stops growing
                    double r = std::min(0.999, std::max(ratio_inf, at / prev_t));
                    tail = at * r / (1.0 - r);
                    if (tail < 0.25 * tol_n && at < 0.25 * tol_n) {
                        conv = true;
                        break;
                    }
                }
            }
            prev_t = at;
        }
    } catch (const overflow_error&) {
        return run;   // term scale outgrew the exponent range mid-sum
    }
    double noise = noise_sum + max_t * kDDEps * std::sqrt(double(m + 1));
    if (!conv || noise > 0.25 * tol_n) return run;
    run.ok = true;
    run.sum = acc;
    run.m_used = m;
    run.err = noise + tail;
    return run;
}

// weighted Neumann term by contour: mean of e^{n(lg GG + lnalt)} z^{1-s}/(1-s)
double weighted_term_contour(int n, double lnalt, double z, double a, double sigma,
                             double abs_tol, double* err) {
    double L = std::log(z);
    auto F = [=](complex s) {
        complex lg = specfun::log_gamma(complex(a) + s) +
                     specfun::log_gamma(complex(a + 1.0) - s);
        return std::exp(double(n) * (lg + lnalt) + (1.0 - s) * L) / (1.0 - s);
    };
    quadrature::ContourOptions opt;
    opt.sigma = sigma;
    opt.width = std::min(1.0, 3.0 / std::max(1.0, std::abs(L)));
    opt.decay = kPi * n;
    opt.abs_tol = abs_tol;
    opt.t_cap = std::max(40.0, 80.0 / n + 20.0);
    opt.conj_sym = true;
    return quadrature::contour_mean(F, opt, err).real();
}

// cache of weighted T_n(1) on sigma = 1/2, keyed by (a, ln|lambda-tilde|, n)
double tn1_weighted(int n, double lnalt, double a, double abs_tol, double* err) {
    struct Val {
        double v, e, tol;
    };
    static std::map<std::tuple<uint64_t, uint64_t, int>, Val> cache;
    static std::mutex mu;
    uint64_t ab, lb;
    std::memcpy(&ab, &a, sizeof(a));
    std::memcpy(&lb, &lnalt, sizeof(lnalt));
    auto key = std::make_tuple(ab, lb, n);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end() && it->second.tol <= abs_tol) {
            if (err) *err = it->second.e;
            return it->second.v;
        }
    }
    double e = 0.0;
    double v = weighted_term_contour(n, lnalt, 1.0, a, 0.5, abs_tol, &e);
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = {v, e, abs_tol};
    if (err) *err = e;
    return v;
}

struct KahanC {
    complex sum = 0.0;
    complex comp = 0.0;
    void add(complex v) {
        complex y = v - comp;
        complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

constexpr int kResidueNMax = 48;          // psi ladder depth bound for residues

void check_table(const LaurentTable& table, int n, int m) {
    if (n < 1) throw domain_error("residue: n must be >= 1");
    if (n > kResidueNMax) throw domain_error("residue: n must be <= 48");
    if (m < 0) throw domain_error("residue: m must be >= 0");
    if (n - 1 > table.k_max)
        throw table_depth_error("residue: table k_max below n-1");
    if (m > table.m_max)
        throw table_depth_error("residue: table m_max below m");
}

int asm_jcap(const LaurentTable& table) {
    return std::max(0, std::min(table.k_max, kResidueNMax - 1) - 1);
}

} // namespace

SeriesTruncation auto_truncation(const ProblemSpec& spec, double tol, double z_worst) {
    if (!(tol >= 1e-14)) throw domain_error("auto_truncation: tol must be >= 1e-14");
    if (!(z_worst > 0.0) || !(z_worst < 1.0))
        throw domain_error("auto_truncation: z_worst outside (0, 1)");
    auto adm = admissible(spec, 0.5);
    if (!adm.ok)
        throw admissibility_error(
            "auto_truncation: Neumann series diverges, |lambda| at or above the bound",
            adm.bound, std::abs(spec.lambda), 0.5);
    SeriesTruncation tr;
    tr.tol = tol;
    tr.rho = std::abs(spec.lambda) / adm.bound;
    tr.n_max = int(std::ceil(std::log(0.5 * tol * (1.0 - tr.rho)) / std::log(tr.rho)));
    tr.n_max = std::clamp(tr.n_max, 4, 2000);
    // pole depth from the first-term decay  m^{2a} z^m  at the worst point
    double L = std::log(z_worst);
    double a = spec.a;
    int m = 8;
    while (m < 1200) {
        double w = std::lgamma(2.0 * a + 1.0 + m) - std::lgamma(double(m + 1)) +
                   (1.0 + a + m) * L;
        if (w < std::log(tr.tol) - 4.6) break;
        ++m;
    }
    tr.m_max = std::clamp(m + 8, 40, 1200);
    return tr;
}

double pole_power_limit(int n, int r, int m, const LaurentTable& table) {
    if (n < 1 || n > 1000) throw domain_error("pole_power_limit: n outside [1, 1000]");
    if (r < 0) throw domain_error("pole_power_limit: r must be >= 0");
    if (r > table.k_max || m < 0 || m > table.m_max)
        throw table_depth_error("pole_power_limit: index beyond table depth");
    std::vector<double> S(r + 1), R(r + 1, 0.0);
    for (int k = 0; k <= r; ++k) S[k] = table.c[k][m];
    R[0] = 1.0;
    for (int t = 0; t < n; ++t) {
        std::vector<double> nR(r + 1, 0.0);
        for (int k = 0; k <= r; ++k)
            for (int i = 0; i <= k; ++i) nR[k] += R[i] * S[k - i];
        R = std::move(nR);
    }
    double rf = 1.0;
    for (int i = 2; i <= r; ++i) rf *= double(i);
    double v = rf * R[r];
    return (m * n) % 2 == 0 ? v : -v;
}

double gamma_power_derivative(int n, int nu, int m, double a) {
    if (n < 1) throw domain_error("gamma_power_derivative: n must be >= 1");
    if (nu < 0 || nu > 40) throw size_error("gamma_power_derivative: nu outside [0, 40]");
    if (m < 0) throw domain_error("gamma_power_derivative: m must be >= 0");
    if (!(a > 0.0)) throw domain_error("gamma_power_derivative: a must be positive");
    double w0 = 2.0 * a + 1.0 + m;
    if (double(n) * std::lgamma(w0) + nu * std::log(w0 + nu) > 700.0)
        throw overflow_error("gamma_power_derivative: value exceeds double range");
    // dd ladder of Gamma^{(j)}(w0), then the power contraction; the chain rule
    // for s -> a+1-s contributes (-1)^nu
    std::vector<dd> g(nu + 1), psi(std::max(nu, 1));
    g[0] = detail::dd_exp(detail::dd_lgamma(dd(w0)));
    for (int j = 0; j < nu; ++j)
        psi[j] = j == 0 ? detail::dd_digamma(dd(w0)) : detail::dd_polygamma(j, dd(w0));
    for (int v = 0; v < nu; ++v) {
        dd acc(0.0);
        dd binom(1.0);
        for (int j = 0; j <= v; ++j) {
            acc += binom * g[j] * psi[v - j];
            binom = binom * dd(double(v - j)) / dd(double(j + 1));
        }
        g[v + 1] = acc;
    }
    dd out = combinat::power_derivative_t<dd>(g, n, nu);
    double val = double(out);
    return nu % 2 == 0 ? val : -val;
}

complex residue_interior(int n, int m, double x, const ProblemSpec& spec,
                         const LaurentTable& table) {
    check_table(table, n, m);
    if (!(x > 0.0) || x > spec.A) throw range_error("residue_interior: x outside (0, A]");
    const auto& sc = scaled_of(table);
    auto cache = asm_cache(spec.a, table.m_max, asm_jcap(table));
    dd L = detail::dd_log(dd(x)) - detail::dd_log(dd(spec.A));
    dd v = residue_dd(*cache, sc, n, m, L, spec.a, false, dd(0.0));
    return complex(double(v), 0.0);
}

complex residue_exterior(int n, int m, double x, const ProblemSpec& spec,
                         const LaurentTable& table) {
    check_table(table, n, m);
    if (!(x >= spec.A)) throw range_error("residue_exterior: x must be >= A");
    const auto& sc = scaled_of(table);
    auto cache = asm_cache(spec.a, table.m_max, asm_jcap(table));
    dd L = detail::dd_log(dd(x)) - detail::dd_log(dd(spec.A));
    dd v = residue_dd(*cache, sc, n, m, L, spec.a, true, dd(0.0));
    return complex(double(v), 0.0);
}

complex neumann_term_contour(int n, double z, double a, double abs_tol, double sigma) {
    if (n < 1) throw domain_error("neumann_term_contour: n must be >= 1");
    if (!(z > 0.0) || z > 1.0) throw range_error("neumann_term_contour: z outside (0, 1]");
    if (!(sigma > -a) || !(sigma < a + 1.0))
        throw range_error("neumann_term_contour: sigma outside (-a, a+1)");
    double err = 0.0;
    return complex(weighted_term_contour(n, 0.0, z, a, sigma, abs_tol, &err), 0.0);
}

complex neumann_term_residues(int n, double z, double a, int m_cap,
                              const LaurentTable& table, double* max_term_out) {
    if (n < 1) throw domain_error("neumann_term_residues: n must be >= 1");
    if (!(z > 0.0) || z > 1.0)
        throw range_error("neumann_term_residues: z outside (0, 1]");
    check_table(table, n, std::max(m_cap, 0));
    const auto& sc = scaled_of(table);
    auto cache = asm_cache(a, table.m_max, asm_jcap(table));
    dd L = detail::dd_log(dd(z));
    dd acc(0.0);
    double max_term = 0.0;
    for (int m = 0; m <= m_cap; ++m) {
        dd t = residue_dd(*cache, sc, n, m, L, a, false, dd(0.0));
        acc += t;
        max_term = std::max(max_term, std::abs(double(t)));
    }
    if (max_term_out) *max_term_out = max_term;
    return complex(double(acc), 0.0);
}

complex exterior_term_contour(int n, double z, double a, double abs_tol, double sigma) {
    if (n < 1) throw domain_error("exterior_term_contour: n must be >= 1");
    if (!(z >= 1.0)) throw range_error("exterior_term_contour: z must be >= 1");
    if (!(sigma > 1.0) || !(sigma < a + 1.0))
        throw range_error("exterior_term_contour: sigma outside (1, a+1)");
    double err = 0.0;
    return complex(weighted_term_contour(n, 0.0, z, a, sigma, abs_tol, &err), 0.0);
}

complex exterior_constant_term(int n, double a, double abs_tol) {
    if (n < 1) throw domain_error("exterior_constant_term: n must be >= 1");
    if (!(a > 0.0)) throw domain_error("exterior_constant_term: a must be positive");
    // Computed through the residue identity at s = 1:
    //   D*_n = T_n(1) - [Gamma(a)Gamma(a+1)]^n
    // with T_n(1) on sigma = 1/2. A direct line in (1, a+1) carries the same
    // value but loses ~ n ln(bound) digits to cancellation.
    dd lg1 = detail::dd_lgamma(dd(a)) + detail::dd_lgamma(dd(a + 1.0));
    if (double(n) * lg1.hi > 700.0 || 2.0 * double(n) * std::lgamma(a + 0.5) > 700.0)
        throw overflow_error("exterior_constant_term: value exceeds double range");
    struct Key {
        int n;
        uint64_t abits;
        bool operator<(const Key& o) const {
            return std::tie(n, abits) < std::tie(o.n, o.abits);
        }
    };
    static std::map<Key, complex> cache;
    static std::mutex mu;
    Key key{n, 0};
    std::memcpy(&key.abits, &a, sizeof(a));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double err = 0.0;
    double t1 = weighted_term_contour(n, 0.0, 1.0, a, 0.5, abs_tol, &err);
    double g1n = double(detail::dd_exp(dd(double(n)) * lg1));
    complex v(t1 - g1n, 0.0);
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = v;
    return v;
}

SeriesEval f_interior_series(double x, const ProblemSpec& spec, complex fA,
                             const SeriesTruncation& trunc, const LaurentTable& table) {
    if (!(x >= 0.0) || x > spec.A) throw range_error("f_interior_series: x outside [0, A]");
    if (trunc.n_max < 1) throw size_error("f_interior_series: n_max must be >= 1");
    if (!(trunc.rho > 0.0) || !(trunc.rho < 1.0))
        throw admissibility_error("f_interior_series: truncation ratio must lie in (0, 1)",
                                  1.0, trunc.rho, 0.5);
    SeriesEval out;
    if (x == 0.0) {
        out.value = complex(1.0, 0.0);
        out.route = "exact";
        return out;
    }
    const auto& sc = scaled_of(table);
    auto cache = asm_cache(spec.a, table.m_max, asm_jcap(table));
    double z = x / spec.A;
    double L = std::log(z);
    dd Ldd = detail::dd_log(dd(x)) - detail::dd_log(dd(spec.A));
    complex lt = spec.lambda_tilde();
    double lnalt = std::log(std::abs(lt));
    complex ph = lt / std::abs(lt);
    double tol_n = trunc.tol / (2.0 * trunc.n_max);

    int m_hard = std::min({trunc.m_max, table.m_max, cache->m_cap});

    KahanC acc;
    complex phn = 1.0;
    int n_res = 0, n_con = 0;
    double est = 0.0;
    double tail = 0.0;
    for (int n = 1; n <= trunc.n_max; ++n) {
        phn *= ph;
        MsumPlan plan;
        if (n - 1 <= table.k_max)
            plan = plan_msum(n, spec.a, n * lnalt, (1.0 + spec.a) * L, L, tol_n,
                             std::min(table.m_max, cache->m_cap));
        complex term;
        bool have = false;
        if (plan.ok) {
            MsumRun run = msum_measured(*cache, sc, n, Ldd, spec.a, false,
                                        dd(double(n) * lnalt), z, tol_n, m_hard);
            if (run.ok) {
                term = phn * double(run.sum);
                est += run.err;
                out.m_used = std::max(out.m_used, run.m_used);
                ++n_res;
                have = true;
            }
        }
        if (!have) {
            double err = 0.0;
            double v = weighted_term_contour(n, lnalt, z, spec.a, 0.5, tol_n, &err);
            term = phn * v;
            est += err;
            ++n_con;
        }
        acc.add(term);
        out.n_used = n;
        double mag = std::abs(term);
        tail = mag * trunc.rho / (1.0 - trunc.rho);
        if (n >= 2 && tail < trunc.tol / 4.0 && mag < trunc.tol / 4.0) break;
    }
    est += tail;
    out.value = 1.0 - fA * acc.sum;
    out.est_error = std::abs(fA) * est;
    out.route = "residues:" + std::to_string(n_res) + " contour:" + std::to_string(n_con);
    return out;
}

SeriesEval f_exterior_series(double x, const ProblemSpec& spec, complex fA,
                             const SeriesTruncation& trunc, const LaurentTable& table) {
    if (!(x >= spec.A)) throw range_error("f_exterior_series: x must be >= A");
    if (trunc.n_max < 1) throw size_error("f_exterior_series: n_max must be >= 1");
    if (!(trunc.rho > 0.0) || !(trunc.rho < 1.0))
        throw admissibility_error("f_exterior_series: truncation ratio must lie in (0, 1)",
                                  1.0, trunc.rho, 0.5);
    SeriesEval out;
    const auto& sc = scaled_of(table);
    auto cache = asm_cache(spec.a, table.m_max, asm_jcap(table));
    double z = x / spec.A;
    double L = std::log(z);
    dd Ldd = detail::dd_log(dd(x)) - detail::dd_log(dd(spec.A));
    complex lt = spec.lambda_tilde();
    double lnalt = std::log(std::abs(lt));
    complex ph = lt / std::abs(lt);
    double ln_abs_lambda = std::log(std::abs(spec.lambda));
    double tol_n = trunc.tol / (2.0 * trunc.n_max);

    int m_hard = std::min({trunc.m_max, table.m_max, cache->m_cap});

    KahanC acc;
    complex phn = 1.0;
    int n_res = 0, n_con = 0;
    double est = 0.0;
    double tail = 0.0;
    for (int n = 1; n <= trunc.n_max; ++n) {
        phn *= ph;
        double err1 = 0.0;
        double t1 = tn1_weighted(n, lnalt, spec.a, tol_n, &err1);
        est += err1;
        // combined term lt^n (D*_n - X_n(z)): the s = 1 residue cancels, so
        // this is weighted T_n(1) minus weighted T_n(z), both on sigma = 1/2
        MsumPlan plan;
        if (n - 1 <= table.k_max && z > 1.0)
            plan = plan_msum(n, spec.a, n * lnalt, -spec.a * L, -L, tol_n,
                             std::min(table.m_max, cache->m_cap));
        complex term;
        bool have = false;
        if (plan.ok) {
            // residue route: weighted T_n(z) = lambda^n - sum_m weighted R_ext
            MsumRun run = msum_measured(*cache, sc, n, Ldd, spec.a, true,
                                        dd(double(n) * lnalt), 1.0 / z, tol_n, m_hard);
            if (run.ok) {
                dd wl = detail::dd_exp(dd(double(n) * ln_abs_lambda));
                term = phn * (t1 + double(run.sum - wl));
                est += run.err;
                out.m_used = std::max(out.m_used, run.m_used);
                ++n_res;
                have = true;
            }
        }
        if (!have) {
            double err2 = 0.0;
            double tz = weighted_term_contour(n, lnalt, z, spec.a, 0.5, tol_n, &err2);
            term = phn * (t1 - tz);
            est += err2;
            ++n_con;
        }
        acc.add(term);
        out.n_used = n;
        double mag = std::abs(term);
        tail = mag * trunc.rho / (1.0 - trunc.rho);
        if (n >= 2 && tail < trunc.tol / 4.0 && mag < trunc.tol / 4.0) break;
    }
    est += tail;
    out.value = fA * (1.0 + acc.sum);
    out.est_error = std::abs(fA) * est;
    out.route = "residues:" + std::to_string(n_res) + " contour:" + std::to_string(n_con);
    return out;
}

ConstantSum exterior_constant_sum(const ProblemSpec& spec, const SeriesTruncation& trunc,
                                  const LaurentTable&) {
    if (trunc.n_max < 1) throw size_error("exterior_constant_sum: n_max must be >= 1");
    double q = std::abs(spec.lambda);
    if (q >= 1.0)
        throw nonconvergence_error(
            "exterior_constant_sum: the constant series has unit radius in |lambda| "
            "and diverges here",
            q);
    complex lt = spec.lambda_tilde();
    double lnalt = std::log(std::abs(lt));
    complex ph = lt / std::abs(lt);
    int n_hard =
        std::clamp(int(std::ceil(std::log(0.5 * trunc.tol * (1.0 - q)) / std::log(q))),
                   trunc.n_max, 5000);
    double tol_n = trunc.tol / (2.0 * n_hard);

    ConstantSum out;
    KahanC acc;
    complex phn = 1.0;
    double wl = 1.0;
    double est = 0.0;
    double tail = 0.0;
    for (int n = 1; n <= n_hard; ++n) {
        phn *= ph;
        wl *= q;
        double err = 0.0;
        double t1 = tn1_weighted(n, lnalt, spec.a, tol_n, &err);
        // lt^n D*_n = lt^n T_n(1) - lambda^n
        complex term = phn * (t1 - wl);
        acc.add(term);
        est += err;
        out.n_used = n;
        double mag = std::abs(term);
        tail = mag * q / (1.0 - q);
        if (n >= 2 && tail < trunc.tol / 4.0 && mag < trunc.tol / 4.0) break;
    }
    if (tail > trunc.tol)
        throw nonconvergence_error(
            "exterior_constant_sum: tail above tolerance at the depth cap", tail);
    out.value = -acc.sum;
    out.est_error = est + tail;
    return out;
}

} // namespace dixon::series
