#include "qhahn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include <fmt/format.h>

#include "qhahn/errors.hpp"
#include "qhahn/measures.hpp"
#include "qhahn/momentlab.hpp"
#include "qhahn/qoperators.hpp"

namespace qhahn {

namespace {

enum class Rule { at_most, below, above };

class Recorder {
public:
    explicit Recorder(const VerifyOptions& opt) : opt_(opt) { restart(); }

    void restart() { start_ = std::chrono::steady_clock::now(); }

    void add(std::string name, double residual, double tol, Rule rule = Rule::at_most) {
        const auto now = std::chrono::steady_clock::now();
        Check c;
        c.name = std::move(name);
        c.residual = residual;
        c.tol = opt_.tol.value_or(tol);
        switch (rule) {
            case Rule::at_most: c.pass = residual <= c.tol; break;
            case Rule::below: c.pass = residual < c.tol; break;
            case Rule::above: c.pass = residual > c.tol; break;
        }
        c.runtime_ms = std::chrono::duration<double, std::milli>(now - start_).count();
        out_.push_back(std::move(c));
        start_ = now;
    }

    std::vector<Check> take() { return std::move(out_); }

private:
    const VerifyOptions& opt_;
    std::vector<Check> out_;
    std::chrono::steady_clock::time_point start_;
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<int> degrees(const VerifyOptions& opt, int lo, int hi) {
    if (opt.n) return {*opt.n};
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

void suite_lowering(const VerifyOptions& opt, Recorder& rec) {
    const auto& p = opt.params;
    const auto us = sample_points(opt.seed, opt.points, -3.0, 3.0);
    for (int n : degrees(opt, 1, 10)) {
        double r = 0.0;
        for (double u : us) r = std::max(r, lowering_residual(n, HyperPoint::from_u(u), p));
        rec.add(fmt::format("lowering n={}", n), r, 1e-9);
    }
    if (opt.n) return;

    const double sq = std::sqrt(p.q);
    for (int k = 1; k <= 6; ++k) {
        double r = 0.0;
        const BreveFunction v = [&](double eu) {
            return basis_v_eval(k, HyperPoint::from_eu(eu), p.a, p.q);
        };
        for (double u : us) {
            const auto pt = HyperPoint::from_u(u);
            const double rhs = basis_v_lowering(k, p.a, p.q) * basis_v_eval(k - 1, pt, p.a * sq, p.q);
            r = std::max(r, std::abs(dq_apply(v, pt, p.q) - rhs) / (1.0 + std::abs(rhs)));
        }
        rec.add(fmt::format("v-basis lowering k={}", k), r, 1e-11);
    }

    require_admissible(p.scaled(p.q));
    for (int n = 2; n <= 6; ++n) {
        const auto d2 = dq_lift(dq_lift(qhahn_breve(n, p), p.q), p.q);
        const auto low = qhahn_breve(n - 2, p.scaled(p.q));
        const double factor = lowering_factor(n, p.q) * lowering_factor(n - 1, p.q);
        double r = 0.0;
        for (double u : us) {
            const double eu = std::exp(u);
            const double rhs = factor * low(eu);
            r = std::max(r, std::abs(d2(eu) - rhs) / (1.0 + std::abs(rhs)));
        }
        rec.add(fmt::format("double lowering n={}", n), r, 1e-9);
    }
}

void suite_sl(const VerifyOptions& opt, Recorder& rec) {
    const auto us = sample_points(opt.seed, opt.points, -3.0, 3.0);
    for (int n : degrees(opt, 0, 8)) {
        double r = 0.0;
        for (double u : us) r = std::max(r, sl_residual(n, HyperPoint::from_u(u), opt.params));
        rec.add(fmt::format("sturm-liouville n={}", n), r, n == 0 ? 0.0 : 1e-9);
    }
}

void suite_pi(const VerifyOptions& opt, Recorder& rec) {
    const auto& p = opt.params;
    require_admissible(p);
    const auto sl = sl_coefficients(p, 0);
    double r = 0.0;
    for (double x : sample_points(opt.seed, opt.points, -3.0, 3.0)) {
        const double pi = pi_poly(p, x);
        const double rhs = sl.phi(x) * sl.phi(x) - u2_factor(x, p.q) * sl.psi(x) * sl.psi(x);
        r = std::max(r, std::abs(pi - rhs) / (1.0 + std::abs(pi)));
    }
    rec.add("pi = phi^2 - U2 psi^2", r, 1e-10);

    require_admissible(p.scaled(std::sqrt(p.q)));
    require_admissible(p.scaled(p.q));
    std::vector<BreveFunction> fs;
    for (int n = 2; n <= 5; ++n) fs.push_back(dq_lift(dq_lift(qhahn_breve(n, p), p.q), p.q));
    const ScalarIntegrand weight = [&p](const HyperPoint& pt) {
        return pi_poly(p, pt.x()) * full_weight(pt, p);
    };
    const auto g = gram_of(fs, weight, opt.quad);
    double off = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            off = std::max(off, std::abs(g.value[i][j]) / std::sqrt(std::abs(g.value[i][i] * g.value[j][j])));
    rec.add("D_q^2 q_n gram under pi w, n=2..5", off, 1e-7);
}

void suite_orth(const VerifyOptions& opt, Recorder& rec) {
    const auto& p = opt.params;
    const auto g = gram_matrix(opt.N, p, WeightSpec::full(p), opt.quad);
    double off = 0.0;
    for (int i = 0; i <= opt.N; ++i)
        for (int j = 0; j < i; ++j)
            off = std::max(off, std::abs(g.value[i][j]) / std::sqrt(std::abs(g.value[i][i] * g.value[j][j])));
    rec.add(fmt::format("gram off-diagonal N={}", opt.N), off, 1e-8);
    for (int n = 0; n <= std::min(opt.N, 6); ++n) {
        rec.add(fmt::format("gram diagonal vs k_n n={}", n), rel(g.value[n][n], norm_kn(n, p)), 1e-6);
    }
}

void suite_im_integral(const VerifyOptions& opt, Recorder& rec) {
    const auto& p = opt.params;
    const double rhs = im_integral_rhs(p).value;
    const auto full = integrate([&p](const HyperPoint& pt) { return full_weight(pt, p); }, opt.quad);
    rec.add("ismail-masson integral", rel(full.value, rhs), 1e-8);

    const auto herm = integrate([q = p.q](const HyperPoint& pt) { return hermite_weight(pt, q); }, opt.quad);
    rec.add("hermite weight mass", std::abs(herm.value - 1.0), 1e-8);

    std::vector<QParams> shifted;
    for (int k = 0; k <= 3; ++k)
        for (int m = 0; m <= 3; ++m) shifted.push_back({p.q, p.a * std::pow(p.q, k), p.b * std::pow(p.q, m), p.c});
    for (const auto& s : shifted) require_admissible(s);
    const VectorIntegrand vf = [&shifted](const HyperPoint& pt, std::span<double> out) {
        for (std::size_t i = 0; i < shifted.size(); ++i) out[i] = full_weight(pt, shifted[i]);
    };
    const auto many = integrate_many(vf, shifted.size(), opt.quad);
    double worst = 0.0;
    for (std::size_t i = 0; i < shifted.size(); ++i)
        worst = std::max(worst, rel(many.results[i].value, im_integral_rhs(shifted[i]).value));
    rec.add("shifted ismail-masson k,m<=3", worst, 1e-7);

    const auto us = sample_points(opt.seed, opt.points, -3.0, 3.0);
    const QParams up = p.scaled(p.q);
    require_admissible(up);
    double r = 0.0;
    for (double u : us) {
        const auto pt = HyperPoint::from_u(u);
        const double eu = pt.eu();
        double factor = 1.0;
        for (double t : {p.a, p.b, p.c}) factor *= (1.0 + eu / t) * (1.0 - 1.0 / (eu * t));
        const double want = factor * full_weight(pt, p);
        const double got = full_weight(pt, up);
        r = std::max(r, std::abs(got - want) / std::max(std::abs(got), std::abs(want)));
    }
    rec.add("weight shift a,b,c -> aq,bq,cq", r, 1e-10);

    double sym = 0.0;
    for (double u : us) {
        const double w1 = hermite_weight(HyperPoint::from_u(u), p.q);
        const double w2 = hermite_weight(HyperPoint::from_u(-u), p.q);
        sym = std::max(sym, std::abs(w1 - w2) / w1);
    }
    rec.add("hermite weight symmetry", sym, 1e-12);
}

void suite_limits(const VerifyOptions& opt, Recorder& rec) {
    const auto& p = opt.params;
    const double q = p.q;
    const double d = 1e6;
    double aw = 0.0;
    for (int n = 0; n <= 4; ++n) {
        for (double x : {0.3, -1.7}) {
            const double lhs = eval_askey_wilson(n, x, p.a, p.b, p.c, d, q) / qpoch_finite(p.a * d, q, n);
            const double rhs = std::pow(p.b * p.c, n) * std::pow(q, n * (n - 1)) *
                               eval_continuous_dual_hahn(n, x, 1.0 / p.a, 1.0 / p.b, 1.0 / p.c, 1.0 / q);
            aw = std::max(aw, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    rec.add("askey-wilson d=1e6 limit n<=4", aw, 1e-4);

    const auto us = sample_points(opt.seed, 10, -3.0, 3.0);
    const QParams big_c{q, p.a, p.b, 1e8};
    double asc = 0.0;
    for (double u : us) {
        const auto pt = HyperPoint::from_u(u);
        const double want = al_salam_chihara_weight(pt, 1.0 / p.a, 1.0 / p.b, q);
        asc = std::max(asc, rel(full_weight(pt, big_c), want));
    }
    rec.add("al-salam-chihara limit c=1e8", asc, 1e-6);

    const QParams big{q, 1e8, 1e8, 1e8};
    double herm = 0.0;
    for (double u : us) {
        const auto pt = HyperPoint::from_u(u);
        herm = std::max(herm, rel(full_weight(pt, big), hermite_weight(pt, q)));
    }
    rec.add("hermite weight limit a,b,c=1e8", herm, 1e-6);

    // c_n at a = b = c = 1e8 is about 1.5e-8 q^{-n}, so the range stays at n <= 5
    double coef = 0.0;
    for (int n = 0; n <= 5; ++n) {
        const auto r = recurrence_coefficients(big, n, RecurrenceKind::rotated);
        const auto h = recurrence_coefficients(big, n, RecurrenceKind::q_inv_hermite);
        coef = std::max(coef, std::abs(r.c - h.c));
        if (n > 0) coef = std::max(coef, rel(r.lambda, h.lambda));
    }
    rec.add("q^-1-hermite coefficient limit n<=5", coef, 1e-6);
}

void suite_identities(const VerifyOptions& opt, Recorder& rec) {
    const double q = opt.params.q;
    const QBase base(q);
    std::vector<double> alphas = {-2.7, -0.9, -0.3, 0.15, 0.35, 0.7, 1.3};
    for (double u : sample_points(opt.seed, 5, -3.0, -0.1)) alphas.push_back(u);

    double shift = 0.0, split = 0.0;
    for (double al : alphas) {
        for (int m = 0; m <= 10; ++m) {
            const double lhs = qpoch_finite(al, 1.0 / q, m) * qpoch_infinite(al * q, base).value;
            const double rhs = qpoch_infinite(al * q * std::pow(q, -m), base).value;
            shift = std::max(shift, rel(lhs, rhs));
            const double l2 = qpoch_infinite(al * std::pow(q, -m), base).value;
            const double r2 = qpoch_finite(al / q, 1.0 / q, m) * qpoch_infinite(al, base).value;
            split = std::max(split, rel(l2, r2));
        }
    }
    rec.add("shift identity m<=10", shift, 1e-12);
    rec.add("splitting identity k<=10", split, 1e-12);

    double fin = 0.0;
    for (double a : {0.3, -1.2, 2.5}) {
        for (double b : {q, 1.0 / q}) {
            for (int j = 0; j <= 20; ++j) {
                for (int k = 0; k <= 20; ++k) {
                    const double lhs = qpoch_finite(a, b, j + k);
                    const double rhs = qpoch_finite(a, b, j) * qpoch_finite(a * std::pow(b, j), b, k);
                    fin = std::max(fin, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
                }
            }
        }
    }
    rec.add("finite product splitting j,k<=20", fin, 1e-12);

    // 2phi1(base^-n, b; c; base, base) = b^n (c/b; base)_n / (c; base)_n
    std::mt19937_64 gen(opt.seed);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    double vdm = 0.0;
    for (double bs : {q, 1.0 / q}) {
        for (int n = 0; n <= 5; ++n) {
            for (int trial = 0; trial < 4; ++trial) {
                const double b = -dist(gen);
                const double c = -dist(gen);
                SeriesSpec s;
                s.upper = {Terminating{n}, b};
                s.lower = {c};
                s.base = bs;
                s.z = bs;
                const double lhs = phi_series(s).value;
                const double rhs = std::pow(b, n) * qpoch_finite(c / b, bs, n) / qpoch_finite(c, bs, n);
                vdm = std::max(vdm, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

                s.z = c * std::pow(bs, n) / b;
                const double lhs2 = phi_series(s).value;
                const double rhs2 = qpoch_finite(c / b, bs, n) / qpoch_finite(c, bs, n);
                vdm = std::max(vdm, std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(rhs2)));
            }
        }
    }
    rec.add("q-vandermonde n<=5", vdm, 1e-12);
}

void suite_determinacy(const VerifyOptions& opt, Recorder& rec) {
    DeterminacyVerdict v;
    try {
        v = chihara_classify(opt.params, 200);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonpositiveC) throw;
        rec.add("chihara verdict is indeterminate (c_n changes sign)", 1.0, 0.0);
        return;
    }
    rec.add("chihara verdict is indeterminate", v.verdict == Verdict::indeterminate ? 0.0 : 1.0, 0.0);
    rec.add("L estimate at n=200 vs q/(1+q)^2", std::abs(v.L_estimate - v.L_limit_formula), 1e-6);
    rec.add("liminf c_n^(1/n) minus threshold", v.liminf_estimate - v.threshold, 0.0, Rule::above);
}

void suite_moments(const VerifyOptions& opt, Recorder& rec) {
    const auto& p = opt.params;
    const int N = 6;
    const auto mt = moments(std::max(opt.K, 2 * N + 1), WeightSpec::full(p), opt.quad);
    const auto rt = recurrence_from_moments(mt, N, opt.precision_digits);
    for (int n = 0; n <= N; ++n) {
        const auto want = recurrence_coefficients(p, n, RecurrenceKind::rotated);
        double r = std::abs(rt.c(n) - want.c) / (1.0 + std::abs(want.c));
        if (n > 0) r = std::max(r, rel(rt.lambda(n), want.lambda));
        rec.add(fmt::format("recurrence from moments n={}", n), r, 1e-6);
    }

    // mu_k / mu_0 = (J^k)_00 for k <= 2N + 1
    std::vector<double> row(N + 1, 0.0);
    row[0] = 1.0;
    double trip = 0.0;
    for (int k = 0; k <= 2 * N + 1; ++k) {
        trip = std::max(trip, std::abs(mt.mu[0] * row[0] - mt.mu[k]) / std::max(1.0, std::abs(mt.mu[k])));
        std::vector<double> next(N + 1, 0.0);
        for (int i = 0; i <= N; ++i) {
            next[i] += row[i] * rt.c(i);
            if (i + 1 <= N) next[i + 1] += row[i];
            if (i > 0) next[i - 1] += row[i] * rt.lambda(i);
        }
        row = std::move(next);
    }
    rec.add("moments round trip k<=13", trip, 1e-6);

    const auto full = hankel_report(mt, 6, opt.precision_digits);
    rec.add("hankel pivots positive through size 6 (full)",
            static_cast<double>(std::count(full.positive.begin(), full.positive.end(), false)), 0.0);
    const auto hm = moments(std::max(opt.K, 10), WeightSpec::hermite(p.q), opt.quad);
    const auto hr = hankel_report(hm, 6, opt.precision_digits);
    rec.add("hankel pivots positive through size 6 (hermite)",
            static_cast<double>(std::count(hr.positive.begin(), hr.positive.end(), false)), 0.0);
}

void suite_nevanlinna(const VerifyOptions& opt, Recorder& rec) {
    const auto table = RecurrenceTable::q_inv_hermite(opt.params.q, 100);
    using cd = std::complex<double>;
    for (cd z : {cd(0, 1), cd(1, 1), cd(0, 0.5)}) {
        double r = 0.0;
        for (int n = 0; n <= 10; ++n) r = std::max(r, std::abs(nevanlinna_quad(n, z, table).det - 1.0));
        rec.add(fmt::format("nevanlinna det z={}{:+}i n<=10", z.real(), z.imag()), r, 1e-8);
    }
    const auto at0 = nevanlinna_quad(5, 0.0, table);
    rec.add("A_n(0) = D_n(0) = 0", std::abs(at0.A) + std::abs(at0.D), 0.0);

    const double inf = std::numeric_limits<double>::infinity();
    double herglotz = -inf;
    for (int n = 1; n <= 8; ++n)
        for (double t : {0.0, 1.0, inf})
            herglotz = std::max(herglotz, stieltjes_approx(cd(0, 1), t, n, table).imag());
    rec.add("stieltjes Im sign opposite to Im z (max Im/Im z)", herglotz, 0.0, Rule::below);

    const cd s0 = stieltjes_approx(cd(0, 1), 0.0, 10, table);
    const cd s1 = stieltjes_approx(cd(0, 1), 1.0, 10, table);
    const cd si = stieltjes_approx(cd(0, 1), inf, 10, table);
    const double gap = std::min({std::abs(s0 - s1), std::abs(s0 - si), std::abs(s1 - si)});
    rec.add("distinct t give distinct approximants (min gap)", gap, 1e-6, Rule::above);

    const cd a40 = stieltjes_approx(cd(0, 2), 0.0, 40, table);
    const cd a80 = stieltjes_approx(cd(0, 2), 0.0, 80, table);
    rec.add("stieltjes approximant stable n=40 vs 80 at z=2i", std::abs(a40 - a80) / std::abs(a80), 1e-6);
}

using SuiteFn = void (*)(const VerifyOptions&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s = {
        {"lowering", suite_lowering},       {"sl", suite_sl},
        {"pi", suite_pi},                   {"orth", suite_orth},
        {"im-integral", suite_im_integral}, {"limits", suite_limits},
        {"identities", suite_identities},   {"determinacy", suite_determinacy},
        {"moments", suite_moments},         {"nevanlinna", suite_nevanlinna},
    };
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suites()) v.push_back(name);
        v.push_back("all");
        return v;
    }();
    return names;
}

std::vector<double> sample_points(std::uint64_t seed, int count, double lo, double hi) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    for (auto& v : out) v = dist(gen);
    return out;
}

std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& opt) {
    Recorder rec(opt);
    bool found = false;
    for (const auto& [name, fn] : suites()) {
        if (suite == "all" || suite == name) {
            rec.restart();
            fn(opt, rec);
            found = true;
        }
    }
    if (!found) throw Error(ErrorKind::InvalidArgument, fmt::format("unknown suite '{}'", suite));
    return rec.take();
}

}  // namespace qhahn
