#include "qhahn/momentlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "qhahn/errors.hpp"
#include "qhahn/hankel.hpp"

namespace qhahn {

namespace {

std::size_t tri_index(std::size_t i, std::size_t j) { return j * (j + 1) / 2 + i; }  // i <= j

GramResult unpack_symmetric(const QuadReport& rep, std::size_t n) {
    GramResult g;
    g.u_max = rep.u_max;
    g.value.assign(n, std::vector<double>(n));
    g.err.assign(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const auto& r = rep.results[tri_index(i, j)];
            g.value[i][j] = g.value[j][i] = r.value;
            g.err[i][j] = g.err[j][i] = r.err;
        }
    }
    return g;
}

std::string origin_of(const WeightSpec& w) {
    const auto& p = w.params;
    switch (w.kind) {
        case WeightKind::full_e15:
            return fmt::format("full q={} a={} b={} c={}", p.q, p.a, p.b, p.c);
        case WeightKind::hermite_e16: return fmt::format("hermite q={}", p.q);
        case WeightKind::n_factor_only:
            return fmt::format("n_factor q={} a={} b={} c={}", p.q, p.a, p.b, p.c);
        case WeightKind::al_salam_chihara:
            return fmt::format("al_salam_chihara q={} ar={} br={}", p.q, w.ar, w.br);
    }
    return "unknown";
}

SignedLog to_signed_log(double v) {
    if (v == 0.0) return {0, 0.0};
    return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
}

}  // namespace

GramResult gram_matrix(int N, const QParams& p, const WeightSpec& w, const QuadConfig& cfg) {
    if (N < 0 || N > 12) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("Gram size N = {} outside 0..12", N));
    }
    require_admissible(p);
    w.validate();
    const auto table = rotated_table_unchecked(p, std::max(N - 1, 0));
    const auto n = static_cast<std::size_t>(N) + 1;
    const VectorIntegrand f = [&](const HyperPoint& pt, std::span<double> out) {
        const double wv = w(pt);
        if (wv == 0.0) return;
        const auto poly = eval_monic_sequence(table, pt.x(), N);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i <= j; ++i) out[tri_index(i, j)] = poly[i] * poly[j] * wv;
    };
    return unpack_symmetric(integrate_many(f, n * (n + 1) / 2, cfg), n);
}

GramResult gram_of(const std::vector<BreveFunction>& fs, const ScalarIntegrand& weight,
                   const QuadConfig& cfg) {
    const std::size_t n = fs.size();
    if (n == 0) return {};
    const VectorIntegrand f = [&](const HyperPoint& pt, std::span<double> out) {
        const double wv = weight(pt);
        if (wv == 0.0) return;
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = fs[i](pt.eu());
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i <= j; ++i) out[tri_index(i, j)] = v[i] * v[j] * wv;
    };
    return unpack_symmetric(integrate_many(f, n * (n + 1) / 2, cfg), n);
}

MomentTable moments(int K, const WeightSpec& w, const QuadConfig& cfg) {
    if (K < 0 || K > 32) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("moment order K = {} outside 0..32", K));
    }
    w.validate();
    const auto m = static_cast<std::size_t>(K) + 1;
    const VectorIntegrand f = [&](const HyperPoint& pt, std::span<double> out) {
        double v = w(pt);
        if (v == 0.0) return;
        for (std::size_t k = 0; k < m; ++k) {
            out[k] = v;
            v *= pt.x();
        }
    };
    const auto rep = integrate_many(f, m, cfg);
    MomentTable mt;
    mt.origin = origin_of(w);
    for (const auto& r : rep.results) {
        mt.mu.push_back(r.value);
        mt.err.push_back(r.err);
    }
    return mt;
}

HankelReport hankel_report(const MomentTable& mt, int max_size, int precision_digits) {
    if (max_size < 1 || mt.mu.empty() ||
        static_cast<std::size_t>(2 * max_size - 1) > mt.mu.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("Hankel size {} needs moments up to mu_{}, have {}", max_size,
                                2 * max_size - 2, mt.mu.size()));
    }
    const auto f = factor_hankel(mt.mu, static_cast<std::size_t>(max_size), false, precision_digits);
    HankelReport r;
    r.pivots = f.pivots;
    for (int s = 1; s <= max_size; ++s) {
        r.sizes.push_back(s);
        const bool ok = !f.failure || static_cast<std::size_t>(s) <= *f.failure;
        r.positive.push_back(ok);
    }
    if (f.failure) r.first_failure = static_cast<int>(*f.failure) + 1;
    return r;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::determinate: return "determinate";
        case Verdict::indeterminate: return "indeterminate";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

DeterminacyVerdict chihara_rule(const std::vector<SignedLog>& c, const std::vector<SignedLog>& lam,
                                int n_max) {
    if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be positive");
    const auto need = static_cast<std::size_t>(n_max) + 2;
    if (c.size() < need || lam.size() < need) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("the rule at n_max = {} needs coefficients up to index {}", n_max,
                                n_max + 1));
    }
    DeterminacyVerdict v;
    v.n_max = n_max;
    v.window_start = std::max(1, n_max - std::max(10, n_max / 4));
    v.threshold = std::numeric_limits<double>::quiet_NaN();

    const int sign = c[v.window_start].sign;
    for (int n = v.window_start; n <= n_max + 1; ++n) {
        if (c[n].sign == 0 || c[n].sign != sign) {
            throw Error(ErrorKind::NonpositiveC,
                        fmt::format("c_n changes sign or vanishes in the window {}..{} (at n = {})",
                                    v.window_start, n_max + 1, n));
        }
    }
    v.reflected = sign < 0;

    v.liminf_estimate = std::numeric_limits<double>::infinity();
    for (int n = v.window_start; n <= n_max; ++n) {
        v.liminf_estimate = std::min(v.liminf_estimate, std::exp(c[n].log_abs / n));
    }

    const auto& l = lam[n_max + 1];
    if (l.sign <= 0) {
        v.reason = fmt::format("lambda_{} is not positive", n_max + 1);
        return v;
    }
    v.L_estimate = std::exp(l.log_abs - c[n_max].log_abs - c[n_max + 1].log_abs);
    if (!(v.L_estimate < 0.25)) {
        v.reason = "L >= 1/4, the rule does not apply";
        return v;
    }
    const double s = std::sqrt(1.0 - 4.0 * v.L_estimate);
    v.threshold = (1.0 + s) / (1.0 - s);
    if (v.liminf_estimate > v.threshold) {
        v.verdict = Verdict::indeterminate;
    } else if (v.liminf_estimate < v.threshold) {
        v.verdict = Verdict::determinate;
    } else {
        v.reason = "liminf estimate equals the threshold";
    }
    return v;
}

DeterminacyVerdict chihara_rule(const RecurrenceTable& t, int n_max) {
    std::vector<SignedLog> c, lam;
    for (double x : t.c_values()) c.push_back(to_signed_log(x));
    for (double x : t.lambda_values()) lam.push_back(to_signed_log(x));
    return chihara_rule(c, lam, n_max);
}

double unrotated_scaled_c(const QParams& p, int n) {
    const double a = p.a, b = p.b, c = p.c, q = p.q;
    const double qn = std::pow(q, n);
    return ((a * b + a * c + b * c + q) * qn - q - 1.0) / (2.0 * a * b * c);
}

DeterminacyVerdict chihara_classify(const QParams& p, int n_max) {
    require_admissible(p);
    if (n_max < 50) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("n_max = {} is below 50", n_max));
    }
    const double a = p.a, b = p.b, c = p.c, q = p.q;
    const double lq = std::log(q);
    std::vector<SignedLog> cs, ls;
    for (int n = 0; n <= n_max + 1; ++n) {
        const double qn = std::pow(q, n);
        const double f = unrotated_scaled_c(p, n);
        const double g = (qn - 1.0) * (b * c * qn - q) * (a * c * qn - q) * (a * b * qn - q) /
                         (4.0 * a * a * b * b * c * c);
        auto cl = to_signed_log(f);
        cl.log_abs -= 2.0 * n * lq;
        auto ll = to_signed_log(g);
        ll.log_abs -= 4.0 * n * lq;
        cs.push_back(cl);
        ls.push_back(ll);
    }
    auto v = chihara_rule(cs, ls, n_max);
    v.L_limit_formula = q / ((1.0 + q) * (1.0 + q));
    v.f_window_min = std::numeric_limits<double>::infinity();
    v.f_window_max = -std::numeric_limits<double>::infinity();
    for (int n = v.window_start; n <= n_max; ++n) {
        const double f = unrotated_scaled_c(p, n);
        v.f_window_min = std::min(v.f_window_min, f);
        v.f_window_max = std::max(v.f_window_max, f);
    }
    return v;
}

NevanlinnaQuad nevanlinna_quad(int n, std::complex<double> z, const RecurrenceTable& t) {
    if (n < 0 || n + 1 > t.max_index()) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("truncation {} needs a table through index {}", n, n + 1));
    }
    const auto ab = orthonormal_from_monic(t);
    const auto P = orthonormal_sequence(ab, z, n + 1);
    const auto Q = associated_sequence(ab, z, n + 1);
    const auto P0 = orthonormal_sequence(ab, 0.0, n + 1);
    const auto Q0 = associated_sequence(ab, 0.0, n + 1);
    const double bn = ab[n].b;
    NevanlinnaQuad r;
    r.n = n;
    r.z = z;
    r.A = bn * (Q0[n] * Q[n + 1] - Q0[n + 1] * Q[n]);
    r.B = bn * (Q0[n] * P[n + 1] - Q0[n + 1] * P[n]);
    r.C = bn * (P0[n] * Q[n + 1] - P0[n + 1] * Q[n]);
    r.D = bn * (P0[n] * P[n + 1] - P0[n + 1] * P[n]);
    r.det = r.A * r.D - r.B * r.C;
    return r;
}

std::complex<double> stieltjes_approx(std::complex<double> z, double t, int n,
                                      const RecurrenceTable& table) {
    if (z.imag() == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "Stieltjes approximants need Im z != 0");
    }
    const auto quad = nevanlinna_quad(n, z, table);
    std::complex<double> num, den;
    if (std::isinf(t)) {
        num = quad.A;
        den = quad.B;
    } else {
        num = quad.A * t - quad.C;
        den = quad.B * t - quad.D;
    }
    if (std::abs(den) == 0.0) {
        throw Error(ErrorKind::PoleHit, fmt::format("denominator vanishes at n = {}, t = {}", n, t));
    }
    return num / den;
}

}  // namespace qhahn
