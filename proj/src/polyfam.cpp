#include "qhahn/polyfam.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qhahn/errors.hpp"
#include "qhahn/hankel.hpp"

namespace qhahn {

std::optional<std::string> admissibility_violation(const QParams& p,
                                                   const AdmissibilityOptions& opt) {
    if (!(p.q > 0.0 && p.q < 1.0)) {
        return fmt::format("q = {} violates 0<q<1", p.q);
    }
    for (double v : {p.a, p.b, p.c}) {
        if (v == 0.0 || !std::isfinite(v)) {
            return fmt::format("parameters a, b, c must be finite and nonzero (got {})", v);
        }
    }
    const std::pair<const char*, double> products[] = {
        {"ab", p.a * p.b}, {"ac", p.a * p.c}, {"bc", p.b * p.c}};
    for (const auto& [name, v] : products) {
        if (v >= -1.0 && v <= 0.0) {
            return fmt::format("{} = {} lies in [-1, 0]", name, v);
        }
        if (v > 0.0) continue;
        double qk = 1.0;
        for (int k = 1; k <= opt.k_max; ++k) {
            qk /= p.q;  // q^{-k}
            if (qk > 1e300) break;
            if (std::abs(v + qk) <= opt.window * qk) {
                return fmt::format("{} = {} equals -q^-{}", name, v, k);
            }
        }
    }
    return std::nullopt;
}

void require_admissible(const QParams& p, const AdmissibilityOptions& opt) {
    if (auto why = admissibility_violation(p, opt)) {
        throw Error(ErrorKind::InadmissibleParams, *why);
    }
}

HyperPoint HyperPoint::from_u(double u) { return {u, std::exp(u), std::sinh(u)}; }

HyperPoint HyperPoint::from_eu(double eu) {
    if (!(eu > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("e^u must be positive, got {}", eu));
    }
    return {std::log(eu), eu, 0.5 * (eu - 1.0 / eu)};
}

HyperPoint HyperPoint::from_x(double x) {
    const double r = std::hypot(1.0, x);
    const double eu = x >= 0.0 ? x + r : 1.0 / (r - x);
    return {std::asinh(x), eu, x};
}

std::string to_string(RecurrenceKind kind) {
    switch (kind) {
        case RecurrenceKind::rotated: return "rotated";
        case RecurrenceKind::unrotated: return "unrotated";
        case RecurrenceKind::q_inv_hermite: return "q_inv_hermite";
        case RecurrenceKind::custom: return "custom";
    }
    return "unknown";
}

CoefficientPair recurrence_coefficients(const QParams& p, int n, RecurrenceKind kind) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, fmt::format("negative index {}", n));
    const double q = p.q;
    const double qn = std::pow(q, n);
    switch (kind) {
        case RecurrenceKind::rotated: {
            require_admissible(p);
            const double a = p.a, b = p.b, c = p.c;
            CoefficientPair r;
            r.c = (-qn * q + b * c * qn + q + a * b * qn + a * c * qn + 1.0) /
                  (2.0 * a * b * c * (qn * qn));
            if (n > 0) {
                const double qn1 = std::pow(q, n - 1);
                r.lambda = -0.25 * (1.0 - 1.0 / qn) * (1.0 + 1.0 / (b * c * qn1)) *
                           (1.0 + 1.0 / (a * c * qn1)) * (1.0 + 1.0 / (a * b * qn1));
            }
            return r;
        }
        case RecurrenceKind::unrotated: {
            require_admissible(p);
            const double a = p.a, b = p.b, c = p.c;
            CoefficientPair r;
            r.c = (a * b * qn + a * c * qn + b * c * qn + qn * q - q - 1.0) /
                  (2.0 * a * c * (qn * qn) * b);
            if (n > 0) {
                r.lambda = (qn - 1.0) * (b * c * qn - q) * (a * c * qn - q) * (a * b * qn - q) /
                           (4.0 * a * a * c * c * std::pow(qn, 4) * b * b);
            }
            return r;
        }
        case RecurrenceKind::q_inv_hermite: {
            QBase check(q);
            (void)check;
            return {0.0, n == 0 ? 0.0 : 0.25 * (1.0 / qn - 1.0)};
        }
        case RecurrenceKind::custom: break;
    }
    throw Error(ErrorKind::InvalidArgument, "custom tables have no closed-form coefficients");
}

RecurrenceTable::RecurrenceTable(RecurrenceKind kind, std::vector<double> c,
                                 std::vector<double> lam)
    : kind_(kind), c_(std::move(c)), lam_(std::move(lam)) {}

RecurrenceTable RecurrenceTable::from_params(const QParams& p, int N, RecurrenceKind kind) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative table size");
    if (kind == RecurrenceKind::q_inv_hermite) return q_inv_hermite(p.q, N);
    std::vector<double> c(N + 1), lam(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto r = recurrence_coefficients(p, n, kind);
        c[n] = r.c;
        lam[n] = r.lambda;
        if (kind == RecurrenceKind::rotated && n > 0 && !(r.lambda > 0.0)) {
            throw Error(ErrorKind::NonpositiveLambda,
                        fmt::format("lambda_{} = {} for q={}, a={}, b={}, c={}", n, r.lambda, p.q,
                                    p.a, p.b, p.c));
        }
    }
    return {kind, std::move(c), std::move(lam)};
}

RecurrenceTable RecurrenceTable::q_inv_hermite(double q, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative table size");
    const QParams p{q, 1.0, 1.0, 1.0};
    std::vector<double> c(N + 1, 0.0), lam(N + 1);
    for (int n = 0; n <= N; ++n) {
        lam[n] = recurrence_coefficients(p, n, RecurrenceKind::q_inv_hermite).lambda;
    }
    return {RecurrenceKind::q_inv_hermite, std::move(c), std::move(lam)};
}

RecurrenceTable RecurrenceTable::custom(std::vector<double> c, std::vector<double> lambda) {
    if (c.empty() || c.size() != lambda.size()) {
        throw Error(ErrorKind::InvalidArgument, "custom table needs equal, nonempty c and lambda");
    }
    return {RecurrenceKind::custom, std::move(c), std::move(lambda)};
}

RecurrenceTable rotated_table_unchecked(const QParams& p, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative table size");
    std::vector<double> c(N + 1), lam(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto r = recurrence_coefficients(p, n, RecurrenceKind::rotated);
        c[n] = r.c;
        lam[n] = r.lambda;
    }
    return RecurrenceTable::custom(std::move(c), std::move(lam));
}

std::vector<double> eval_monic_sequence(const RecurrenceTable& t, double x, int N) {
    if (N < 0 || N > t.max_index() + 1) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("degree {} outside table range 0..{}", N, t.max_index() + 1));
    }
    std::vector<double> p(N + 1);
    p[0] = 1.0;
    if (N >= 1) p[1] = x - t.c(0);
    for (int n = 1; n < N; ++n) p[n + 1] = (x - t.c(n)) * p[n] - t.lambda(n) * p[n - 1];
    return p;
}

std::vector<OrthonormalPair> orthonormal_from_monic(const RecurrenceTable& t) {
    std::vector<OrthonormalPair> out;
    out.reserve(t.max_index());
    for (int n = 0; n < t.max_index(); ++n) {
        const double lam = t.lambda(n + 1);
        if (!(lam > 0.0)) {
            throw Error(ErrorKind::NonpositiveLambda, fmt::format("lambda_{} = {}", n + 1, lam));
        }
        out.push_back({t.c(n), std::sqrt(lam)});
    }
    return out;
}

namespace {

void check_orthonormal_range(const std::vector<OrthonormalPair>& ab, int N) {
    if (N < 0 || static_cast<std::size_t>(N) > ab.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("degree {} needs {} orthonormal pairs, have {}", N, N, ab.size()));
    }
}

}  // namespace

std::vector<std::complex<double>> orthonormal_sequence(const std::vector<OrthonormalPair>& ab,
                                                       std::complex<double> z, int N) {
    check_orthonormal_range(ab, N);
    std::vector<std::complex<double>> P(N + 1);
    P[0] = 1.0;
    if (N >= 1) P[1] = (z - ab[0].a) / ab[0].b;
    for (int n = 1; n < N; ++n) {
        P[n + 1] = ((z - ab[n].a) * P[n] - ab[n - 1].b * P[n - 1]) / ab[n].b;
    }
    return P;
}

std::vector<std::complex<double>> associated_sequence(const std::vector<OrthonormalPair>& ab,
                                                      std::complex<double> z, int N) {
    check_orthonormal_range(ab, N);
    std::vector<std::complex<double>> Q(N + 1);
    Q[0] = 0.0;
    if (N >= 1) Q[1] = 1.0 / ab[0].b;
    for (int n = 1; n < N; ++n) {
        Q[n + 1] = ((z - ab[n].a) * Q[n] - ab[n - 1].b * Q[n - 1]) / ab[n].b;
    }
    return Q;
}

std::vector<double> associated_sequence(const RecurrenceTable& t, double x, int N) {
    const auto q = associated_sequence(orthonormal_from_monic(t), std::complex<double>(x, 0.0), N);
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i].real();
    return out;
}

double eval_qhahn_series(int n, const HyperPoint& pt, const QParams& p) {
    require_admissible(p);
    if (n < 0) throw Error(ErrorKind::InvalidArgument, fmt::format("negative degree {}", n));
    const double base = 1.0 / p.q;
    const double l1 = -1.0 / (p.a * p.b);
    const double l2 = -1.0 / (p.a * p.c);
    SeriesSpec s;
    s.upper = {Terminating{n}, -pt.eu() / p.a, 1.0 / (pt.eu() * p.a)};
    s.lower = {l1, l2};
    s.base = base;
    s.z = base;
    const double sum = phi_series(s).value;
    const double pre = std::pow(-p.a / 2.0, n) * qpoch_finite(l1, base, n) * qpoch_finite(l2, base, n);
    return pre * sum;
}

double eval_askey_wilson(int n, double x, double a, double b, double c, double d, double q) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, fmt::format("negative degree {}", n));
    SeriesSpec s;
    s.upper = {Terminating{n}, a * b * c * d * std::pow(q, n - 1), ConjugatePair{a, x}};
    s.lower = {a * b, a * c, a * d};
    s.base = q;
    s.z = q;
    const double sum = phi_series(s).value;
    return sum * qpoch_finite(a * b, q, n) * qpoch_finite(a * c, q, n) * qpoch_finite(a * d, q, n) /
           std::pow(a, n);
}

double eval_continuous_dual_hahn(int n, double x, double a, double b, double c, double base) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, fmt::format("negative degree {}", n));
    SeriesSpec s;
    s.upper = {Terminating{n}, ConjugatePair{a, x}};
    s.lower = {a * b, a * c};
    s.base = base;
    s.z = base;
    const double sum = phi_series(s).value;
    return sum * qpoch_finite(a * b, base, n) * qpoch_finite(a * c, base, n) / std::pow(a, n);
}

RecurrenceTable recurrence_from_moments(const MomentTable& mt, int N, int precision_digits) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative table size");
    const auto size = static_cast<std::size_t>(N) + 1;
    const auto f = factor_hankel(mt.mu, size, true, precision_digits);
    if (f.failure) throw IndefiniteHankelError(*f.failure, f.pivots.at(*f.failure));
    std::vector<double> c(size), lam(size, 0.0);
    for (std::size_t n = 0; n < size; ++n) {
        const double below = n == 0 ? 0.0 : f.lower[n][n - 1];
        c[n] = f.lower[n + 1][n] - below;
        if (n > 0) lam[n] = f.pivots[n] / f.pivots[n - 1];
    }
    return RecurrenceTable::custom(std::move(c), std::move(lam));
}

}  // namespace qhahn
