#include "qhahn/qoperators.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qhahn/errors.hpp"

namespace qhahn {

BreveFunction breve_of(std::function<double(double x)> f) {
    return [f = std::move(f)](double eu) { return f(0.5 * (eu - 1.0 / eu)); };
}

BreveFunction qhahn_breve(int n, const QParams& p) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, fmt::format("negative degree {}", n));
    auto table = rotated_table_unchecked(p, std::max(n - 1, 0));
    return [table = std::move(table), n](double eu) {
        return eval_monic_sequence(table, 0.5 * (eu - 1.0 / eu), n).back();
    };
}

double dq_apply(const BreveFunction& f, const HyperPoint& pt, double q) {
    const double s = std::sqrt(q);
    return (f(s * pt.eu()) - f(pt.eu() / s)) / ((s - 1.0 / s) * pt.cosh_u());
}

double sq_apply(const BreveFunction& f, const HyperPoint& pt, double q) {
    const double s = std::sqrt(q);
    return 0.5 * (f(s * pt.eu()) + f(pt.eu() / s));
}

BreveFunction dq_lift(BreveFunction f, double q) {
    return [f = std::move(f), q](double eu) { return dq_apply(f, HyperPoint::from_eu(eu), q); };
}

BreveFunction sq_lift(BreveFunction f, double q) {
    return [f = std::move(f), q](double eu) { return sq_apply(f, HyperPoint::from_eu(eu), q); };
}

double gamma_n(int n, double q) {
    const double s = std::sqrt(q);
    return (std::pow(q, n) - std::pow(q, -n)) / (s - 1.0 / s);
}

double lowering_factor(int n, double q) {
    const double s = std::sqrt(q);
    return (std::pow(s, n) - std::pow(s, -n)) / (s - 1.0 / s);
}

double lowering_residual(int n, const HyperPoint& pt, const QParams& p) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "lowering relation needs n >= 1");
    require_admissible(p);
    const QParams shifted = p.scaled(std::sqrt(p.q));
    require_admissible(shifted);
    const double lhs = dq_apply(qhahn_breve(n, p), pt, p.q);
    const double rhs = lowering_factor(n, p.q) * qhahn_breve(n - 1, shifted)(pt.eu());
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double basis_v_eval(int k, const HyperPoint& pt, double a, double q) {
    const double base = 1.0 / q;
    return qpoch_finite(-pt.eu() / a, base, k) * qpoch_finite(1.0 / (pt.eu() * a), base, k);
}

double basis_v_lowering(int k, double a, double q) {
    const double qk = std::pow(q, k);
    return 2.0 * (qk - 1.0) * q / (qk * a * (q - 1.0));
}

SLCoefficients sl_coefficients(const QParams& p, int n) {
    const double a = p.a, b = p.b, c = p.c, q = p.q;
    const double sq = std::sqrt(q);
    SLCoefficients r;
    r.phi2 = 2.0;
    r.phi1 = 1.0 / (a * b * c) - 1.0 / a - 1.0 / b - 1.0 / c;
    r.phi0 = 1.0 / (a * b) + 1.0 / (a * c) + 1.0 / (b * c) + 1.0;
    r.psi1 = 4.0 * sq / (q - 1.0);
    r.psi0 = -2.0 * sq * (b * c + a * c + a * b + 1.0) / (a * b * c * (q - 1.0));
    r.lambda_n = -4.0 * sq * (std::pow(q, n) - 1.0) / ((q - 1.0) * (q - 1.0));
    return r;
}

double sl_residual(int n, const HyperPoint& pt, const QParams& p) {
    require_admissible(p);
    require_admissible(p.scaled(std::sqrt(p.q)));
    require_admissible(p.scaled(p.q));
    const auto sl = sl_coefficients(p, n);
    const auto y = qhahn_breve(n, p);
    const auto dy = dq_lift(y, p.q);
    const double d2y = dq_apply(dy, pt, p.q);
    const double sdy = sq_apply(dy, pt, p.q);
    const double yv = y(pt.eu());
    const double x = pt.x();
    const double lhs = sl.phi(x) * d2y + sl.psi(x) * sdy + sl.lambda_n * yv;
    return std::abs(lhs) / (1.0 + std::abs(sl.lambda_n * yv));
}

double u2_factor(double x, double q) {
    const double s = std::sqrt(q);
    const double d = s - 1.0 / s;
    return d * d * (x * x + 1.0) / 4.0;
}

double pi_poly(const QParams& p, double x) {
    const double a = p.a, b = p.b, c = p.c;
    return 8.0 / (a * b * c) * (x + (a - 1.0 / a) / 2.0) * (x + (b - 1.0 / b) / 2.0) *
           (x + (c - 1.0 / c) / 2.0);
}

}  // namespace qhahn
