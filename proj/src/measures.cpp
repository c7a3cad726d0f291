#include "qhahn/measures.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qhahn/errors.hpp"

namespace qhahn {

namespace {

// (-t e^u, t e^{-u}; q)_inf
SignedLog log_pair(double t, const HyperPoint& pt, QBase base, double tol) {
    return log_qpoch_infinite(-t * pt.eu(), base, tol) *
           log_qpoch_infinite(t / pt.eu(), base, tol);
}

}  // namespace

double hermite_mass(double q) {
    const QBase base(q);
    return 0.5 * std::log(1.0 / q) * qpoch_infinite(q, base).value;
}

SignedLog log_hermite_weight(const HyperPoint& pt, double q, double tol) {
    const QBase base(q);
    const double e2 = pt.eu() * pt.eu();
    const SignedLog den = log_qpoch_infinite(-e2, base, tol) * log_qpoch_infinite(-q / e2, base, tol);
    return {den.sign, pt.u() - den.log_abs - std::log(hermite_mass(q))};
}

double hermite_weight(const HyperPoint& pt, double q) { return log_hermite_weight(pt, q).value(); }

SignedLog log_n_factor(const HyperPoint& pt, const QParams& p, double tol) {
    const QBase base(p.q);
    const double q = p.q;
    return log_pair(q / p.a, pt, base, tol) * log_pair(q / p.b, pt, base, tol) *
           log_pair(q / p.c, pt, base, tol);
}

double n_factor(const HyperPoint& pt, const QParams& p) { return log_n_factor(pt, p).value(); }

SignedLog log_full_weight(const HyperPoint& pt, const QParams& p, double tol) {
    return log_n_factor(pt, p, tol) * log_hermite_weight(pt, p.q, tol);
}

double full_weight(const HyperPoint& pt, const QParams& p) {
    return log_full_weight(pt, p).value();
}

SignedLog log_al_salam_chihara_weight(const HyperPoint& pt, double ar, double br, double q,
                                      double tol) {
    const QBase base(q);
    return log_pair(q * ar, pt, base, tol) * log_pair(q * br, pt, base, tol) *
           log_hermite_weight(pt, q, tol);
}

double al_salam_chihara_weight(const HyperPoint& pt, double ar, double br, double q) {
    return log_al_salam_chihara_weight(pt, ar, br, q).value();
}

double norm_kn(int n, const QParams& p) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, fmt::format("negative degree {}", n));
    require_admissible(p);
    const double q = p.q;
    const QBase base(q);
    const double s = q * std::pow(q, -n);  // q^{1-n}
    const double args[] = {-s / (p.a * p.b), -s / (p.a * p.c), -s / (p.b * p.c)};
    const double prod = qpoch_multi_infinite(args, base).value;
    return std::pow(4.0, -n) * std::pow(q, -0.5 * n * (n + 1)) * qpoch_finite(q, q, n) * prod;
}

Estimate im_integral_rhs(const QParams& p) {
    require_admissible(p);
    const double q = p.q;
    const double args[] = {-q / (p.a * p.b), -q / (p.a * p.c), -q / (p.b * p.c)};
    return qpoch_multi_infinite(args, QBase(q));
}

WeightSpec WeightSpec::full(const QParams& p) {
    WeightSpec w;
    w.kind = WeightKind::full_e15;
    w.params = p;
    return w;
}

WeightSpec WeightSpec::hermite(double q) {
    WeightSpec w;
    w.kind = WeightKind::hermite_e16;
    w.params = {q, 1.0, 1.0, 1.0};
    return w;
}

WeightSpec WeightSpec::n_factor_only(const QParams& p) {
    WeightSpec w;
    w.kind = WeightKind::n_factor_only;
    w.params = p;
    return w;
}

WeightSpec WeightSpec::al_salam_chihara(double q, double ar, double br) {
    WeightSpec w;
    w.kind = WeightKind::al_salam_chihara;
    w.params = {q, 1.0, 1.0, 1.0};
    w.ar = ar;
    w.br = br;
    return w;
}

void WeightSpec::validate() const {
    QBase check(params.q);
    (void)check;
    if (kind == WeightKind::full_e15 || kind == WeightKind::n_factor_only) {
        require_admissible(params);
    }
}

SignedLog WeightSpec::log_eval(const HyperPoint& pt) const {
    switch (kind) {
        case WeightKind::full_e15: return log_full_weight(pt, params, product_tol);
        case WeightKind::hermite_e16: return log_hermite_weight(pt, params.q, product_tol);
        case WeightKind::n_factor_only: return log_n_factor(pt, params, product_tol);
        case WeightKind::al_salam_chihara:
            return log_al_salam_chihara_weight(pt, ar, br, params.q, product_tol);
    }
    return {0, 0.0};
}

std::optional<double> WeightSpec::closed_form_mass() const {
    switch (kind) {
        case WeightKind::full_e15: return im_integral_rhs(params).value;
        case WeightKind::hermite_e16: return 1.0;
        case WeightKind::al_salam_chihara:
            return qpoch_infinite(-params.q * ar * br, QBase(params.q)).value;
        case WeightKind::n_factor_only: break;
    }
    return std::nullopt;
}

std::vector<double> n_factor_zeros(const QParams& p, double u_min, double u_max) {
    std::vector<double> out;
    const double lq = std::log(p.q);
    for (double t : {p.a, p.b, p.c}) {
        // t > 0: (q/t) e^{-u} q^j = 1 ;  t < 0: -(q/t) e^u q^j = 1
        for (int j = 0;; ++j) {
            const double u = t > 0.0 ? (j + 1) * lq - std::log(t) : std::log(-t) - (j + 1) * lq;
            if (u < u_min || u > u_max) break;
            out.push_back(u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SignScan scan_weight_sign(const WeightSpec& w, std::span<const double> u_grid) {
    SignScan s;
    if (u_grid.empty()) return s;
    s.min_value = std::numeric_limits<double>::infinity();
    s.max_value = -std::numeric_limits<double>::infinity();
    int prev_sign = 0;
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
        const auto v = w.log_eval(HyperPoint::from_u(u_grid[i]));
        const double val = v.value();
        s.min_value = std::min(s.min_value, val);
        s.max_value = std::max(s.max_value, val);
        if (v.sign < 0) ++s.negative_samples;
        if (v.sign != 0) {
            if (prev_sign != 0 && v.sign != prev_sign) {
                s.sign_changes.push_back(0.5 * (u_grid[i - 1] + u_grid[i]));
            }
            prev_sign = v.sign;
        }
    }
    return s;
}

}  // namespace qhahn
