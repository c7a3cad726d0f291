#include "qhahn/qcore.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "qhahn/errors.hpp"

namespace qhahn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxInfiniteFactors = 100000;

// Number of leading factors kept explicitly; beyond J every |a q^j| < tol.
struct Truncation {
    int count = 0;
    double first_dropped = 0.0;  // a q^J
};

// log(1 - t) to full relative accuracy for small t, sign handled by caller.
double log_abs_one_minus(double t) {
    return std::abs(t) < 0.5 ? std::log1p(-t) : std::log(std::abs(1.0 - t));
}

}  // namespace

QBase::QBase(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw Error(ErrorKind::NonconvergentBase,
                    fmt::format("infinite product needs 0 < q < 1, got q = {}", q));
    }
}

double qpoch_finite(double a, double base, int k) {
    if (k < 0) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("negative length k = {}", k));
    }
    double r = 1.0;
    double t = a;
    for (int j = 0; j < k; ++j) {
        r *= 1.0 - t;
        t *= base;
    }
    return r;
}

Estimate qpoch_infinite(double a, QBase base, double tol) {
    const double q = base.value();
    if (a == 0.0) return {1.0, 0.0};
    double r = 1.0;
    double t = a;
    int j = 0;
    for (; std::abs(t) >= tol; ++j) {
        if (j >= kMaxInfiniteFactors) {
            throw Error(ErrorKind::NonconvergentBase, "too many factors in infinite product");
        }
        r *= 1.0 - t;
        t *= q;
    }
    // sum_{j>=J} log(1 - t_j) = -t/(1-q) + O(t^2/(1-q^2))
    r *= std::exp(-t / (1.0 - q));
    const double tail = t * t / (1.0 - q * q);
    return {r, std::abs(r) * (tail + 2.0 * (j + 2) * kEps)};
}

SignedLog log_qpoch_infinite(double a, QBase base, double tol) {
    const double q = base.value();
    SignedLog out;
    if (a == 0.0) return out;
    double t = a;
    for (int j = 0; std::abs(t) >= tol; ++j) {
        if (j >= kMaxInfiniteFactors) {
            throw Error(ErrorKind::NonconvergentBase, "too many factors in infinite product");
        }
        const double f = 1.0 - t;
        if (f == 0.0) return {0, 0.0};
        if (f < 0.0) out.sign = -out.sign;
        out.log_abs += log_abs_one_minus(t);
        t *= q;
    }
    out.log_abs += -t / (1.0 - q);
    return out;
}

double qpoch_multi(std::span<const double> as, double base, int k) {
    if (as.empty()) throw Error(ErrorKind::InvalidArgument, "empty parameter list");
    double r = 1.0;
    for (double a : as) r *= qpoch_finite(a, base, k);
    return r;
}

Estimate qpoch_multi_infinite(std::span<const double> as, QBase base, double tol) {
    if (as.empty()) throw Error(ErrorKind::InvalidArgument, "empty parameter list");
    std::vector<Estimate> parts;
    parts.reserve(as.size());
    for (double a : as) parts.push_back(qpoch_infinite(a, base, tol));
    Estimate out{1.0, 0.0};
    for (const auto& p : parts) out.value *= p.value;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        double others = 1.0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (j != i) others *= std::abs(parts[j].value);
        }
        out.err += parts[i].err * others;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct UpperView {
    // factor (1 - a base^k) for plain and terminating parameters, the
    // quadratic factor for conjugate pairs
    double factor(const UpperParam& p, double bk, double base) const {
        if (const auto* v = std::get_if<double>(&p)) return 1.0 - *v * bk;
        if (const auto* t = std::get_if<Terminating>(&p)) return 1.0 - std::pow(base, -t->n) * bk;
        const auto& c = std::get<ConjugatePair>(p);
        return 1.0 - 2.0 * c.scale * c.x * bk + c.scale * c.scale * bk * bk;
    }
};

int upper_count(const std::vector<UpperParam>& upper) {
    int n = 0;
    for (const auto& p : upper) n += std::holds_alternative<ConjugatePair>(p) ? 2 : 1;
    return n;
}

// Bound on sup_{j>=k} |t_{j+1} / t_j|; negative when no bound is available yet.
double ratio_bound(const SeriesSpec& s, int k) {
    const double b = s.base;
    double num = std::abs(s.z);
    double den = 1.0;
    if (b < 1.0) {
        const double t = std::pow(b, k);
        for (const auto& p : s.upper) {
            if (const auto* v = std::get_if<double>(&p)) {
                num *= 1.0 + std::abs(*v) * t;
            } else if (const auto* c = std::get_if<ConjugatePair>(&p)) {
                num *= 1.0 + 2.0 * std::abs(c->scale * c->x) * t + c->scale * c->scale * t * t;
            } else {
                num *= 1.0 + std::pow(b, -std::get<Terminating>(p).n) * t;
            }
        }
        for (double l : s.lower) {
            const double f = 1.0 - std::abs(l) * t;
            if (f <= 0.0) return -1.0;
            den *= f;
        }
        den *= 1.0 - b * t;
    } else {
        const double inv = std::pow(b, -k);
        for (const auto& p : s.upper) {
            if (const auto* v = std::get_if<double>(&p)) {
                num *= std::abs(*v) + inv;
            } else if (const auto* c = std::get_if<ConjugatePair>(&p)) {
                num *= c->scale * c->scale + 2.0 * std::abs(c->scale * c->x) * inv + inv * inv;
            } else {
                num *= std::pow(b, -std::get<Terminating>(p).n) + inv;
            }
        }
        for (double l : s.lower) {
            const double f = std::abs(l) - inv;
            if (f <= 0.0) return -1.0;
            den *= f;
        }
        const double f = b - inv;
        if (f <= 0.0) return -1.0;
        den *= f;
    }
    return num / den;
}

}  // namespace

Estimate phi_series(const SeriesSpec& spec) {
    if (spec.base == 0.0 || spec.base == 1.0 || !std::isfinite(spec.base)) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("invalid base {}", spec.base));
    }
    if (upper_count(spec.upper) != static_cast<int>(spec.lower.size()) + 1) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("expected {} upper parameters for {} lower, got {}",
                                spec.lower.size() + 1, spec.lower.size(), upper_count(spec.upper)));
    }

    int last = -1;  // index of the final term for terminating series
    for (const auto& p : spec.upper) {
        if (const auto* t = std::get_if<Terminating>(&p)) {
            if (t->n < 0) throw Error(ErrorKind::InvalidArgument, "negative terminating index");
            last = last < 0 ? t->n : std::min(last, t->n);
        }
    }

    const UpperView view;
    double sum = 1.0;
    double abs_sum = 1.0;
    double term = 1.0;
    double bk = 1.0;  // base^k
    if (spec.z == 0.0) return {1.0, 0.0};

    for (int k = 0;; ++k) {
        if (last >= 0 && k >= last) {
            return {sum, 4.0 * (k + 1) * kEps * abs_sum};
        }
        if (last < 0) {
            const double rho = ratio_bound(spec, k);
            if (rho >= 0.0 && rho < 1.0) {
                const double tail = std::abs(term) * rho / (1.0 - rho);
                if (tail <= spec.tail_tol * std::max(1.0, std::abs(sum))) {
                    return {sum, tail + 4.0 * (k + 1) * kEps * abs_sum};
                }
            }
            if (k >= spec.max_terms) {
                throw Error(ErrorKind::Divergent,
                            fmt::format("no convergent tail bound after {} terms", k));
            }
        }
        // term_{k+1} = term_k * prod upper / prod lower * z / (1 - base^{k+1})
        double ratio = spec.z;
        for (const auto& p : spec.upper) ratio *= view.factor(p, bk, spec.base);
        for (double l : spec.lower) {
            const double f = 1.0 - l * bk;
            if (std::abs(f) <= 4.0 * kEps * std::max(1.0, std::abs(l * bk))) {
                throw Error(ErrorKind::PoleInLower,
                            fmt::format("lower parameter {} vanishes at index {}", l, k));
            }
            ratio /= f;
        }
        ratio /= 1.0 - bk * spec.base;
        term *= ratio;
        sum += term;
        abs_sum += std::abs(term);
        bk *= spec.base;
        if (term == 0.0 && last < 0) return {sum, 4.0 * (k + 1) * kEps * abs_sum};
    }
}

}  // namespace qhahn
