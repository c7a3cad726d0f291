#include "qhahn/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "qhahn/errors.hpp"

namespace qhahn {

namespace {

constexpr int kNodes = 21;

struct Rule {
    std::array<double, kNodes> x{};
    std::array<double, kNodes> wk{};
    std::array<double, kNodes> wg{};  // zero off the Gauss nodes
};

const Rule& gk21() {
    static const Rule rule = [] {
        using GK = boost::math::quadrature::gauss_kronrod<double, kNodes>;
        using G = boost::math::quadrature::gauss<double, 10>;
        const auto& ka = GK::abscissa();
        const auto& kw = GK::weights();
        const auto& ga = G::abscissa();
        const auto& gw = G::weights();
        Rule r;
        const int mid = kNodes / 2;
        r.x[mid] = 0.0;
        r.wk[mid] = kw[0];
        for (int i = 1; i <= mid; ++i) {
            r.x[mid + i] = ka[i];
            r.x[mid - i] = -ka[i];
            r.wk[mid + i] = r.wk[mid - i] = kw[i];
            for (std::size_t j = 0; j < ga.size(); ++j) {
                if (std::abs(ga[j] - ka[i]) < 1e-14) r.wg[mid + i] = r.wg[mid - i] = gw[j];
            }
        }
        return r;
    }();
    return rule;
}

// Runs body(i) for i < n; an exception from the lowest failing index is
// rethrown after the loop so nothing escapes an OpenMP region.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const auto ln = static_cast<long>(n);
    auto guarded = [&](long i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long i = 0; i < ln; ++i) guarded(i);
    } else {
        for (long i = 0; i < ln; ++i) guarded(i);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> k, g, abs_sum;
    bool finite = true;
};

void eval_panel(const VectorIntegrand& f, std::size_t m, Panel& p) {
    const Rule& r = gk21();
    p.k.assign(m, 0.0);
    p.g.assign(m, 0.0);
    p.abs_sum.assign(m, 0.0);
    std::vector<double> buf(m);
    const double half = 0.5 * (p.hi - p.lo);
    const double mid = 0.5 * (p.hi + p.lo);
    for (int i = 0; i < kNodes; ++i) {
        const auto pt = HyperPoint::from_u(mid + half * r.x[i]);
        std::fill(buf.begin(), buf.end(), 0.0);
        f(pt, buf);
        const double ch = pt.cosh_u();
        for (std::size_t j = 0; j < m; ++j) {
            const double v = buf[j] * ch;
            if (!std::isfinite(v)) p.finite = false;
            p.k[j] += r.wk[i] * v;
            p.g[j] += r.wg[i] * v;
            p.abs_sum[j] += r.wk[i] * std::abs(v);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        p.k[j] *= half;
        p.g[j] *= half;
        p.abs_sum[j] *= half;
    }
}

void eval_panels(const VectorIntegrand& f, std::size_t m, std::vector<Panel>& panels, Exec exec) {
    for_each_index(panels.size(), exec, [&](std::size_t i) { eval_panel(f, m, panels[i]); });
    for (const auto& p : panels) {
        if (!p.finite) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("integrand is not finite on u in [{}, {}]", p.lo, p.hi));
        }
    }
}

// max_j |f_j(x)| cosh u on a grid over [-U, U]
bool tail_ok(const VectorIntegrand& f, std::size_t m, double U, double tol, Exec exec) {
    const std::size_t n = static_cast<std::size_t>(32.0 * U) + 1;
    const auto grid = linspace(-U, U, n);
    std::vector<double> mag(n, 0.0);
    auto body = [&](std::size_t i) {
        std::vector<double> buf(m, 0.0);
        const auto pt = HyperPoint::from_u(grid[i]);
        f(pt, buf);
        double v = 0.0;
        for (double b : buf) v = std::max(v, std::abs(b));
        mag[i] = v * pt.cosh_u();
        if (!std::isfinite(mag[i])) mag[i] = std::numeric_limits<double>::infinity();
    };
    for_each_index(n, exec, body);
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        peak = std::max(peak, mag[i]);
        if (std::abs(grid[i]) >= U - 1.0) edge = std::max(edge, mag[i]);
    }
    if (!std::isfinite(peak)) return false;
    return edge <= tol * peak;
}

std::vector<Panel> uniform_panels(double U, int count) {
    std::vector<Panel> out(static_cast<std::size_t>(count));
    const double h = 2.0 * U / count;
    for (int i = 0; i < count; ++i) {
        out[i].lo = -U + i * h;
        out[i].hi = i + 1 == count ? U : -U + (i + 1) * h;
    }
    return out;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) out[0] = lo;
    if (n < 2) return out;
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * h;
    out[n - 1] = hi;
    return out;
}

QuadReport integrate_many(const VectorIntegrand& f, std::size_t m, const QuadConfig& cfg) {
    if (cfg.panels < 1) throw Error(ErrorKind::InvalidArgument, "panels must be positive");
    if (!(cfg.tail_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tail_tol must be positive");
    QuadReport rep;
    if (cfg.u_max > 0.0) {
        if (!tail_ok(f, m, cfg.u_max, cfg.tail_tol, cfg.exec)) {
            throw Error(ErrorKind::TailNotDecayed,
                        fmt::format("integrand has not decayed to {} of its peak at u = +-{}",
                                    cfg.tail_tol, cfg.u_max));
        }
        rep.u_max = cfg.u_max;
    } else {
        for (double U = 8.0; U <= 128.0; U *= 2.0) {
            if (tail_ok(f, m, U, cfg.tail_tol, cfg.exec)) {
                rep.u_max = U;
                break;
            }
        }
        if (rep.u_max == 0.0) {
            throw Error(ErrorKind::TailNotDecayed,
                        fmt::format("integrand has not decayed to {} of its peak by u = +-128",
                                    cfg.tail_tol));
        }
    }

    auto panels = uniform_panels(rep.u_max, cfg.panels);
    eval_panels(f, m, panels, cfg.exec);

    if (cfg.adaptive) {
        for (int depth = 0; depth < cfg.adapt_depth; ++depth) {
            std::vector<double> total(m, 0.0);
            for (const auto& p : panels)
                for (std::size_t j = 0; j < m; ++j) total[j] += p.abs_sum[j];
            std::vector<Panel> next, fresh;
            for (auto& p : panels) {
                bool split = false;
                for (std::size_t j = 0; j < m; ++j) {
                    const double allowed = cfg.adapt_tol * total[j] / cfg.panels;
                    if (std::abs(p.k[j] - p.g[j]) > allowed && total[j] > 0.0) split = true;
                }
                if (split) {
                    const double c = 0.5 * (p.lo + p.hi);
                    fresh.push_back({p.lo, c, {}, {}, {}, true});
                    fresh.push_back({c, p.hi, {}, {}, {}, true});
                } else {
                    next.push_back(std::move(p));
                }
            }
            const bool done = fresh.empty();
            if (!done) eval_panels(f, m, fresh, cfg.exec);
            for (auto& p : fresh) next.push_back(std::move(p));
            std::sort(next.begin(), next.end(),
                      [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
            panels = std::move(next);
            if (done) break;
        }
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    rep.panels = static_cast<int>(panels.size());
    rep.results.assign(m, {});
    for (std::size_t j = 0; j < m; ++j) {
        double v = 0.0, diff = 0.0, abs_total = 0.0;
        for (const auto& p : panels) {
            v += p.k[j];
            diff += std::abs(p.k[j] - p.g[j]);
            abs_total += p.abs_sum[j];
        }
        rep.results[j] = {v, diff + 64.0 * eps * abs_total};
    }
    return rep;
}

QuadResult integrate(const ScalarIntegrand& f, const QuadConfig& cfg) {
    const VectorIntegrand vf = [&f](const HyperPoint& pt, std::span<double> out) { out[0] = f(pt); };
    return integrate_many(vf, 1, cfg).results[0];
}

std::vector<double> evaluate_on_grid(const ScalarIntegrand& f, std::span<const double> u_grid,
                                     Exec exec) {
    std::vector<double> out(u_grid.size());
    for_each_index(u_grid.size(), exec,
                   [&](std::size_t i) { out[i] = f(HyperPoint::from_u(u_grid[i])); });
    return out;
}

}  // namespace qhahn
