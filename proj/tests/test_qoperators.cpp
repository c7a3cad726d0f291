#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qhahn/errors.hpp"
#include "qhahn/measures.hpp"
#include "qhahn/momentlab.hpp"
#include "qhahn/qoperators.hpp"

using namespace qhahn;

namespace {

const QParams kRef{0.5, 2.0, 3.0, 5.0};

std::vector<double> uniform(std::uint64_t seed, int n, double lo, double hi) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> out(n);
    for (auto& v : out) v = d(g);
    return out;
}

// f(sinh u) evaluated literally at the two shifted lattice points
double x_at(double eu) { return 0.5 * (eu - 1.0 / eu); }

// Coefficients of the interpolating polynomial through (xs, ys), lowest degree first.
std::vector<double> fit(const std::vector<double>& xs, std::vector<double> ys) {
    const std::size_t n = xs.size();
    // Newton divided differences, then expand
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<double> coef(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        // coef = coef * (x - xs[k]) + ys[k]
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            next[i + 1] += coef[i];
            next[i] -= coef[i] * xs[k];
        }
        next[0] += ys[k];
        coef = next;
    }
    return coef;
}

}  // namespace

TEST_CASE("D_q and S_q on constants and x") {
    const auto one = breve_of([](double) { return 3.5; });
    const auto id = breve_of([](double x) { return x; });
    for (double u : {-2.5, 0.0, 0.7, 3.1}) {
        const auto pt = HyperPoint::from_u(u);
        for (double q : {0.2, 0.5, 0.9}) {
            CHECK(dq_apply(one, pt, q) == 0.0);
            CHECK(sq_apply(one, pt, q) == 3.5);
            CHECK(std::abs(dq_apply(id, pt, q) - 1.0) < 1e-13);
            const double want = 0.5 * (std::sqrt(q) + 1.0 / std::sqrt(q)) * pt.x();
            CHECK(std::abs(sq_apply(id, pt, q) - want) < 1e-14 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("S_q on x^2 matches the defining average") {
    const auto sq = breve_of([](double x) { return x * x; });
    for (double u : uniform(1, 10, -3.0, 3.0)) {
        const auto pt = HyperPoint::from_u(u);
        const double s = std::sqrt(0.5);
        const double a = x_at(s * std::exp(u)), b = x_at(std::exp(u) / s);
        CHECK(oracle::rel_err(sq_apply(sq, pt, 0.5), 0.5 * (a * a + b * b)) < 1e-14);
    }
}

TEST_CASE("gamma_n") {
    CHECK(gamma_n(0, 0.5) == 0.0);
    for (double q : {0.3, 0.5, 0.8})
        CHECK(oracle::rel_err(gamma_n(1, q), std::sqrt(q) + 1.0 / std::sqrt(q)) < 1e-15);
    CHECK(std::abs(gamma_n(2, 0.5) - 5.30330085889910643300) < 1e-14);
}

TEST_CASE("lowering factor at n = 1 is one, gamma_1 is not") {
    // D_q (x - c_0) = 1, which fixes the monic normalisation
    const auto q1 = qhahn_breve(1, kRef);
    for (double u : {-1.0, 0.3, 2.0}) CHECK(std::abs(dq_apply(q1, HyperPoint::from_u(u), 0.5) - 1.0) < 1e-14);
    CHECK(lowering_factor(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(gamma_n(1, 0.5) - 1.0) > 0.1);
    // the monic factor is the gamma_n formula at half the index
    const double s = std::sqrt(0.5);
    for (int n = 0; n <= 10; ++n) {
        const double half = (std::pow(0.5, 0.5 * n) - std::pow(0.5, -0.5 * n)) / (s - 1.0 / s);
        CHECK(std::abs(lowering_factor(n, 0.5) - half) <= 1e-14 * std::max(1.0, std::abs(half)));
    }
}

TEST_CASE("lowering relation") {
    for (double u : {-1.0, 0.3, 2.0}) CHECK(lowering_residual(2, HyperPoint::from_u(u), kRef) <= 1e-10);
    for (double u : uniform(2, 10, -3.0, 3.0)) CHECK(lowering_residual(5, HyperPoint::from_u(u), kRef) <= 1e-9);
    // independent check at n = 3, u = 0.4 using the series form on both sides
    const auto pt = HyperPoint::from_u(0.4);
    const auto q3 = breve_of([](double x) { return eval_qhahn_series(3, HyperPoint::from_x(x), kRef); });
    const double rhs = lowering_factor(3, 0.5) * eval_qhahn_series(2, pt, kRef.scaled(std::sqrt(0.5)));
    CHECK(std::abs(dq_apply(q3, pt, 0.5) - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
    CHECK_THROWS_AS(lowering_residual(0, pt, kRef), Error);
}

TEST_CASE("double lowering") {
    for (int n = 2; n <= 6; ++n) {
        const auto d2 = dq_lift(dq_lift(qhahn_breve(n, kRef), 0.5), 0.5);
        const auto shifted = qhahn_breve(n - 2, kRef.scaled(0.5));
        const double k = lowering_factor(n, 0.5) * lowering_factor(n - 1, 0.5);
        for (double u : uniform(3, 10, -3.0, 3.0)) {
            const double rhs = k * shifted(std::exp(u));
            CHECK(std::abs(dq_apply(dq_lift(qhahn_breve(n, kRef), 0.5), HyperPoint::from_u(u), 0.5) -
                           d2(std::exp(u))) == 0.0);
            CHECK(std::abs(d2(std::exp(u)) - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("v basis") {
    for (double u : {-1.3, 0.4}) {
        const auto pt = HyperPoint::from_u(u);
        CHECK(basis_v_eval(0, pt, 2.0, 0.5) == 1.0);
        const double want = (1.0 + pt.eu() / 2.0) * (1.0 - 1.0 / (pt.eu() * 2.0));
        CHECK(oracle::rel_err(basis_v_eval(1, pt, 2.0, 0.5), want) < 1e-15);
    }
    for (int k = 1; k <= 6; ++k) {
        const double coef = 2.0 * 0.5 * (std::pow(0.5, k) - 1.0) / (std::pow(0.5, k) * 2.0 * (0.5 - 1.0));
        CHECK(oracle::rel_err(basis_v_lowering(k, 2.0, 0.5), coef) < 1e-15);
        const BreveFunction v = [k](double eu) { return basis_v_eval(k, HyperPoint::from_eu(eu), 2.0, 0.5); };
        for (double u : uniform(4, 10, -3.0, 3.0)) {
            const auto pt = HyperPoint::from_u(u);
            const double rhs = coef * basis_v_eval(k - 1, pt, 2.0 * std::sqrt(0.5), 0.5);
            CHECK(std::abs(dq_apply(v, pt, 0.5) - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("operators preserve polynomial degree") {
    const auto t = RecurrenceTable::from_params(kRef, 8, RecurrenceKind::rotated);
    for (int n = 1; n <= 6; ++n) {
        const BreveFunction f = [&t, n](double eu) { return eval_monic_sequence(t, x_at(eu), n)[n]; };
        std::vector<double> xs, dy, sy;
        for (int j = 0; j < n + 2; ++j) {
            const double x = -1.0 + 0.4 * j;
            xs.push_back(x);
            dy.push_back(dq_apply(f, HyperPoint::from_x(x), 0.5));
            sy.push_back(sq_apply(f, HyperPoint::from_x(x), 0.5));
        }
        const auto dc = fit(xs, dy), sc = fit(xs, sy);
        // D_q f has degree n-1 with the monic leading coefficient lowering_factor(n)
        CHECK(std::abs(dc[n + 1]) < 1e-8);
        CHECK(std::abs(dc[n]) < 1e-8);
        CHECK(std::abs(dc[n - 1] - lowering_factor(n, 0.5)) < 1e-7 * lowering_factor(n, 0.5));
        // S_q keeps the degree
        CHECK(std::abs(sc[n + 1]) < 1e-8);
        CHECK(std::abs(sc[n]) > 0.5);
    }
}

TEST_CASE("Sturm-Liouville coefficients") {
    const auto s0 = sl_coefficients(kRef, 0);
    CHECK(s0.lambda_n == 0.0);
    CHECK(s0.phi2 == 2.0);
    CHECK(oracle::rel_err(s0.psi1, 4.0 * std::sqrt(0.5) / (0.5 - 1.0)) < 1e-15);
    CHECK(std::abs(sl_coefficients(kRef, 1).lambda_n - 4.0 * std::sqrt(2.0)) < 1e-14);
    for (int n = 0; n <= 8; ++n) {
        const double want = -4.0 * std::sqrt(0.5) * (std::pow(0.5, n) - 1.0) / 0.25;
        CHECK(std::abs(sl_coefficients(kRef, n).lambda_n - want) <= 1e-14 * std::max(1.0, want));
    }
    // phi and psi transcribed from their product-free forms
    const double a = 2, b = 3, c = 5, sq = std::sqrt(0.5);
    for (double x : {-1.0, 0.0, 2.5}) {
        const double phi = 2 * x * x + (1 / (a * b * c) - 1 / a - 1 / b - 1 / c) * x + 1 / (a * b) + 1 / (a * c) +
                           1 / (b * c) + 1;
        const double psi = 4 * sq / (0.5 - 1) * x - 2 * sq * (b * c + a * c + a * b + 1) / (a * b * c * (0.5 - 1));
        CHECK(std::abs(s0.phi(x) - phi) < 1e-14 * (1 + std::abs(phi)));
        CHECK(std::abs(s0.psi(x) - psi) < 1e-14 * (1 + std::abs(psi)));
    }
    const auto big = sl_coefficients({0.5, 1e8, 1e8, 1e8}, 3);
    CHECK(std::abs(big.phi2 - 2.0) < 1e-7);
    CHECK(std::abs(big.phi1) < 1e-7);
    CHECK(std::abs(big.phi0 - 1.0) < 1e-7);
    CHECK(std::abs(big.psi1 - 4 * sq / (0.5 - 1)) < 1e-7);
}

TEST_CASE("Sturm-Liouville residuals") {
    for (double u : {-2.0, 0.0, 1.5}) CHECK(sl_residual(0, HyperPoint::from_u(u), kRef) == 0.0);
    for (const QParams& p : {kRef, QParams{0.3, -10.0, 1.5, 4.0}, QParams{0.8, 0.7, 1.1, 9.0}}) {
        for (double u : uniform(5, 5, -3.0, 3.0)) CHECK(sl_residual(1, HyperPoint::from_u(u), p) <= 1e-11);
        // degree one reduces to psi(x) + lambda_1 (x - c_0) = 0
        const auto s = sl_coefficients(p, 1);
        const double c0 = recurrence_coefficients(p, 0, RecurrenceKind::rotated).c;
        for (double x : {-1.0, 0.5, 3.0})
            CHECK(std::abs(s.psi(x) + s.lambda_n * (x - c0)) <= 1e-12 * (1.0 + std::abs(s.lambda_n * x)));
    }
    for (int n = 0; n <= 8; ++n)
        for (double u : uniform(6, 20, -3.0, 3.0)) CHECK(sl_residual(n, HyperPoint::from_u(u), kRef) <= 1e-9);
}

TEST_CASE("pi polynomial") {
    CHECK(pi_poly(kRef, -(2.0 - 0.5) / 2.0) == 0.0);
    for (double x : {-1.5, 0.3, 2.0}) CHECK(oracle::rel_err(pi_poly({0.5, 1, 1, 1}, x), 8 * x * x * x) < 1e-15);
    const auto s = sl_coefficients(kRef, 0);
    for (double x : uniform(7, 20, -4.0, 4.0)) {
        const double rhs = s.phi(x) * s.phi(x) - u2_factor(x, 0.5) * s.psi(x) * s.psi(x);
        CHECK(std::abs(pi_poly(kRef, x) - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        CHECK(oracle::rel_err(u2_factor(x, 0.5), std::pow(std::sqrt(0.5) - std::sqrt(2.0), 2) * (x * x + 1) / 4) <
              1e-15);
    }
}

TEST_CASE("pi times the weight orthogonalises the second differences") {
    std::vector<BreveFunction> fs;
    for (int n = 2; n <= 5; ++n) fs.push_back(dq_lift(dq_lift(qhahn_breve(n, kRef), 0.5), 0.5));
    const ScalarIntegrand w = [](const HyperPoint& pt) { return pi_poly(kRef, pt.x()) * full_weight(pt, kRef); };
    const auto g = gram_of(fs, w, QuadConfig{});
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g.value[i][i] > 0);
        for (std::size_t j = 0; j < i; ++j)
            CHECK(std::abs(g.value[i][j]) <= 1e-7 * std::sqrt(g.value[i][i] * g.value[j][j]));
    }
}
