#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qhahn/errors.hpp"
#include "qhahn/qcore.hpp"

using namespace qhahn;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("finite q-Pochhammer examples") {
    CHECK(qpoch_finite(0.7, 0.5, 0) == 1.0);
    CHECK(qpoch_finite(2.0, 0.5, 1) == -1.0);
    CHECK(qpoch_finite(0.5, 0.5, 2) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(qpoch_finite(3.0, 2.0, 3) == doctest::Approx(oracle::poch(3.0, 2.0, 3)));
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { qpoch_finite(0.1, 0.5, -1); }));
}

TEST_CASE("infinite q-Pochhammer against partial products") {
    const QBase q(0.5);
    CHECK(qpoch_infinite(0.0, q).value == 1.0);
    CHECK(qpoch_infinite(1.0, q).value == 0.0);

    const auto r = qpoch_infinite(0.5, q);
    const double want = oracle::poch_partial(0.5, 0.5, 200);
    CHECK(oracle::rel_err(r.value, want) < 1e-15);
    CHECK(std::abs(r.value - want) <= r.err + 1e-17);

    // (q; q)_inf at q = 1/2 to 30 digits
    CHECK(oracle::rel_err(qpoch_infinite(0.5, q).value, 0.288788095086602421278899721929) < 2e-16);

    for (double a : {-7.5, -1.0, -0.01, 0.3, 0.99, 1.7, 5.0}) {
        for (double qq : {0.1, 0.5, 0.9}) {
            const QBase b(qq);
            const double want2 = oracle::poch_partial(a, qq, 2000);
            const auto got = qpoch_infinite(a, b);
            CHECK(std::abs(got.value - want2) <= 1e-14 * std::abs(want2) + got.err);
        }
    }
}

TEST_CASE("log form agrees with the direct product, sign included") {
    for (double a : {-30.0, -2.0, 0.25, 1.5, 3.0, 9.0}) {
        const QBase q(0.5);
        const auto lg = log_qpoch_infinite(a, q);
        const double direct = qpoch_infinite(a, q).value;
        CHECK(lg.sign == (direct > 0 ? 1 : -1));
        CHECK(oracle::rel_err(lg.value(), direct) < 1e-13);
    }
    CHECK(log_qpoch_infinite(2.0, QBase(0.5)).sign == 0);  // factor 1 - 2 q vanishes
    // values far beyond the double range stay representable in log form
    const auto huge = log_qpoch_infinite(-1e300, QBase(0.5));
    CHECK(huge.sign == 1);
    CHECK(huge.log_abs > 700.0);
}

TEST_CASE("base outside (0,1) is rejected for infinite products") {
    for (double q : {1.5, 1.0, 0.0, -0.5}) {
        CHECK(throws_kind(ErrorKind::NonconvergentBase, [q] { QBase b(q); }));
    }
}

TEST_CASE("multiple q-Pochhammer") {
    const double zeros[] = {0.0, 0.0};
    CHECK(qpoch_multi_infinite(zeros, QBase(0.5)).value == 1.0);
    const double two_three[] = {2.0, 3.0};
    CHECK(qpoch_multi(two_three, 0.5, 1) == 2.0);
    const double three[] = {0.3, 0.4, 0.5};
    const double want = oracle::poch(0.3, 0.5, 3) * oracle::poch(0.4, 0.5, 3) * oracle::poch(0.5, 0.5, 3);
    CHECK(oracle::rel_err(qpoch_multi(three, 0.5, 3), want) < 1e-15);
}

TEST_CASE("finite products split exactly up to rounding") {
    for (double a : {0.3, -1.2, 2.5}) {
        for (double base : {0.5, 2.0, 0.9}) {
            for (int j = 0; j <= 20; ++j) {
                for (int k = 0; k <= 20; ++k) {
                    const double lhs = qpoch_finite(a, base, j + k);
                    const double rhs = qpoch_finite(a, base, j) * qpoch_finite(a * std::pow(base, j), base, k);
                    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
                }
            }
        }
    }
}

TEST_CASE("shift and splitting identities for infinite products") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> alpha(-3.0, -0.05);
    for (int trial = 0; trial < 20; ++trial) {
        const double al = alpha(gen);
        for (double q : {0.3, 0.5, 0.8}) {
            const QBase b(q);
            for (int m = 0; m <= 10; ++m) {
                const double lhs = qpoch_finite(al, 1.0 / q, m) * qpoch_infinite(al * q, b).value;
                const double rhs = qpoch_infinite(al * q * std::pow(q, -m), b).value;
                CHECK(oracle::rel_err(lhs, rhs) < 1e-12);
                const double l2 = qpoch_infinite(al * std::pow(q, -m), b).value;
                const double r2 = qpoch_finite(al / q, 1.0 / q, m) * qpoch_infinite(al, b).value;
                CHECK(oracle::rel_err(l2, r2) < 1e-12);
            }
        }
    }
}

TEST_CASE("phi_series trivial cases") {
    SeriesSpec s;
    s.upper = {1.0, 0.3};
    s.lower = {0.2};
    s.base = 0.5;
    s.z = 0.9;
    CHECK(phi_series(s).value == 1.0);  // (1; q)_k = 0 for k >= 1

    s.upper = {0.7, 0.3};
    s.z = 0.0;
    CHECK(phi_series(s).value == 1.0);
}

TEST_CASE("phi_series: all-zero numerators match direct summation") {
    for (double z : {-0.9, -0.3, 0.4, 0.95}) {
        SeriesSpec s;
        s.upper = {0.0, 0.0};
        s.lower = {0.3};
        s.base = 0.5;
        s.z = z;
        double want = 0.0;
        for (int k = 0; k < 3000; ++k)
            want += std::pow(z, k) / (oracle::poch(0.3, 0.5, k) * oracle::poch(0.5, 0.5, k));
        const auto got = phi_series(s);
        CHECK(oracle::rel_err(got.value, want) < 1e-14);
    }
}

TEST_CASE("phi_series terminating marker stops the sum structurally") {
    for (double base : {0.5, 2.0}) {
        for (int n = 0; n <= 6; ++n) {
            SeriesSpec s;
            s.upper = {Terminating{n}, 0.7, -1.3};
            s.lower = {-0.4, 2.9};
            s.base = base;
            s.z = base;
            double want = 0.0, scale = 0.0;
            for (int k = 0; k <= n; ++k) {
                const double term = oracle::poch(std::pow(base, -n), base, k) * oracle::poch(0.7, base, k) *
                                    oracle::poch(-1.3, base, k) /
                                    (oracle::poch(-0.4, base, k) * oracle::poch(2.9, base, k) *
                                     oracle::poch(base, base, k)) *
                                    std::pow(base, k);
                want += term;
                scale += std::abs(term);
            }
            // cancellation between terms bounds the attainable accuracy
            CHECK(std::abs(phi_series(s).value - want) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("phi_series conjugate pair matches the complex product") {
    const double a = 0.7, base = 0.5;
    for (double x : {-2.0, -0.3, 0.6, 1.9}) {
        SeriesSpec s;
        s.upper = {Terminating{4}, ConjugatePair{a, x}};
        s.lower = {0.1, -0.6};
        s.base = base;
        s.z = base;
        const std::complex<double> e = std::exp(std::complex<double>(0, 1) * std::acos(std::complex<double>(x, 0)));
        std::complex<double> want = 0.0;
        for (int k = 0; k <= 4; ++k) {
            want += oracle::poch(std::pow(base, -4), base, k) * oracle::cpoch(a * e, base, k) *
                    oracle::cpoch(a / e, base, k) /
                    (oracle::poch(0.1, base, k) * oracle::poch(-0.6, base, k) * oracle::poch(base, base, k)) *
                    std::pow(base, k);
        }
        CHECK(std::abs(phi_series(s).value - want.real()) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("phi_series q-Vandermonde closed forms") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(0.2, 3.0);
    for (double base : {0.5, 2.0, 0.8}) {
        for (int n = 0; n <= 5; ++n) {
            for (int trial = 0; trial < 5; ++trial) {
                const double b = -d(gen), c = -d(gen);
                SeriesSpec s;
                s.upper = {Terminating{n}, b};
                s.lower = {c};
                s.base = base;
                s.z = base;
                const double rhs = std::pow(b, n) * oracle::poch(c / b, base, n) / oracle::poch(c, base, n);
                CHECK(std::abs(phi_series(s).value - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
                s.z = c * std::pow(base, n) / b;
                const double rhs2 = oracle::poch(c / b, base, n) / oracle::poch(c, base, n);
                CHECK(std::abs(phi_series(s).value - rhs2) <= 1e-12 * std::max(1.0, std::abs(rhs2)));
            }
        }
    }
}

TEST_CASE("phi_series errors") {
    SeriesSpec pole;
    pole.upper = {Terminating{5}, 0.3};
    pole.lower = {4.0};  // (4; 1/2)_3 has the factor 1 - 4/4
    pole.base = 0.5;
    pole.z = 0.5;
    CHECK(throws_kind(ErrorKind::PoleInLower, [&] { phi_series(pole); }));

    SeriesSpec div;
    div.upper = {0.1, 0.2};
    div.lower = {0.3};
    div.base = 0.5;
    div.z = 3.0;
    CHECK(throws_kind(ErrorKind::Divergent, [&] { phi_series(div); }));

    SeriesSpec bad;
    bad.upper = {0.1};
    bad.lower = {0.3};
    CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { phi_series(bad); }));
}

TEST_CASE("nonterminating series in base above one converges geometrically") {
    // 1phi0(0; ; 2, z) = sum z^k / (2; 2)_k, terms shrink like 2^{-k(k-1)/2}
    SeriesSpec s;
    s.upper = {0.0};
    s.base = 2.0;
    s.z = 5.0;
    double want = 0.0;
    for (int k = 0; k < 60; ++k) want += std::pow(5.0, k) / oracle::poch(2.0, 2.0, k);
    CHECK(oracle::rel_err(phi_series(s).value, want) < 1e-14);
}
