#pragma once

// Independent reference computations for the tests: brute-force products and
// sums written directly from the definitions, without the library's
// truncation or tail logic.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double poch(double a, double base, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= 1.0 - a * std::pow(base, j);
    return r;
}

// partial product with a fixed number of factors
inline double poch_partial(double a, double q, int terms) {
    long double r = 1.0L;
    for (int j = 0; j < terms; ++j) r *= 1.0L - static_cast<long double>(a) * std::pow(static_cast<long double>(q), j);
    return static_cast<double>(r);
}

inline std::complex<double> cpoch(std::complex<double> a, double base, int k) {
    std::complex<double> r = 1.0;
    for (int j = 0; j < k; ++j) r *= 1.0 - a * std::pow(base, j);
    return r;
}

// Continuous dual q-Hahn p_n(x; a, b, c | base) from the complex form of the
// terminating 3phi2 (x = cos theta, possibly complex theta).
// `scale` receives the sum of term magnitudes, a bound on the cancellation.
inline double cdh_complex(int n, double x, double a, double b, double c, double base, double* scale = nullptr) {
    const std::complex<double> th = std::acos(std::complex<double>(x, 0.0));
    const std::complex<double> e = std::exp(std::complex<double>(0.0, 1.0) * th);
    std::complex<double> s = 0.0;
    double mag = 0.0;
    for (int k = 0; k <= n; ++k) {
        const auto term = poch(std::pow(base, -n), base, k) * cpoch(a * e, base, k) * cpoch(a / e, base, k) /
                          (poch(a * b, base, k) * poch(a * c, base, k) * poch(base, base, k)) * std::pow(base, k);
        s += term;
        mag += std::abs(term);
    }
    if (scale) *scale = mag * std::abs(poch(a * b, base, n) * poch(a * c, base, n) / std::pow(a, n));
    return (s * poch(a * b, base, n) * poch(a * c, base, n) / std::pow(a, n)).real();
}

// Monic rotated recurrence written out from the closed-form coefficients.
inline std::vector<double> monic_rotated(double x, double q, double a, double b, double c, int N) {
    std::vector<double> p(N + 1);
    p[0] = 1.0;
    auto cn = [&](int n) {
        const double qn = std::pow(q, n);
        return (-qn * q + b * c * qn + q + a * b * qn + a * c * qn + 1.0) / (2.0 * a * b * c * qn * qn);
    };
    auto ln = [&](int n) {
        const double qn1 = std::pow(q, n - 1);
        return -0.25 * (1.0 - std::pow(q, -n)) * (1.0 + 1.0 / (b * c * qn1)) * (1.0 + 1.0 / (a * c * qn1)) *
               (1.0 + 1.0 / (a * b * qn1));
    };
    if (N >= 1) p[1] = x - cn(0);
    for (int n = 1; n < N; ++n) p[n + 1] = (x - cn(n)) * p[n] - ln(n) * p[n - 1];
    return p;
}

}  // namespace oracle
