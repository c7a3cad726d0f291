#pragma once

// q-shifted factorials and basic hypergeometric series.
//
// Conventions:
//   (a; base)_k   = prod_{j=0}^{k-1} (1 - a base^j),  any nonzero real base
//   (a; q)_inf    = prod_{j>=0} (1 - a q^j),           0 < q < 1 only
//
// Infinite products are never formed in a base above one; objects in base
// 1/q are either finite products or are rewritten in base q by the caller.

#include <cmath>
#include <span>
#include <variant>
#include <vector>

namespace qhahn {

/// A value together with an absolute error estimate.
struct Estimate {
    double value = 0.0;
    double err = 0.0;
};

/// sign * exp(log_abs); sign == 0 encodes an exact zero.
struct SignedLog {
    int sign = 1;
    double log_abs = 0.0;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    SignedLog& operator*=(const SignedLog& o) {
        sign *= o.sign;
        log_abs += o.log_abs;
        return *this;
    }
};

inline SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }

/// Base of an infinite product; construction enforces 0 < q < 1.
class QBase {
public:
    explicit QBase(double q);
    double value() const noexcept { return q_; }

private:
    double q_;
};

inline constexpr double kDefaultProductTol = 1e-17;

double qpoch_finite(double a, double base, int k);

Estimate qpoch_infinite(double a, QBase base, double tol = kDefaultProductTol);

/// Overflow-free form of (a; q)_inf, used by the weight functions whose
/// factors grow like exp(u^2) for large |u|.
SignedLog log_qpoch_infinite(double a, QBase base, double tol = kDefaultProductTol);

/// (a_1, ..., a_i; base)_k
double qpoch_multi(std::span<const double> as, double base, int k);

/// (a_1, ..., a_i; q)_inf with the factor errors propagated linearly.
Estimate qpoch_multi_infinite(std::span<const double> as, QBase base,
                              double tol = kDefaultProductTol);

// ---------------------------------------------------------------------------
// Basic hypergeometric series  {s+1}phi{s}

/// Upper parameter equal to base^{-n}. The series terminates after the k = n
/// term; termination is decided by this marker, never by comparing floats.
struct Terminating {
    int n = 0;
};

/// The pair (s e^{i theta}, s e^{-i theta}) with x = cos(theta), entering the
/// series through the real product prod_j (1 - 2 s x base^j + s^2 base^{2j}).
/// Counts as two upper parameters. x may lie outside [-1, 1].
struct ConjugatePair {
    double scale = 0.0;
    double x = 0.0;
};

using UpperParam = std::variant<double, Terminating, ConjugatePair>;

struct SeriesSpec {
    std::vector<UpperParam> upper;
    std::vector<double> lower;
    double base = 0.5;
    double z = 0.0;
    int max_terms = 2000;
    /// Summation stops once the remaining tail is provably below
    /// tail_tol * max(1, |partial sum|).
    double tail_tol = 1e-17;
};

/// Sum of the series. Throws PoleInLower when a lower factor vanishes and
/// Divergent when a nonterminating series admits no geometric tail bound
/// within max_terms.
Estimate phi_series(const SeriesSpec& spec);

}  // namespace qhahn
