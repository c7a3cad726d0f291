#pragma once

// Continuous dual q^{-1}-Hahn polynomials q_n(x; 1/a, 1/b, 1/c | 1/q) on the
// real line (x = sinh u), their recurrence data, and the neighbouring
// families used as limits and oracles.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhahn/qcore.hpp"

namespace qhahn {

/// (q, a, b, c) with 0 < q < 1 and nonzero a, b, c.
struct QParams {
    double q = 0.5;
    double a = 2.0;
    double b = 3.0;
    double c = 5.0;

    /// (a s, b s, c s); the lowering relation shifts by s = sqrt(q).
    QParams scaled(double s) const { return {q, a * s, b * s, c * s}; }
};

struct AdmissibilityOptions {
    int k_max = 200;
    double window = 1e-12;
};

/// Reason the parameters violate
///   0 < q < 1,  a, b, c != 0,  ab, ac, bc not in [-1, 0],
///   ab, ac, bc != -q^{-k} for 1 <= k <= k_max,
/// or nullopt when admissible.
std::optional<std::string> admissibility_violation(const QParams& p,
                                                   const AdmissibilityOptions& opt = {});

/// Throws InadmissibleParams with the reason.
void require_admissible(const QParams& p, const AdmissibilityOptions& opt = {});

/// A real point in the hyperbolic parametrisation x = sinh(u), e^u.
class HyperPoint {
public:
    static HyperPoint from_u(double u);
    static HyperPoint from_eu(double eu);
    static HyperPoint from_x(double x);

    double u() const noexcept { return u_; }
    double eu() const noexcept { return eu_; }
    double x() const noexcept { return x_; }
    double cosh_u() const noexcept { return 0.5 * (eu_ + 1.0 / eu_); }

private:
    HyperPoint(double u, double eu, double x) : u_(u), eu_(eu), x_(x) {}
    double u_;
    double eu_;
    double x_;
};

enum class RecurrenceKind { rotated, unrotated, q_inv_hermite, custom };

std::string to_string(RecurrenceKind kind);

/// Monic recurrence pair x p_n = p_{n+1} + c_n p_n + lambda_n p_{n-1}.
struct CoefficientPair {
    double c = 0.0;
    double lambda = 0.0;
};

/// Closed-form coefficients. `rotated` gives the real-line family,
/// `unrotated` the monic form of p_n(x; 1/a, 1/b, 1/c | 1/q) / 2^n.
/// lambda_0 is 0 by convention.
CoefficientPair recurrence_coefficients(const QParams& p, int n, RecurrenceKind kind);

/// Orthonormal data a_n = c_n, b_n = sqrt(lambda_{n+1}).
struct OrthonormalPair {
    double a = 0.0;
    double b = 0.0;
};

/// Immutable table of monic coefficients c_0..c_N and lambda_0..lambda_N.
class RecurrenceTable {
public:
    /// Closed-form table. Rotated tables require lambda_n > 0 for 1 <= n <= N
    /// and throw NonpositiveLambda otherwise.
    static RecurrenceTable from_params(const QParams& p, int N, RecurrenceKind kind);
    static RecurrenceTable q_inv_hermite(double q, int N);
    static RecurrenceTable custom(std::vector<double> c, std::vector<double> lambda);

    RecurrenceKind kind() const noexcept { return kind_; }
    int max_index() const noexcept { return static_cast<int>(c_.size()) - 1; }
    double c(int n) const { return c_.at(static_cast<std::size_t>(n)); }
    double lambda(int n) const { return lam_.at(static_cast<std::size_t>(n)); }
    const std::vector<double>& c_values() const noexcept { return c_; }
    const std::vector<double>& lambda_values() const noexcept { return lam_; }

private:
    RecurrenceTable(RecurrenceKind kind, std::vector<double> c, std::vector<double> lam);
    RecurrenceKind kind_;
    std::vector<double> c_;
    std::vector<double> lam_;
};

/// Rotated closed-form table without the lambda_n > 0 requirement, for
/// evaluation only (orthonormal data still demands positivity).
RecurrenceTable rotated_table_unchecked(const QParams& p, int N);

/// p_0..p_N at x. Needs N <= table.max_index() + 1.
std::vector<double> eval_monic_sequence(const RecurrenceTable& t, double x, int N);

/// a_n = c_n, b_n = sqrt(lambda_{n+1}) for n = 0..max_index-1.
/// Throws NonpositiveLambda when some lambda_{n+1} <= 0.
std::vector<OrthonormalPair> orthonormal_from_monic(const RecurrenceTable& t);

/// Orthonormal P_0..P_N (P_0 = 1) at complex z.
std::vector<std::complex<double>> orthonormal_sequence(const std::vector<OrthonormalPair>& ab,
                                                       std::complex<double> z, int N);

/// First associated polynomials Q_0..Q_N in the orthonormal convention,
/// Q_0 = 0, Q_1 = 1/b_0, and x Q_n = b_n Q_{n+1} + a_n Q_n + b_{n-1} Q_{n-1}.
/// With this start the Casorati determinant b_n (P_n Q_{n+1} - P_{n+1} Q_n) is 1.
std::vector<std::complex<double>> associated_sequence(const std::vector<OrthonormalPair>& ab,
                                                      std::complex<double> z, int N);
std::vector<double> associated_sequence(const RecurrenceTable& t, double x, int N);

/// Monic q_n(x; 1/a, 1/b, 1/c | 1/q) from the terminating 3phi2 in base 1/q.
double eval_qhahn_series(int n, const HyperPoint& pt, const QParams& p);

/// Askey-Wilson P_n(x; a, b, c, d | q) for real x (x = cos theta extended
/// polynomially), normalised so the 4phi3 is multiplied by (ab, ac, ad; q)_n / a^n.
double eval_askey_wilson(int n, double x, double a, double b, double c, double d, double q);

/// Continuous dual q-Hahn p_n(x; a, b, c | base) for real x and any base != 1,
/// leading coefficient 2^n.
double eval_continuous_dual_hahn(int n, double x, double a, double b, double c, double base);

/// Moment data with per-moment error estimates.
struct MomentTable {
    std::vector<double> mu;
    std::vector<double> err;
    std::string origin;
};

/// Monic c_0..c_N and lambda_0..lambda_N from a symmetric factorisation of the
/// Hankel matrix [mu_{i+j}]. Needs moments up to mu_{2N+1}. Throws
/// IndefiniteHankelError at the first nonpositive pivot. precision_digits
/// above 15 factors in extended precision.
RecurrenceTable recurrence_from_moments(const MomentTable& mt, int N, int precision_digits = 15);

}  // namespace qhahn
