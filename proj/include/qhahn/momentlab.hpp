#pragma once

// Moments, Gram matrices, Hankel positivity, the Chihara determinacy rule and
// finite Nevanlinna data.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qhahn/measures.hpp"
#include "qhahn/polyfam.hpp"
#include "qhahn/qoperators.hpp"
#include "qhahn/quadrature.hpp"

namespace qhahn {

/// Dense symmetric matrix of integrals with matching error estimates.
struct GramResult {
    std::vector<std::vector<double>> value;
    std::vector<std::vector<double>> err;
    double u_max = 0.0;
};

/// G_mn = int q_m q_n w dx for 0 <= m, n <= N, with q_n the monic rotated
/// family of p and w the given weight. N is capped at 12.
GramResult gram_matrix(int N, const QParams& p, const WeightSpec& w, const QuadConfig& cfg = {});

/// G_ij = int f_i f_j weight dx for arbitrary functions.
GramResult gram_of(const std::vector<BreveFunction>& fs, const ScalarIntegrand& weight,
                   const QuadConfig& cfg = {});

/// mu_k = int x^k w dx for k = 0..K (K <= 32; K <= 16 keeps Hankel work in
/// double precision meaningful).
MomentTable moments(int K, const WeightSpec& w, const QuadConfig& cfg = {});

struct HankelReport {
    std::vector<int> sizes;          // 1..max_size
    std::vector<double> pivots;      // computed pivots, possibly fewer than max_size
    std::vector<bool> positive;      // per size
    std::optional<int> first_failure;  // smallest failing size
};

/// Never throws IndefiniteHankel; the failure is reported instead.
HankelReport hankel_report(const MomentTable& mt, int max_size, int precision_digits = 15);

enum class Verdict { determinate, indeterminate, inconclusive };
std::string to_string(Verdict v);

struct DeterminacyVerdict {
    double L_estimate = 0.0;
    double L_limit_formula = 0.0;
    double liminf_estimate = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::string reason;
    int n_max = 0;
    int window_start = 0;
    bool reflected = false;  // criterion applied to x -> -x
    double f_window_min = 0.0;
    double f_window_max = 0.0;
};

/// Chihara's rule on monic coefficients given in log form, indexed 0..n_max+1:
/// with L = lambda_{n+1}/(c_n c_{n+1}) at n = n_max and the window minimum of
/// c_n^{1/n}, indeterminate when that minimum exceeds
/// (1 + sqrt(1 - 4L)) / (1 - sqrt(1 - 4L)), determinate when it is below,
/// inconclusive otherwise or when L >= 1/4.
/// A c sequence of constant negative sign in the window is reflected first.
/// Throws NonpositiveC when c changes sign or vanishes in the window.
DeterminacyVerdict chihara_rule(const std::vector<SignedLog>& c, const std::vector<SignedLog>& lam,
                                int n_max);
DeterminacyVerdict chihara_rule(const RecurrenceTable& t, int n_max);

/// The rule applied to the unrotated coefficients of p, evaluated through
/// c_n = f_n q^{-2n} and lambda_n = g_n q^{-4n} so n_max = 200 stays finite.
/// Needs n_max >= 50.
DeterminacyVerdict chihara_classify(const QParams& p, int n_max = 200);

/// f_n = c_n q^{2n} for the unrotated coefficients.
double unrotated_scaled_c(const QParams& p, int n);

struct NevanlinnaQuad {
    int n = 0;
    std::complex<double> z;
    std::complex<double> A, B, C, D;
    std::complex<double> det;
};

/// Truncations built from orthonormal P_n and associated Q_n (Q_1 = 1/b_0):
///   A_n = b_n (Q_n(0) Q_{n+1}(z) - Q_{n+1}(0) Q_n(z))
///   B_n = b_n (Q_n(0) P_{n+1}(z) - Q_{n+1}(0) P_n(z))
///   C_n = b_n (P_n(0) Q_{n+1}(z) - P_{n+1}(0) Q_n(z))
///   D_n = b_n (P_n(0) P_{n+1}(z) - P_{n+1}(0) P_n(z))
/// The table needs max_index >= n + 1.
NevanlinnaQuad nevanlinna_quad(int n, std::complex<double> z, const RecurrenceTable& t);

/// (A_n t - C_n) / (B_n t - D_n); t = +-infinity gives A_n / B_n.
/// Throws InvalidArgument for real z and PoleHit on a vanishing denominator.
std::complex<double> stieltjes_approx(std::complex<double> z, double t, int n,
                                      const RecurrenceTable& table);

}  // namespace qhahn
