#pragma once

// Weight functions on x = sinh(u), all with respect to dx.
//
//   hermite  w(x)        = e^u / (M(q) (-e^{2u}, -q e^{-2u}; q)_inf)
//   N-factor N(x; a,b,c) = (-(q/a) e^u, (q/a) e^{-u}, ... same for b, c ...; q)_inf
//   full     w(x; a,b,c) = N(x; a,b,c) w(x)
//
// M(q) = ln(1/q) (q; q)_inf / 2 is the mass of the unnormalised q^{-1}-Hermite
// weight, so the Hermite weight integrates to one and the full weight to
// (-q/(ab), -q/(ac), -q/(bc); q)_inf.
//
// For real a, b, c the N-factor has simple real zeros, so the full weight
// changes sign; it is a signed density whose moments are positive definite.

#include <optional>
#include <span>
#include <vector>

#include "qhahn/polyfam.hpp"
#include "qhahn/qcore.hpp"

namespace qhahn {

inline constexpr double kWeightProductTol = 1e-16;

/// ln(1/q) (q; q)_inf / 2.
double hermite_mass(double q);

SignedLog log_hermite_weight(const HyperPoint& pt, double q, double tol = kWeightProductTol);
double hermite_weight(const HyperPoint& pt, double q);

SignedLog log_n_factor(const HyperPoint& pt, const QParams& p, double tol = kWeightProductTol);
double n_factor(const HyperPoint& pt, const QParams& p);

SignedLog log_full_weight(const HyperPoint& pt, const QParams& p, double tol = kWeightProductTol);
double full_weight(const HyperPoint& pt, const QParams& p);

/// e^u (-q ar e^u, q ar e^{-u}, -q br e^u, q br e^{-u}; q)_inf / (M(q) (-e^{2u}, -q e^{-2u}; q)_inf),
/// the c -> infinity limit of the full weight with (1/a, 1/b) renamed (ar, br).
SignedLog log_al_salam_chihara_weight(const HyperPoint& pt, double ar, double br, double q,
                                      double tol = kWeightProductTol);
double al_salam_chihara_weight(const HyperPoint& pt, double ar, double br, double q);

/// Squared norm of monic q_n against the full weight:
/// 4^{-n} q^{-n(n+1)/2} (q; q)_n (-q^{1-n}/(ab), -q^{1-n}/(ac), -q^{1-n}/(bc); q)_inf.
double norm_kn(int n, const QParams& p);

/// (-q/(ab), -q/(ac), -q/(bc); q)_inf.
Estimate im_integral_rhs(const QParams& p);

enum class WeightKind { full_e15, hermite_e16, n_factor_only, al_salam_chihara };

struct WeightSpec {
    WeightKind kind = WeightKind::full_e15;
    QParams params;
    double ar = 0.0;  // Al-Salam-Chihara parameters
    double br = 0.0;
    double product_tol = kWeightProductTol;

    static WeightSpec full(const QParams& p);
    static WeightSpec hermite(double q);
    static WeightSpec n_factor_only(const QParams& p);
    static WeightSpec al_salam_chihara(double q, double ar, double br);

    /// Throws InadmissibleParams for a full weight with inadmissible params
    /// and NonconvergentBase for q outside (0, 1).
    void validate() const;

    SignedLog log_eval(const HyperPoint& pt) const;
    double operator()(const HyperPoint& pt) const { return log_eval(pt).value(); }

    /// Closed-form integral over the real line where one is known.
    std::optional<double> closed_form_mass() const;
};

/// Zeros of the N-factor in u within [u_min, u_max], sorted.
std::vector<double> n_factor_zeros(const QParams& p, double u_min, double u_max);

struct SignScan {
    double min_value = 0.0;
    double max_value = 0.0;
    std::size_t negative_samples = 0;
    std::vector<double> sign_changes;  // midpoints of bracketing grid cells
};

SignScan scan_weight_sign(const WeightSpec& w, std::span<const double> u_grid);

}  // namespace qhahn
