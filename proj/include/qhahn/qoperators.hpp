#pragma once

// Divided-difference and averaging operators for the lattice x = sinh(u):
//
//   D_q f(x) = (f~(q^{1/2} e^u) - f~(q^{-1/2} e^u)) / ((q^{1/2} - q^{-1/2}) cosh u)
//   S_q f(x) = (f~(q^{1/2} e^u) + f~(q^{-1/2} e^u)) / 2
//
// where f~(e^u) = f((e^u - e^{-u}) / 2). Functions are passed in the e^u
// coordinate so shifted evaluations never go through a logarithm.

#include <functional>

#include "qhahn/polyfam.hpp"

namespace qhahn {

/// f~ : e^u -> f(sinh u). Evaluators must be safe to call concurrently.
using BreveFunction = std::function<double(double eu)>;

/// Wraps an ordinary function of x.
BreveFunction breve_of(std::function<double(double x)> f);

/// Monic q_n(x; 1/a, 1/b, 1/c | 1/q) through the three-term recurrence.
BreveFunction qhahn_breve(int n, const QParams& p);

double dq_apply(const BreveFunction& f, const HyperPoint& pt, double q);
double sq_apply(const BreveFunction& f, const HyperPoint& pt, double q);

/// D_q f and S_q f as functions, for composing D_q^2 and S_q D_q.
BreveFunction dq_lift(BreveFunction f, double q);
BreveFunction sq_lift(BreveFunction f, double q);

/// (q^n - q^{-n}) / (q^{1/2} - q^{-1/2}).
double gamma_n(int n, double q);

/// Constant in D_q q_n(x; a, b, c) = factor * q_{n-1}(x; a q^{1/2}, b q^{1/2}, c q^{1/2})
/// for the monic normalisation: the leading coefficient of D_q x^n,
/// (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2}), the gamma_n formula at index n/2.
double lowering_factor(int n, double q);

/// |D_q q_n - lowering_factor(n) q_{n-1}(shifted)| / (1 + |lowering_factor(n) q_{n-1}(shifted)|).
double lowering_residual(int n, const HyperPoint& pt, const QParams& p);

/// v_k(u, a; q) = (-e^u / a, e^{-u} / a; 1/q)_k.
double basis_v_eval(int k, const HyperPoint& pt, double a, double q);

/// Coefficient in D_q v_k(u, a) = coefficient * v_{k-1}(u, a q^{1/2}).
double basis_v_lowering(int k, double a, double q);

struct SLCoefficients {
    double phi2 = 0.0, phi1 = 0.0, phi0 = 0.0;
    double psi1 = 0.0, psi0 = 0.0;
    double lambda_n = 0.0;

    double phi(double x) const { return (phi2 * x + phi1) * x + phi0; }
    double psi(double x) const { return psi1 * x + psi0; }
};

/// phi(x) D_q^2 y + psi(x) S_q D_q y + lambda_n y = 0 for y = q_n.
SLCoefficients sl_coefficients(const QParams& p, int n);

/// Left side of the Sturm-Liouville equation at x = sinh(u) for y = q_n,
/// divided by (1 + |lambda_n q_n(x)|).
double sl_residual(int n, const HyperPoint& pt, const QParams& p);

/// ((x(s + 1/2) - x(s - 1/2)) / 2)^2 = (q^{1/2} - q^{-1/2})^2 (x^2 + 1) / 4.
double u2_factor(double x, double q);

/// phi^2 - U_2 psi^2 in product form:
/// (8 / (abc)) (x + (a - 1/a)/2)(x + (b - 1/b)/2)(x + (c - 1/c)/2).
double pi_poly(const QParams& p, double x);

}  // namespace qhahn
