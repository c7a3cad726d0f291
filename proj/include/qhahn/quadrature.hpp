#pragma once

// Composite Gauss-Kronrod quadrature for integrals over the real line in the
// x = sinh(u) coordinate:  int f(x) dx = int f(sinh u) cosh u du.
//
// Each panel of [-U, U] is integrated with the 21-point Kronrod rule and its
// embedded 10-point Gauss rule. Panels are evaluated independently (in
// parallel under Exec::parallel) and summed in panel order afterwards, so
// serial and parallel runs return bitwise identical results.

#include <functional>
#include <span>
#include <vector>

#include "qhahn/polyfam.hpp"

namespace qhahn {

enum class Exec { serial, parallel };

struct QuadConfig {
    int panels = 256;
    /// Cutoff; 0 selects it automatically by doubling from 8 up to 128.
    double u_max = 0.0;
    /// Integrand magnitude near +-u_max must stay below tail_tol * peak.
    double tail_tol = 1e-16;
    /// Bisect panels whose Kronrod/Gauss discrepancy exceeds
    /// adapt_tol * |total| / panels, up to adapt_depth times.
    bool adaptive = false;
    double adapt_tol = 1e-15;
    int adapt_depth = 8;
    Exec exec = Exec::parallel;
};

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
};

/// Writes m integrand components f_j(x) (with respect to dx) into out.
/// Must be safe to call concurrently.
using VectorIntegrand = std::function<void(const HyperPoint& pt, std::span<double> out)>;
using ScalarIntegrand = std::function<double(const HyperPoint& pt)>;

struct QuadReport {
    std::vector<QuadResult> results;
    double u_max = 0.0;
    int panels = 0;  // after adaptive refinement
};

/// Throws TailNotDecayed when no cutoff up to 128 passes the tail test, or
/// the fixed cutoff fails it.
QuadReport integrate_many(const VectorIntegrand& f, std::size_t m, const QuadConfig& cfg);
QuadResult integrate(const ScalarIntegrand& f, const QuadConfig& cfg);

/// f at each point of a u-grid.
std::vector<double> evaluate_on_grid(const ScalarIntegrand& f, std::span<const double> u_grid,
                                     Exec exec);

/// n equally spaced points from lo to hi inclusive (n == 1 gives lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qhahn
