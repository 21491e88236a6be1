#pragma once

#include <utility>
#include <vector>

#include "weyl_scope/numerics.hpp"

namespace weyl {

/// Piecewise polynomial on [0, 1]. Piece i lives on [breaks[i], breaks[i+1])
/// with coeffs[i] in ascending powers of the global x.
struct PiecewisePoly {
    std::vector<double> breaks{0.0, 1.0};
    std::vector<std::vector<cplx>> coeffs{{0.0}};

    static PiecewisePoly constant(cplx c);
    /// Step function: value values[i] on [breaks[i], breaks[i+1]).
    static PiecewisePoly steps(const std::vector<double>& breaks, const std::vector<cplx>& values);

    void validate() const;
    std::size_t piece_of(double x) const;
    cplx operator()(double x) const;
    /// Value on piece i (no lookup), used at breakpoints from either side.
    cplx eval_piece(std::size_t i, double x) const;
    bool piece_is_zero(std::size_t i) const;
};

/// -y'' + q y + w z, w y + u z on H^2(0,1) x L^2(0,1), boundary conditions
/// y'(0) + cot(alpha) y(0) = 0 and y'(1) + cot(beta) y(1) = 0.
struct HLModel {
    PiecewisePoly q;
    PiecewisePoly u;
    PiecewisePoly w;
    double alpha = kPi / 2;
    double beta = kPi / 2;

    void validate() const;
    /// Union of the breakpoints of q, u, w.
    std::vector<double> breakpoints() const;
    /// W = {w != 0} as a list of intervals (zero pieces removed, adjacent merged).
    std::vector<std::pair<double, double>> support_w() const;
    bool in_w(double x) const;
};

/// Image of u over a set of pieces. Real-valued pieces become closed
/// intervals (points for constants); complex-valued pieces are kept as arcs.
struct EssRange {
    struct Arc {
        std::vector<cplx> coeffs;
        double a = 0.0;
        double b = 0.0;
    };
    std::vector<std::pair<double, double>> intervals;
    std::vector<Arc> arcs;

    bool empty() const { return intervals.empty() && arcs.empty(); }
    double distance(cplx z) const;
};

struct HLEssRanges {
    EssRange full;
    EssRange on_w;
};

HLEssRanges hl_essran(const HLModel& model);

struct ShootingResult {
    cplx y1_at_1, dy1_at_1, y2_at_1, dy2_at_1;
    cplx lambda;
    double ode_tol = 0.0;
    /// |y1 y2' - y1' y2 - 1| at x = 1.
    double wronskian_error = 0.0;
};

/// Integrates -y'' + (q - lambda) y + w^2/(lambda - u) y = 0 for y1(0) = cos a,
/// y1'(0) = sin a and y2(0) = -sin a, y2'(0) = cos a, restarting at breakpoints.
/// CoefficientSingular within 1e-8 of essran(u|W); ToleranceNotMet if the
/// Wronskian drifts by more than 10 tol (relative to the solution size).
ShootingResult hl_shoot(const HLModel& model, cplx lambda, double tol = 1e-10);

/// y2'(1) + cot(beta) y2(1); zeros are the eigenvalues off essran(u|W).
cplx hl_denominator(const HLModel& model, cplx lambda, double tol = 1e-10);

/// 2x2 M-matrix. AtEigenvalue when |denominator| < 1e-12.
CMatrix hl_m_matrix(const HLModel& model, cplx lambda, double tol = 1e-10);

struct Rectangle {
    double re_min, re_max, im_min, im_max;
};

/// Zeros of the denominator inside the rectangle: argument-principle counts on
/// cell boundaries with recursive subdivision, Newton polish to 1e-10.
/// ContourHitsEssran if the boundary comes within 1e-3 of essran(u) or the
/// region meets essran(u|W).
std::vector<cplx> hl_eigenvalues(const HLModel& model, const Rectangle& region);

/// Winding number of the denominator around the rectangle boundary.
int hl_winding_number(const HLModel& model, const Rectangle& region);

struct HLDiscretization {
    CMatrix matrix;  // 2n x 2n, unknowns (y_0..y_{n-1}, z_0..z_{n-1})
    RVector nodes;   // cell centres (j + 1/2) / n
    double h = 0.0;
    std::vector<bool> in_w;
};

/// Cell-centred second-order differences; Robin rows through ghost values.
HLDiscretization hl_discretize(const HLModel& model, int n);

struct HLScanRow {
    cplx lambda;  // x + i eps
    CMatrix m;    // empty when undefined
    double denom_abs = 0.0;
    double full_jump = 0.0;
    double bordered_jump = 0.0;
    bool in_essran = false;
    bool in_essran_w = false;
};

/// Two-sided scan at x +- i eps on the discretisation with n cells.
/// GridHitsEssranW when a grid point is within 1e-3 of essran(u|W) and
/// allow_essran_w is false.
std::vector<HLScanRow> hl_bordered_scan(const HLModel& model, const std::vector<double>& xs, double eps, int n = 128,
                                        bool allow_essran_w = false);

/// ||(I - P) R P|| + ||P R (I - P)|| for P the indicator of L^2(0,1) + L^2(W).
/// LambdaInSpectrum if lambda is an eigenvalue of the discretisation.
double hl_reducing_check(const HLModel& model, cplx lambda, int n);
/// Same with an explicit indicator for the second component (length n).
double hl_reducing_check(const HLModel& model, cplx lambda, int n, const std::vector<bool>& indicator);

/// u = 2 on [0, 1/2), 3 on [1/2, 1]; w = 1 on [0, 1/2); q = 0; Neumann ends.
HLModel hl_step_model();

}  // namespace weyl
