#pragma once

#include <vector>

#include "weyl_scope/numerics.hpp"

namespace weyl {

/// Uniform grid on [0, L] with trapezoid weights.
struct HalfLineGrid {
    double L = 40.0;
    int n = 4096;
    RVector nodes;
    RVector weights;

    static HalfLineGrid uniform(double length, int count);
    double spacing() const { return L / (n - 1); }
};

/// A = i d/dx on the half line, Gamma1 f = i f(0), Gamma2 = 0,
/// adjoint side Gammat1 = 0, Gammat2 f = f(0).
struct FOModel {
    cplx B{0.0, 0.0};
    HalfLineGrid grid = HalfLineGrid::uniform(40.0, 4096);
};

/// M_B(lambda); identically zero.
cplx fo_m(const FOModel& model, cplx lambda);

/// Adjoint-side value -1/Bt. InvalidArgument for Bt = 0.
cplx fo_m_adjoint(cplx b_tilde, cplx lambda);

/// Solves i f' - lambda f = g, f(0) = 0 on the grid for Im lambda < 0
/// (trapezoid recursion for the variation-of-constants integral).
CVector fo_resolvent(const FOModel& model, cplx lambda, const CVector& g);

/// L2 norm with the grid weights.
double grid_norm(const HalfLineGrid& grid, const CVector& f);

/// Max over interior nodes of |i f' - lambda f - g| with central differences.
double fo_ode_residual(const FOModel& model, cplx lambda, const CVector& f, const CVector& g);

/// Weighted least-squares residual of f against span{exp(-i mu_j x)}.
/// BadMu if some Im mu_j >= 0.
double fo_T_density_residual(const FOModel& model, const CVector& f, const std::vector<cplx>& mus);

/// Nested sample points mu = -i t, t in [0.5, 3.5] in van der Corput order.
std::vector<cplx> fo_density_mus(int count);

/// ||fo_resolvent(lambda_j, g)|| along the path.
std::vector<double> fo_blowup_scan(const FOModel& model, const std::vector<cplx>& path, const CVector& g);

/// Operator norm of the resolvent at each path point, by power iteration on
/// R^* R. Each point uses its own grid: length max(L, 20/|Im lambda|) and
/// spacing 0.1/max(|lambda|, 1), so the truncation does not cap
/// the norm near the real axis.
std::vector<double> fo_operator_norm_scan(const FOModel& model, const std::vector<cplx>& path,
                                          int iterations = 12);

/// lambda_j = x0 - i 2^{-j}, j = first..last.
std::vector<cplx> fo_dyadic_path(double x0, int first, int last);

/// Samples a function on the grid nodes.
CVector sample(const HalfLineGrid& grid, const std::function<cplx(double)>& f);

}  // namespace weyl
