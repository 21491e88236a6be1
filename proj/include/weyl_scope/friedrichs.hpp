#pragma once

#include <vector>

#include "weyl_scope/rational.hpp"

namespace weyl {

/// (A f)(x) = x f(x) + <f, phi> psi on L^2(R) with int f = 0. The maximal
/// operators are
///   A^* f = x f - c_f + <f, psi> phi,    Atilde^* f = x f - c_f + <f, phi> psi,
/// with Gamma1 u = int (u - c_u sign(x)(x^2+1)^{-1/2}) dx and Gamma2 u = c_u.
struct FriedrichsModel {
    RationalH2 phi;
    RationalH2 psi;
    cplx B{0.0, 0.0};
};

/// int conj(f(x)) / (x - lambda) dx. RealLambda, PoleCollision.
cplx fr_cauchy(const RationalH2& f, cplx lambda);

/// 1 + int psi conj(phi) / (x - lambda) dx.
cplx fr_D(const FriedrichsModel& model, cplx lambda);

/// sign(Im lambda) pi i - (int psi/(x - lambda)) (int conj(phi)/(x - lambda)) / D - B,
/// which is Gamma1 f / Gamma2 f - B on ker(Atilde^* - lambda). DZero when |D| < 1e-12.
cplx fr_bracket(const FriedrichsModel& model, cplx lambda);

/// 1 / fr_bracket. BracketZero when |bracket| < 1e-12.
cplx fr_m(const FriedrichsModel& model, cplx lambda);

/// c_f = lim x f(x).
cplx fr_c(const RationalH2& f);

struct GammaValues {
    cplx gamma1;
    cplx gamma2;
};

GammaValues fr_gamma(const RationalH2& f);

enum class FriedrichsSide { Maximal, MaximalTilde };

/// A^* f (Maximal) or Atilde^* f (MaximalTilde) as a rational function.
RationalH2 fr_adjoint_rational(const FriedrichsModel& model, const RationalH2& f, FriedrichsSide side);

/// Pointwise values of the same on the evaluation grid.
CVector fr_adjoint_apply(const FriedrichsModel& model, const RationalH2& f, FriedrichsSide side);

/// 2001 Chebyshev points x_j = 50 cos(pi j / 2000).
const RVector& fr_eval_grid();

/// Values of f on the evaluation grid.
CVector fr_sample(const RationalH2& f);

/// Residual of <A^* f, g> - <f, Atilde^* g> - Gamma1 f conj(Gamma2 g) + Gamma2 f conj(Gamma1 g).
cplx fr_green_residual(const FriedrichsModel& model, const RationalH2& f, const RationalH2& g);

/// The element of ker(Atilde^* - lambda) with Gamma2 f = gamma2:
/// f = gamma2 [1/(x - lambda) - (int conj(phi)/(x - lambda)) / D * psi/(x - lambda)].
RationalH2 fr_kernel_element(const FriedrichsModel& model, cplx lambda, cplx gamma2);

/// sup over the grid of |x f - c_f + <f, phi> psi - lambda f|.
double fr_eigen_residual(const FriedrichsModel& model, const RationalH2& f, cplx lambda);

struct MScanRow {
    cplx lambda;
    cplx m{0.0, 0.0};
    bool defined = false;
    double abs_D = 0.0;
    double bracket_abs = 0.0;
};

/// M on the points x_j + i eps and x_j - i eps (two rows per x, + first).
std::vector<MScanRow> fr_m_scan(const FriedrichsModel& model, const std::vector<double>& xs, double eps);

/// |M(x + i eps) - M(x - i eps)|.
double fr_jump(const FriedrichsModel& model, double x, double eps);

struct Example2Report {
    cplx lambda0;
    cplx c;  // phi = c psi
    FriedrichsModel model;
    RationalH2 u;
    cplx D_lambda0;
    cplx u_phi;  // <u, phi>
    GammaValues gamma_u;
    double eigen_residual = 0.0;
    double m0_cauchy_residual = 0.0;
    bool lower = true;
    /// Upper case: least-squares residual of the constrained resolvent equation
    /// for the probe f, and the obstruction value <f/(x - lambda0), phi>.
    double probe_residual = 0.0;
    cplx obstruction{0.0, 0.0};
};

/// Eigenvalue that is not a pole of M_0. ConstructionFailed if
/// int |psi|^2/(x - lambda0) vanishes.
Example2Report fr_example2(const RationalH2& psi, cplx lambda0, const RationalH2& probe);

/// Probe used when none is given: 1/(x + i).
RationalH2 fr_default_probe();

/// Least-squares residual of (Atilde^* - lambda) u = f, (Gamma1 - C Gamma2) u = 0
/// reduced to the two unknowns (c_u, <u, phi>).
double fr_resolvent_probe(const FriedrichsModel& model, cplx lambda, cplx C, const RationalH2& f);

struct Example3Report {
    double lambda0 = 0.0;
    double s = 0.0;
    double base_integral = 0.0;  // int (x - lambda0)|g|^2
    FriedrichsModel model;
    RationalH2 u;
    cplx psi_at_lambda0;
    double u_norm = 0.0;
    double eigen_residual = 0.0;
    cplx norm_integral;  // int |psi|^2/(x - lambda0), should be -1
    cplx m_plus;
    cplx m_minus;
    cplx jump;
    cplx expected_jump;
};

/// Embedded eigenvalue with phi = psi = s (x - lambda0) g and real B.
/// ConstructionFailed if int (x - lambda0)|g|^2 >= 0 (no real s).
Example3Report fr_example3(double lambda0, const RationalH2& g, double B = 0.0, double eps = 1e-3);

}  // namespace weyl
