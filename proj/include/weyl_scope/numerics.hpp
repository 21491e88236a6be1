#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace weyl {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Default relative singular-value cutoff used for numerical spans.
inline constexpr double kRankTol = 1e-10;

// Dense solves

/// Solves A x = b with partial-pivot LU. Throws SingularMatrix when a pivot
/// falls below 1e-13 * ||A||.
CVector solve_linear(const CMatrix& a, const CVector& b);
CMatrix solve_linear(const CMatrix& a, const CMatrix& b);

/// Smallest singular value of a square matrix relative to its largest.
double relative_min_singular_value(const CMatrix& a);

struct EigenPair {
    cplx value;
    CVector vector;
};

/// All n eigenpairs of a square matrix (with multiplicity), vectors unit norm.
std::vector<EigenPair> eig_dense(const CMatrix& a);
/// Eigenvalues only, sorted lexicographically by (real, imag).
std::vector<cplx> eigenvalues(const CMatrix& a);

/// Orthonormal basis of the numerical column span. Singular values below
/// tol * sigma_max are discarded. Zero columns in, zero columns out.
CMatrix orthonormal_basis(const CMatrix& columns, double tol = kRankTol);

/// Principal angles between the spans of two orthonormal column families,
/// nondecreasing, min(cols) entries. Small angles come from sines so that
/// equal spans report angles near machine precision.
std::vector<double> principal_angles(const CMatrix& u, const CMatrix& v);

/// Closed circular contour, traversed counter-clockwise.
struct ContourSpec {
    cplx center{0.0, 0.0};
    double radius = 1.0;
    int nodes = 64;

    void validate() const;
    cplx node(int j) const;
    /// Trapezoid weight d(lambda) at node j.
    cplx weight(int j) const;
};

using MatrixFunction = std::function<CMatrix(cplx)>;
using ScalarFunction = std::function<cplx(cplx)>;

/// Trapezoid approximation of the closed integral of f over the circle.
CMatrix contour_integral(const MatrixFunction& f, const ContourSpec& contour);
cplx contour_integral(const ScalarFunction& f, const ContourSpec& contour);

using RealLineFunction = std::function<cplx(double)>;

/// Integral over the real line through x = tan(theta) and Gauss-Legendre on
/// each half (-pi/2, 0), (0, pi/2), so a jump at x = 0 is harmless.
/// Requires decay_order >= 2 (SlowDecay otherwise).
cplx real_line_quadrature(const RealLineFunction& f, int decay_order, int nodes = 400);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

double max_abs(const CMatrix& a);

/// Worker count: WEYL_SCOPE_THREADS if set (>= 1), else hardware concurrency.
int worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. Results must be written
/// by index; if several calls throw, the exception of the lowest index wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace weyl
