#include <cmath>

#include "doctest.h"
#include "weyl_scope/errors.hpp"
#include "weyl_scope/numerics.hpp"
#include "weyl_scope/triple.hpp"

using namespace weyl;

namespace {

// Real rank of a column family from its singular values, computed without
// going through orthonormal_basis.
Eigen::Index svd_rank(const CMatrix& a, double tol) {
    Eigen::BDCSVD<CMatrix> svd(a);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol * s(0)) ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("solve_linear") {
    SUBCASE("identity") {
        CVector b(2);
        b << 1.0, 2.0;
        const CVector x = solve_linear(CMatrix(CMatrix::Identity(2, 2)), b);
        CHECK(std::abs(x(0) - 1.0) < 1e-15);
        CHECK(std::abs(x(1) - 2.0) < 1e-15);
    }
    SUBCASE("diagonal") {
        CMatrix a = CMatrix::Zero(2, 2);
        a(0, 0) = 2.0;
        a(1, 1) = 4.0;
        CVector b(2);
        b << 2.0, 4.0;
        const CVector x = solve_linear(a, b);
        CHECK(std::abs(x(0) - 1.0) < 1e-15);
        CHECK(std::abs(x(1) - 1.0) < 1e-15);
    }
    SUBCASE("random well conditioned 20x20") {
        const CMatrix a = random_matrix(20, 20, 11) + 10.0 * CMatrix::Identity(20, 20);
        const CVector b = random_vector(20, 12);
        const CVector x = solve_linear(a, b);
        CHECK((a * x - b).norm() < 1e-10);
    }
    SUBCASE("singular") {
        CMatrix a = CMatrix::Zero(2, 2);
        a(0, 0) = 1.0;
        CHECK_THROWS_AS(solve_linear(a, CVector(CVector::Ones(2))), Error);
        try {
            solve_linear(a, CVector(CVector::Ones(2)));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SingularMatrix);
        }
    }
}

TEST_CASE("eig_dense") {
    SUBCASE("diagonal") {
        CMatrix a = CMatrix::Zero(3, 3);
        a.diagonal() << 1.0, 2.0, 3.0;
        const auto ev = eigenvalues(a);
        REQUIRE(ev.size() == 3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(ev[static_cast<std::size_t>(i)] - double(i + 1)) < 1e-14);
    }
    SUBCASE("nilpotent") {
        CMatrix a = CMatrix::Zero(2, 2);
        a(0, 1) = 1.0;
        const auto ev = eigenvalues(a);
        REQUIRE(ev.size() == 2);
        CHECK(std::abs(ev[0]) < 1e-12);
        CHECK(std::abs(ev[1]) < 1e-12);
    }
    SUBCASE("companion of z^2 - 3z + 2") {
        CMatrix a(2, 2);
        a << 0.0, -2.0, 1.0, 3.0;
        const auto ev = eigenvalues(a);
        CHECK(std::abs(ev[0] - 1.0) < 1e-12);
        CHECK(std::abs(ev[1] - 2.0) < 1e-12);
    }
    SUBCASE("pairs satisfy the eigen equation") {
        const CMatrix a = random_matrix(12, 12, 5);
        const double na = operator_norm(a);
        for (const auto& p : eig_dense(a)) CHECK((a * p.vector - p.value * p.vector).norm() <= 1e-8 * na);
    }
    SUBCASE("spectrum of the adjoint is conjugate") {
        const CMatrix a = random_matrix(10, 10, 6);
        auto ev = eigenvalues(a);
        auto evs = eigenvalues(CMatrix(a.adjoint()));
        for (auto& z : evs) z = std::conj(z);
        for (const auto& z : ev) {
            double best = 1e300;
            for (const auto& w : evs) best = std::min(best, std::abs(z - w));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("orthonormal_basis") {
    SUBCASE("rank one") {
        CMatrix c(2, 2);
        c << 1.0, 2.0, 0.0, 0.0;
        const CMatrix q = orthonormal_basis(c);
        REQUIRE(q.cols() == 1);
        CHECK(std::abs(std::abs(q(0, 0)) - 1.0) < 1e-14);
        CHECK(std::abs(q(1, 0)) < 1e-14);
    }
    SUBCASE("identity") {
        const CMatrix q = orthonormal_basis(CMatrix(CMatrix::Identity(4, 4)));
        CHECK(q.cols() == 4);
        CHECK((q.adjoint() * q - CMatrix::Identity(4, 4)).norm() < 1e-14);
    }
    SUBCASE("50 columns inside a 5-dim subspace") {
        const CMatrix basis = random_matrix(30, 5, 21);
        const CMatrix cols = basis * random_matrix(5, 50, 22);
        CHECK(svd_rank(cols, 1e-10) == 5);
        const CMatrix q = orthonormal_basis(cols);
        CHECK(q.cols() == 5);
        CHECK((q.adjoint() * q - CMatrix::Identity(5, 5)).norm() < 1e-13);
    }
    SUBCASE("empty input") {
        CHECK(orthonormal_basis(CMatrix(4, 0)).cols() == 0);
        CHECK(orthonormal_basis(CMatrix(CMatrix::Zero(3, 2))).cols() == 0);
    }
    SUBCASE("idempotent") {
        const CMatrix q = orthonormal_basis(random_matrix(15, 6, 3));
        const CMatrix q2 = orthonormal_basis(q);
        for (double a : principal_angles(q, q2)) CHECK(a < 1e-12);
    }
}

TEST_CASE("principal_angles") {
    const CMatrix e1 = CMatrix::Identity(2, 2).col(0);
    const CMatrix e2 = CMatrix::Identity(2, 2).col(1);
    SUBCASE("equal spans") {
        const CMatrix q = orthonormal_basis(random_matrix(8, 3, 1));
        for (double a : principal_angles(q, q)) CHECK(a < 1e-14);
    }
    SUBCASE("orthogonal lines") {
        const auto a = principal_angles(e1, e2);
        REQUIRE(a.size() == 1);
        CHECK(std::abs(a[0] - kPi / 2) < 1e-14);
    }
    SUBCASE("diagonal line") {
        const CMatrix d = (e1 + e2) / std::sqrt(2.0);
        const auto a = principal_angles(e1, d);
        CHECK(std::abs(a[0] - kPi / 4) < 1e-14);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(principal_angles(CMatrix(CMatrix::Identity(3, 1)), e1), Error);
    }
}

TEST_CASE("contour_integral") {
    ContourSpec c{cplx(0.3, -0.2), 1.5, 64};
    SUBCASE("constant") {
        const CMatrix k = random_matrix(3, 3, 9);
        const CMatrix r = contour_integral(MatrixFunction([&](cplx) { return k; }), c);
        CHECK(max_abs(r) < 1e-13);
    }
    SUBCASE("simple pole") {
        const cplx r = contour_integral(ScalarFunction([&](cplx z) { return 1.0 / (z - c.center); }), c);
        CHECK(std::abs(r - 2.0 * kPi * kI) < 1e-10);
    }
    SUBCASE("diagonal resolvent picks the enclosed eigenvalue") {
        ContourSpec unit{0.0, 1.0, 64};
        CMatrix a = CMatrix::Zero(2, 2);
        a(1, 1) = 5.0;
        const CMatrix r = contour_integral(
            MatrixFunction([&](cplx z) {
                return CMatrix((a - z * CMatrix::Identity(2, 2)).inverse());
            }),
            unit);
        // entrywise: integral of 1/(0 - z) = -2 pi i, of 1/(5 - z) = 0
        CHECK(std::abs(r(0, 0) + 2.0 * kPi * kI) < 1e-10);
        CHECK(std::abs(r(1, 1)) < 1e-10);
        CHECK(std::abs(r(0, 1)) < 1e-14);
    }
    SUBCASE("polynomials integrate to zero") {
        const CMatrix k = random_matrix(2, 2, 4);
        const CMatrix r = contour_integral(
            MatrixFunction([&](cplx z) { return CMatrix(k * (z * z * z) + k.adjoint() * z); }), c);
        CHECK(max_abs(r) < 1e-12);
    }
    SUBCASE("bad spec") {
        ContourSpec bad{0.0, 1.0, 7};
        CHECK_THROWS_AS(bad.validate(), Error);
        ContourSpec neg{0.0, -1.0, 8};
        CHECK_THROWS_AS(neg.validate(), Error);
    }
}

TEST_CASE("real_line_quadrature") {
    SUBCASE("arctan") {
        const cplx v = real_line_quadrature([](double x) { return cplx(1.0 / (x * x + 1.0)); }, 2);
        CHECK(std::abs(v - kPi) < 1e-10);
    }
    SUBCASE("partial fractions") {
        const cplx v = real_line_quadrature(
            [](double x) { return cplx(1.0 / ((x * x + 1.0) * (x * x + 4.0))); }, 4);
        CHECK(std::abs(v - kPi / 6.0) < 1e-10);
    }
    SUBCASE("odd integrand") {
        const cplx v = real_line_quadrature(
            [](double x) { return cplx(x / ((x * x + 1.0) * (x * x + 1.0))); }, 3);
        CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("slow decay rejected") {
        try {
            real_line_quadrature([](double x) { return cplx(1.0 / (1.0 + std::abs(x))); }, 1);
            FAIL("expected SlowDecay");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SlowDecay);
        }
    }
}
