#include <doctest.h>

#include "weyl_scope/errors.hpp"
#include "weyl_scope/firstorder.hpp"

using namespace weyl;

namespace {

FOModel model_with(int n, double length = 40.0) {
    FOModel m;
    m.grid = HalfLineGrid::uniform(length, n);
    return m;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("grid") {
    const auto g = HalfLineGrid::uniform(40.0, 101);
    CHECK(std::abs(g.weights.sum() - 40.0) < 1e-12);
    CHECK(g.weights.minCoeff() > 0.0);
    CHECK(code_of([] { HalfLineGrid::uniform(1.0, 8); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("M is identically zero") {
    const FOModel m = model_with(64);
    CHECK(fo_m(m, cplx(1.0, 1.0)) == 0.0);
    CHECK(fo_m(m, cplx(0.0, -5.0)) == 0.0);
    CHECK(fo_m_adjoint(2.0, cplx(0.3, 0.2)) == -0.5);
}

TEST_CASE("resolvent") {
    const FOModel m = model_with(4096);
    const CVector g = sample(m.grid, [](double x) { return std::exp(-x); });
    SUBCASE("zero data") {
        CHECK(fo_resolvent(m, cplx(0.0, -1.0), CVector::Zero(4096)).norm() == 0.0);
    }
    SUBCASE("closed form at lambda = -i") {
        const CVector f = fo_resolvent(m, cplx(0.0, -1.0), g);
        const CVector exact = sample(m.grid, [](double x) { return -kI * x * std::exp(-x); });
        CHECK((f - exact).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(f(0) == 0.0);
    }
    SUBCASE("closed form at a generic point") {
        const cplx l(0.5, -0.7);
        const CVector f = fo_resolvent(m, l, g);
        const CVector exact = sample(m.grid, [&](double x) {
            return -kI * (std::exp(-x) - std::exp(-kI * l * x)) / (kI * l - 1.0);
        });
        const double err_fine = (f - exact).cwiseAbs().maxCoeff();
        CHECK(err_fine < 1e-5);
        CHECK(fo_ode_residual(m, l, f, g) < 1e-4);
        // Trapezoid recursion: halving h cuts the error by about 4.
        const auto half = model_with(2048);
        const CVector gh = sample(half.grid, [](double x) { return std::exp(-x); });
        const CVector eh = sample(half.grid, [&](double x) {
            return -kI * (std::exp(-x) - std::exp(-kI * l * x)) / (kI * l - 1.0);
        });
        const double err_half = (fo_resolvent(half, l, gh) - eh).cwiseAbs().maxCoeff();
        CHECK(err_half / err_fine > 3.5);
        CHECK(err_half / err_fine < 4.5);
    }
    SUBCASE("linearity") {
        const cplx l(-1.0, -0.3);
        CHECK((fo_resolvent(m, l, CVector(2.0 * g)) - 2.0 * fo_resolvent(m, l, g)).norm() < 1e-13);
    }
    SUBCASE("ODE residual is second order") {
        const cplx l(0.5, -0.7);
        const auto coarse = model_with(1024);
        const auto fine = model_with(4096);
        const auto gc = sample(coarse.grid, [](double x) { return std::exp(-x); });
        const double rc = fo_ode_residual(coarse, l, fo_resolvent(coarse, l, gc), gc);
        const double rf = fo_ode_residual(fine, l, fo_resolvent(fine, l, g), g);
        CHECK(rc / rf > 12.0);
    }
    SUBCASE("upper half plane") {
        CHECK(code_of([&] { fo_resolvent(m, cplx(0.0, 0.0), g); }) == ErrorCode::UpperHalfPlane);
        CHECK(code_of([&] { fo_resolvent(m, cplx(1.0, 0.5), g); }) == ErrorCode::UpperHalfPlane);
    }
}

TEST_CASE("density of the exponentials") {
    const FOModel m = model_with(4001);
    SUBCASE("members of the span") {
        const cplx mu(0.7, -0.4);
        const CVector f = sample(m.grid, [&](double x) { return std::exp(-kI * mu * x); });
        CHECK(fo_T_density_residual(m, f, {cplx(0.0, -2.0), mu}) < 1e-10);
        const CVector e = sample(m.grid, [](double x) { return std::exp(-x); });
        CHECK(fo_T_density_residual(m, e, {cplx(0.0, -1.0)}) < 1e-12);
    }
    SUBCASE("x exp(-x) with nested samples") {
        const CVector f = sample(m.grid, [](double x) { return x * std::exp(-x); });
        double prev = 1e300;
        for (int count = 2; count <= 6; ++count) {
            const double r = fo_T_density_residual(m, f, fo_density_mus(count));
            CHECK(r < prev);
            prev = r;
        }
        CHECK(fo_T_density_residual(m, f, fo_density_mus(30)) < 1e-3);
    }
    SUBCASE("bad samples") {
        const CVector f = CVector::Ones(4001);
        CHECK(code_of([&] { fo_T_density_residual(m, f, {cplx(1.0, 0.0)}); }) == ErrorCode::BadMu);
    }
}

TEST_CASE("blow-up toward the real axis") {
    const FOModel m = model_with(4096);
    const auto path = fo_dyadic_path(0.5, 1, 12);
    const CVector g = sample(m.grid, [](double x) { return std::exp(-x); });

    const auto norms = fo_blowup_scan(m, path, g);
    for (std::size_t j = 1; j < norms.size(); ++j) CHECK(norms[j] > norms[j - 1]);
    // ||R g|| against the closed form (exact on the half line up to truncation).
    for (std::size_t j = 0; j < path.size(); ++j) {
        const cplx l = path[j];
        const CVector exact = sample(m.grid, [&](double x) {
            return -kI * (std::exp(-x) - std::exp(-kI * l * x)) / (kI * l - 1.0);
        });
        CHECK(std::abs(norms[j] - grid_norm(m.grid, exact)) < 1e-5 * norms[j]);
    }
    for (double v : fo_blowup_scan(m, path, CVector::Zero(4096))) CHECK(v == 0.0);

    // Away from the axis: ||R g|| <= ||g|| / |Im lambda|.
    const double gn = grid_norm(m.grid, g);
    const std::vector<cplx> far{cplx(0.0, -1.0), cplx(3.0, -2.0), cplx(-2.0, -0.5)};
    const auto fn = fo_blowup_scan(m, far, g);
    for (std::size_t j = 0; j < far.size(); ++j) {
        CHECK(fn[j] <= gn / std::abs(far[j].imag()));
        CHECK(fn[j] >= 0.1 * gn / std::abs(far[j].imag()) / (1.0 + std::abs(far[j])));
    }

    CHECK(code_of([&] { fo_blowup_scan(m, {cplx(0.0, 0.1)}, g); }) == ErrorCode::UpperHalfPlane);
}

TEST_CASE("resolvent operator norm is 1/|Im lambda|") {
    const FOModel m = model_with(4096);
    const std::vector<cplx> pts{cplx(0.5, -1.0), cplx(0.5, -0.25), cplx(2.0, -0.5)};
    const auto norms = fo_operator_norm_scan(m, pts);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        CHECK(norms[j] <= 1.0 / std::abs(pts[j].imag()) * (1.0 + 1e-6));
        CHECK(norms[j] > 0.9 / std::abs(pts[j].imag()));
    }
}
