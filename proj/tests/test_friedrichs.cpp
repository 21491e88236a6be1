#include <doctest.h>

#include <random>

#include "weyl_scope/errors.hpp"
#include "weyl_scope/friedrichs.hpp"

using namespace weyl;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

/// Random proper rational with poles at distance >= 0.5 from the real axis.
RationalH2 random_rational(std::mt19937_64& rng, bool hardy, int terms = 3) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> im(0.5, 2.0);
    RationalH2 f;
    for (int k = 0; k < terms; ++k) {
        const double s = hardy || u(rng) < 0.0 ? -1.0 : 1.0;
        f.terms.push_back({cplx(2.0 * u(rng), s * im(rng)), 1 + (k % 2), cplx(u(rng), u(rng))});
    }
    return normalized(f);
}

cplx quad(const std::function<cplx(double)>& f) { return real_line_quadrature(f, 2, 2000); }

const RationalH2 kPsi = RationalH2::pole(cplx(0.0, -1.0));  // 1/(x + i)

}  // namespace

TEST_CASE("rational algebra") {
    std::mt19937_64 rng(7);
    const RationalH2 f = random_rational(rng, false, 4);
    const RationalH2 g = random_rational(rng, false, 3);
    for (const cplx x : {cplx(0.3, 0.1), cplx(-2.0, 5.0), cplx(1.7, -0.2)}) {
        CHECK(std::abs((f * g)(x) - f(x) * g(x)) < 1e-12);
        CHECK(std::abs((f + g)(x) - (f(x) + g(x))) < 1e-14);
        const auto [r, c] = times_linear(f, cplx(0.4, 0.2));
        CHECK(std::abs(r(x) + c - (x - cplx(0.4, 0.2)) * f(x)) < 1e-12);
        CHECK(std::abs(divide_linear(f, cplx(0.5, 3.0))(x) - f(x) / (x - cplx(0.5, 3.0))) < 1e-12);
    }
    CHECK(std::abs(conj(f)(0.7) - std::conj(f(0.7))) < 1e-15);
    CHECK(std::abs(times_linear(f, 0.0).second - residue_sum(f)) == 0.0);

    // Division at a real zero keeps the function regular; elsewhere it fails.
    const RationalH2 h = times_linear(kPsi * kPsi, 0.5).first;  // (x - 0.5)/(x + i)^2
    const RationalH2 q = divide_linear(h, 0.5);
    CHECK(std::abs(q(cplx(2.0, 0.0)) - (kPsi * kPsi)(cplx(2.0, 0.0))) < 1e-14);
    CHECK(code_of([&] { divide_linear(kPsi, 0.5); }) == ErrorCode::PoleCollision);
}

TEST_CASE("residue integrals against quadrature") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const RationalH2 f = random_rational(rng, false) * random_rational(rng, false);
        const cplx exact = symmetric_integral(f);
        CHECK(std::abs(exact - quad([&](double x) { return f(x); })) < 1e-8);
    }
    CHECK(code_of([] { symmetric_integral(RationalH2::pole(1.0)); }) == ErrorCode::PoleCollision);
}

TEST_CASE("c_f") {
    CHECK(fr_c(kPsi) == 1.0);
    CHECK(fr_c(kPsi * kPsi) == 0.0);
    CHECK(std::abs(fr_c(RationalH2::simple({cplx(0, 3), cplx(0, -1)}, {2.0, 1.0})) - 3.0) < 1e-15);
    // Deficiency elements: x u - c_u = +-i u for u = 1/(x -+ i).
    for (const double s : {1.0, -1.0}) {
        const RationalH2 u = RationalH2::pole(cplx(0.0, s));
        const auto [r, c] = times_linear(u, 0.0);
        CHECK(c == 1.0);
        CHECK(std::abs(r(0.3) - s * kI * u(0.3)) < 1e-15);
    }
}

TEST_CASE("Cauchy integrals") {
    CHECK(std::abs(fr_cauchy(kPsi, cplx(0.0, 2.0))) < 1e-15);
    CHECK(std::abs(fr_cauchy(kPsi, cplx(0.0, -2.0)) - 2.0 * kPi / 3.0) < 1e-14);
    CHECK(std::abs(fr_cauchy(cplx(0.0, 2.0) * kPsi, cplx(1.0, -2.0)) -
                   cplx(0.0, -2.0) * fr_cauchy(kPsi, cplx(1.0, -2.0))) < 1e-14);
    CHECK(code_of([] { fr_cauchy(kPsi, 1.0); }) == ErrorCode::RealLambda);
    CHECK(code_of([] { fr_cauchy(kPsi, cplx(0.0, 1.0)); }) == ErrorCode::PoleCollision);

    std::mt19937_64 rng(13);
    const RationalH2 f = random_rational(rng, false);
    const cplx l(0.4, -0.9);
    CHECK(std::abs(fr_cauchy(f, l) - quad([&](double x) { return std::conj(f(x)) / (x - l); })) < 1e-8);

    // Analytic in each half plane: Cauchy residual on a circle away from R and poles.
    const ContourSpec circle{cplx(0.3, 3.5), 0.5, 64};
    for (const auto& t : f.terms) REQUIRE(std::abs(std::conj(t.pole) - circle.center) > 1.0);
    CHECK(std::abs(contour_integral([&](cplx z) { return fr_cauchy(f, z); }, circle)) < 1e-9);
}

TEST_CASE("D(lambda)") {
    const cplx c(0.3, -0.8);
    FriedrichsModel m{c * kPsi, kPsi, 0.0};
    for (const cplx l : {cplx(0.0, -2.0), cplx(1.0, -0.5), cplx(-3.0, -1.0)}) {
        CHECK(std::abs(fr_D(m, l) - (1.0 + std::conj(c) * kPi / (kI - l))) < 1e-14);
    }
    FriedrichsModel zero{RationalH2{}, kPsi, 0.0};
    CHECK(fr_D(zero, cplx(0.2, 0.7)) == 1.0);

    std::mt19937_64 rng(17);
    FriedrichsModel g{random_rational(rng, false), random_rational(rng, false), 0.0};
    const cplx l(1.0, -1.0);
    const cplx q = 1.0 + quad([&](double x) { return g.psi(x) * std::conj(g.phi(x)) / (x - l); });
    CHECK(std::abs(fr_D(g, l) - q) < 1e-8);
}

TEST_CASE("Hardy data: M is blind to phi and psi") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        FriedrichsModel m{random_rational(rng, true), random_rational(rng, true), cplx(u(rng), u(rng))};
        cplx l(u(rng), u(rng));
        if (std::abs(l.imag()) < 0.05) l += cplx(0.0, 0.1);
        const cplx expected = 1.0 / ((l.imag() > 0 ? 1.0 : -1.0) * kPi * kI - m.B);
        CHECK(std::abs(fr_m(m, l) - expected) < 1e-9);
        ++checked;
    }
    CHECK(checked == 100);

    FriedrichsModel filled{kPsi, kPsi, kPi * kI};
    CHECK(code_of([&] { fr_m(filled, cplx(0.5, 1.0)); }) == ErrorCode::BracketZero);
    CHECK(std::abs(fr_m(filled, cplx(0.5, -1.0)) - 1.0 / (-2.0 * kPi * kI)) < 1e-15);
}

TEST_CASE("kernel elements confirm the M formula") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        FriedrichsModel m{random_rational(rng, false), random_rational(rng, false), cplx(0.3, -0.2)};
        const cplx l(0.7 - 0.2 * trial, trial % 2 ? 1.3 : -0.8);
        const RationalH2 f = fr_kernel_element(m, l, 1.0);
        CHECK(fr_eigen_residual(m, f, l) < 1e-10);
        const auto gam = fr_gamma(f);
        CHECK(std::abs(gam.gamma2 - 1.0) < 1e-12);
        CHECK(std::abs(1.0 / (gam.gamma1 - m.B) - fr_m(m, l)) < 1e-10);
        // Unique continuation: Gamma2 f = 0 forces f = 0.
        CHECK(fr_sample(fr_kernel_element(m, l, 0.0)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("Gamma maps") {
    // Gamma1 against quadrature of the regularized integrand.
    auto oracle = [](const RationalH2& f) {
        const cplx c = fr_c(f);
        return quad([&](double x) {
            const double s = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
            return f(x) - c * s / std::sqrt(x * x + 1.0);
        });
    };
    const auto g = fr_gamma(kPsi);
    CHECK(g.gamma2 == 1.0);
    CHECK(std::abs(g.gamma1 - oracle(kPsi)) < 1e-8);
    CHECK(std::abs(g.gamma1 - cplx(0.0, -kPi)) < 1e-14);

    const auto g2 = fr_gamma(kPsi * kPsi);
    CHECK(g2.gamma2 == 0.0);
    CHECK(std::abs(g2.gamma1 - oracle(kPsi * kPsi)) < 1e-8);

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const RationalH2 f = random_rational(rng, false, 4);
        CHECK(std::abs(fr_gamma(f).gamma1 - oracle(f)) < 1e-8);
    }
}

TEST_CASE("Green identity for the maximal pair") {
    std::mt19937_64 rng(31);
    FriedrichsModel m{random_rational(rng, false), random_rational(rng, false), 0.0};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const RationalH2 f = random_rational(rng, false, 4);
        const RationalH2 g = random_rational(rng, false, 4);
        worst = std::max(worst, std::abs(fr_green_residual(m, f, g)));
    }
    CHECK(worst < 1e-8);

    // The inner products themselves against quadrature for one pair.
    const RationalH2 f = random_rational(rng, false, 4);
    const RationalH2 g = random_rational(rng, false, 4);
    const RationalH2 af = fr_adjoint_rational(m, f, FriedrichsSide::Maximal);
    const cplx cf = fr_c(f);
    const cplx wf = inner(f, m.psi);
    const cplx q = quad([&](double x) { return (x * f(x) - cf + wf * m.phi(x)) * std::conj(g(x)); });
    CHECK(std::abs(inner(af, g) - q) < 1e-8);

    // Pointwise and rational forms agree.
    const CVector pts = fr_adjoint_apply(m, f, FriedrichsSide::Maximal);
    CHECK((pts - fr_sample(af)).cwiseAbs().maxCoeff() < 1e-10);

    // No corrections when c_f = 0 and f is orthogonal to phi.
    FriedrichsModel hardy{kPsi, kPsi, 0.0};
    const RationalH2 h = RationalH2::pole(cplx(0.5, 1.0), 2);
    CHECK(std::abs(inner(h, kPsi)) < 1e-15);
    const CVector ah = fr_adjoint_apply(hardy, h, FriedrichsSide::MaximalTilde);
    const RVector& x = fr_eval_grid();
    double dev = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) dev = std::max(dev, std::abs(ah(j) - x(j) * h(x(j))));
    CHECK(dev < 1e-15);
}

TEST_CASE("eigenvalue that is not a pole: lower case") {
    const auto rep = fr_example2(kPsi, cplx(0.0, -1.0), fr_default_probe());
    CHECK(std::abs(std::conj(rep.c) - cplx(0.0, -2.0 / kPi)) < 1e-14);
    CHECK(std::abs(rep.D_lambda0) < 1e-12);
    CHECK(std::abs(rep.u_phi + 1.0) < 1e-9);
    CHECK(std::abs(rep.gamma_u.gamma1) < 1e-9);
    CHECK(std::abs(rep.gamma_u.gamma2) < 1e-9);
    CHECK(rep.eigen_residual < 1e-7);
    CHECK(rep.m0_cauchy_residual < 1e-10);
    CHECK(std::abs(fr_m(rep.model, cplx(0.3, -0.5)) - 1.0 / (-kPi * kI)) < 1e-12);
    CHECK(code_of([&] { fr_m(rep.model, cplx(0.0, -1.0)); }) == ErrorCode::DZero);

    // A general lambda0 follows conj(c) = -(i - lambda0)/pi.
    const cplx l0(0.8, -0.4);
    const auto r2 = fr_example2(kPsi, l0, fr_default_probe());
    CHECK(std::abs(std::conj(r2.c) + (kI - l0) / kPi) < 1e-14);
    CHECK(r2.eigen_residual < 1e-7);
}

TEST_CASE("eigenvalue that is not a pole: upper case") {
    const auto rep = fr_example2(kPsi, cplx(0.0, 2.0), fr_default_probe());
    CHECK(std::abs(rep.D_lambda0) < 1e-12);
    CHECK(std::abs(rep.u_phi + 1.0) < 1e-9);
    CHECK(std::abs(rep.gamma_u.gamma2) < 1e-9);
    CHECK(rep.eigen_residual < 1e-7);
    CHECK(rep.m0_cauchy_residual < 1e-10);
    CHECK(std::abs(rep.obstruction - cplx(-1.0, 0.0)) < 1e-12);  // I0 = pi i/3, conj(c) = 3i/pi
    CHECK(rep.probe_residual >= 1e-2);
    CHECK(std::abs(rep.probe_residual - std::abs(rep.obstruction)) < 1e-12);

    // A right-hand side satisfying the solvability condition passes.
    const RationalH2 ok = RationalH2::pole(cplx(0.5, 1.0));
    CHECK(fr_resolvent_probe(rep.model, cplx(0.0, 2.0), 0.0, ok) < 1e-12);
    // Away from lambda0 the constrained equation is solvable for any data.
    CHECK(fr_resolvent_probe(rep.model, cplx(0.3, 1.0), 0.0, fr_default_probe()) < 1e-12);
}

TEST_CASE("embedded eigenvalue invisible to M") {
    const RationalH2 g = RationalH2::pole(cplx(-1.0, -1.0), 2);  // 1/(x + 1 + i)^2
    for (const double B : {0.0, 1.5}) {
        const auto rep = fr_example3(0.0, g, B);
        CHECK(std::abs(rep.base_integral + kPi / 2.0) < 1e-13);
        CHECK(std::abs(rep.psi_at_lambda0) < 1e-15);
        CHECK(std::abs(rep.norm_integral + 1.0) < 1e-12);
        CHECK(rep.u_norm > 0.1);
        CHECK(rep.eigen_residual < 1e-7);
        CHECK(std::abs(rep.jump - rep.expected_jump) < 1e-9);
        CHECK(std::abs(rep.m_plus - 1.0 / (kPi * kI - B)) < 1e-9);
        // Real B: M(conj lambda) = conj(M(lambda)).
        const cplx l(0.4, 0.9);
        CHECK(std::abs(fr_m(rep.model, std::conj(l)) - std::conj(fr_m(rep.model, l))) < 1e-10);
    }
    // The eigenfunction is s g.
    const auto rep = fr_example3(0.0, g);
    CHECK(std::abs(rep.u(cplx(0.7, 0.0)) - rep.s * g(cplx(0.7, 0.0))) < 1e-14);

    // For g = 1/(x + i)^2 and lambda0 = 0 the integral is zero: no real scaling exists.
    CHECK(code_of([] { fr_example3(0.0, RationalH2::pole(cplx(0.0, -1.0), 2)); }) ==
          ErrorCode::ConstructionFailed);
}

TEST_CASE("M scans across the real axis") {
    FriedrichsModel hardy{kPsi, 2.0 * kPsi, 0.0};
    const std::vector<double> xs{-2.0, -0.5, 0.0, 1.0, 3.0};
    const auto rows = fr_m_scan(hardy, xs, 1e-3);
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        REQUIRE(rows[2 * i].defined);
        REQUIRE(rows[2 * i + 1].defined);
        CHECK(std::abs(std::abs(rows[2 * i].m - rows[2 * i + 1].m) - 2.0 / kPi) < 1e-12);
        CHECK(rows[2 * i].lambda.imag() > 0.0);
    }
    hardy.B = 0.7;
    const double expected = std::abs(1.0 / (kPi * kI - 0.7) - 1.0 / (-kPi * kI - 0.7));
    for (const double x : xs) CHECK(std::abs(fr_jump(hardy, x, 1e-2) - expected) < 1e-12);

    // Generic data: the jump converges to a nonzero limit.
    FriedrichsModel generic{RationalH2::pole(cplx(0.5, 1.0)) + RationalH2::pole(cplx(0.0, -1.0)),
                            RationalH2::pole(cplx(-0.3, 0.8), 1, 0.5), 0.0};
    double prev = fr_jump(generic, 0.4, 1e-2);
    double last_change = 1.0;
    for (int j = 3; j <= 7; ++j) {
        const double now = fr_jump(generic, 0.4, std::pow(10.0, -j));
        last_change = std::abs(now - prev);
        prev = now;
    }
    CHECK(prev > 0.05);
    CHECK(last_change < 1e-5);
}
