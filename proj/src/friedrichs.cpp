#include "weyl_scope/friedrichs.hpp"

#include <cmath>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

constexpr double kTiny = 1e-12;

void require_nonreal(cplx lambda) {
    if (lambda.imag() == 0.0) throw Error(ErrorCode::RealLambda, "lambda must be nonreal");
}

double sign_im(cplx lambda) { return lambda.imag() > 0.0 ? 1.0 : -1.0; }

void check_collision(const RationalH2& f, cplx lambda) {
    for (const auto& t : f.terms) {
        if (std::abs(t.pole - lambda) <= kTiny * (1.0 + std::abs(lambda))) {
            throw Error(ErrorCode::PoleCollision, "lambda coincides with a pole of the integrand");
        }
    }
}

/// int f / (x - lambda) dx; a pole at lambda is harmless here.
cplx cauchy_plain(const RationalH2& f, cplx lambda) {
    require_nonreal(lambda);
    return symmetric_integral(f * RationalH2::pole(lambda));
}

}  // namespace

cplx fr_cauchy(const RationalH2& f, cplx lambda) {
    require_nonreal(lambda);
    const RationalH2 g = conj(f);
    check_collision(g, lambda);
    return cauchy_plain(g, lambda);
}

cplx fr_D(const FriedrichsModel& model, cplx lambda) {
    return 1.0 + cauchy_plain(model.psi * conj(model.phi), lambda);
}

cplx fr_bracket(const FriedrichsModel& model, cplx lambda) {
    const cplx d = fr_D(model, lambda);
    if (std::abs(d) < kTiny) throw Error(ErrorCode::DZero, "D(lambda) vanishes");
    const cplx a = cauchy_plain(model.psi, lambda);
    const cplx b = cauchy_plain(conj(model.phi), lambda);
    // Gamma1 f / Gamma2 f on ker(Atilde^* - lambda), from the kernel element.
    return sign_im(lambda) * kPi * kI - a * b / d - model.B;
}

cplx fr_m(const FriedrichsModel& model, cplx lambda) {
    const cplx br = fr_bracket(model, lambda);
    if (std::abs(br) < kTiny) throw Error(ErrorCode::BracketZero, "lambda is a pole of M");
    return 1.0 / br;
}

cplx fr_c(const RationalH2& f) { return residue_sum(f); }

GammaValues fr_gamma(const RationalH2& f) {
    // The regularizer sign(x)(x^2+1)^{-1/2} is odd, so Gamma1 is the
    // symmetric-limit integral of f itself.
    return {symmetric_integral(f), fr_c(f)};
}

RationalH2 fr_adjoint_rational(const FriedrichsModel& model, const RationalH2& f, FriedrichsSide side) {
    const RationalH2 xf = times_linear(f, 0.0).first;  // x f - c_f
    if (side == FriedrichsSide::Maximal) return xf + inner(f, model.psi) * model.phi;
    return xf + inner(f, model.phi) * model.psi;
}

const RVector& fr_eval_grid() {
    static const RVector grid = [] {
        RVector g(2001);
        for (int j = 0; j <= 2000; ++j) g(j) = 50.0 * std::cos(kPi * j / 2000.0);
        g(1000) = 0.0;
        return g;
    }();
    return grid;
}

CVector fr_sample(const RationalH2& f) {
    const RVector& g = fr_eval_grid();
    CVector out(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) out(j) = f(g(j));
    return out;
}

CVector fr_adjoint_apply(const FriedrichsModel& model, const RationalH2& f, FriedrichsSide side) {
    const RVector& g = fr_eval_grid();
    const cplx cf = fr_c(f);
    const bool maximal = side == FriedrichsSide::Maximal;
    const cplx weight = inner(f, maximal ? model.psi : model.phi);
    const RationalH2& tail = maximal ? model.phi : model.psi;
    CVector out(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) {
        out(j) = g(j) * f(g(j)) - cf + weight * tail(g(j));
    }
    return out;
}

cplx fr_green_residual(const FriedrichsModel& model, const RationalH2& f, const RationalH2& g) {
    const auto gf = fr_gamma(f);
    const auto gg = fr_gamma(g);
    const cplx lhs = inner(fr_adjoint_rational(model, f, FriedrichsSide::Maximal), g) -
                     inner(f, fr_adjoint_rational(model, g, FriedrichsSide::MaximalTilde));
    return lhs - (gf.gamma1 * std::conj(gg.gamma2) - gf.gamma2 * std::conj(gg.gamma1));
}

RationalH2 fr_kernel_element(const FriedrichsModel& model, cplx lambda, cplx gamma2) {
    const cplx d = fr_D(model, lambda);
    if (std::abs(d) < kTiny) throw Error(ErrorCode::DZero, "D(lambda) vanishes");
    const RationalH2 r = RationalH2::pole(lambda);
    const cplx k = cauchy_plain(conj(model.phi), lambda);
    return gamma2 * (r - (k / d) * (model.psi * r));
}

double fr_eigen_residual(const FriedrichsModel& model, const RationalH2& f, cplx lambda) {
    const CVector af = fr_adjoint_apply(model, f, FriedrichsSide::MaximalTilde);
    return (af - lambda * fr_sample(f)).cwiseAbs().maxCoeff();
}

std::vector<MScanRow> fr_m_scan(const FriedrichsModel& model, const std::vector<double>& xs, double eps) {
    require(eps > 0.0, ErrorCode::InvalidArgument, "scan offset must be positive");
    std::vector<MScanRow> rows(2 * xs.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        MScanRow row;
        row.lambda = cplx(xs[i / 2], i % 2 == 0 ? eps : -eps);
        const cplx d = fr_D(model, row.lambda);
        row.abs_D = std::abs(d);
        if (row.abs_D >= kTiny) {
            const cplx br = fr_bracket(model, row.lambda);
            row.bracket_abs = std::abs(br);
            if (row.bracket_abs >= kTiny) {
                row.m = 1.0 / br;
                row.defined = true;
            }
        }
        rows[i] = row;
    });
    return rows;
}

double fr_jump(const FriedrichsModel& model, double x, double eps) {
    return std::abs(fr_m(model, cplx(x, eps)) - fr_m(model, cplx(x, -eps)));
}

RationalH2 fr_default_probe() { return RationalH2::pole(cplx(0.0, -1.0)); }

double fr_resolvent_probe(const FriedrichsModel& model, cplx lambda, cplx C, const RationalH2& f) {
    // u = (f + c_u - p psi)/(x - lambda) with p = <u, phi>; consistency of p
    // and the boundary condition give two linear equations in (c_u, p).
    require_nonreal(lambda);
    const RationalH2 r = RationalH2::pole(lambda);
    const cplx d = fr_D(model, lambda);
    const cplx k = cauchy_plain(conj(model.phi), lambda);
    const cplx psi_int = cauchy_plain(model.psi, lambda);
    const cplx f_int = cauchy_plain(f, lambda);
    const cplx f_phi = inner(f * r, model.phi);
    Eigen::Matrix2cd a;
    a << -k, d, sign_im(lambda) * kPi * kI - C, -psi_int;
    Eigen::Vector2cd b(f_phi, -f_int);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(kTiny);
    const Eigen::Vector2cd z = svd.solve(b);
    return (a * z - b).norm();
}

Example2Report fr_example2(const RationalH2& psi, cplx lambda0, const RationalH2& probe) {
    require_nonreal(lambda0);
    require(psi.is_hardy_plus() && !psi.empty(), ErrorCode::InvalidArgument, "psi must be a nonzero H2+ function");
    Example2Report rep;
    rep.lambda0 = lambda0;
    rep.lower = lambda0.imag() < 0.0;
    const cplx base = cauchy_plain(psi * conj(psi), lambda0);
    if (std::abs(base) < kTiny) {
        throw Error(ErrorCode::ConstructionFailed, "int |psi|^2/(x - lambda0) vanishes; D cannot be zeroed");
    }
    rep.c = std::conj(-1.0 / base);
    rep.model.psi = psi;
    rep.model.phi = rep.c * psi;
    rep.model.B = 0.0;
    rep.D_lambda0 = fr_D(rep.model, lambda0);
    rep.u = divide_linear(psi, lambda0);
    rep.u_phi = inner(rep.u, rep.model.phi);
    rep.gamma_u = fr_gamma(rep.u);
    rep.eigen_residual = fr_eigen_residual(rep.model, rep.u, lambda0);
    const ContourSpec circle{lambda0, 0.5 * std::abs(lambda0.imag()), 64};
    const FriedrichsModel& model = rep.model;
    rep.m0_cauchy_residual = std::abs(contour_integral([&](cplx l) { return fr_m(model, l); }, circle));
    if (!rep.lower) {
        rep.obstruction = inner(probe * RationalH2::pole(lambda0), rep.model.phi);
        rep.probe_residual = fr_resolvent_probe(rep.model, lambda0, 0.0, probe);
    }
    return rep;
}

Example3Report fr_example3(double lambda0, const RationalH2& g, double B, double eps) {
    require(g.is_hardy_plus() && !g.empty(), ErrorCode::InvalidArgument, "g must be a nonzero H2+ function");
    require(std::abs(fr_c(g)) <= kTiny * std::max(1.0, g.scale()), ErrorCode::InvalidArgument,
            "g must decay like x^-2 so that (x - lambda0) g is square integrable");
    Example3Report rep;
    rep.lambda0 = lambda0;
    const RationalH2 weighted = times_linear(g * conj(g), lambda0).first;
    rep.base_integral = symmetric_integral(weighted).real();
    if (!(rep.base_integral < -kTiny)) {
        throw Error(ErrorCode::ConstructionFailed,
                    "int (x - lambda0)|g|^2 dx is not negative: no real scaling gives -1");
    }
    rep.s = std::sqrt(-1.0 / rep.base_integral);
    const RationalH2 psi = rep.s * times_linear(g, lambda0).first;
    rep.model.phi = psi;
    rep.model.psi = psi;
    rep.model.B = B;
    rep.psi_at_lambda0 = psi(lambda0);
    rep.u = divide_linear(psi, lambda0);
    rep.u_norm = std::sqrt(inner(rep.u, rep.u).real());
    rep.eigen_residual = fr_eigen_residual(rep.model, rep.u, lambda0);
    rep.norm_integral = symmetric_integral(divide_linear(psi * conj(psi), lambda0));
    rep.m_plus = fr_m(rep.model, cplx(lambda0, eps));
    rep.m_minus = fr_m(rep.model, cplx(lambda0, -eps));
    rep.jump = rep.m_plus - rep.m_minus;
    rep.expected_jump = 1.0 / (kPi * kI - B) - 1.0 / (-kPi * kI - B);
    return rep;
}

}  // namespace weyl
