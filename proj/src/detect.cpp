#include "weyl_scope/detect.hpp"

#include <algorithm>
#include <cmath>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

constexpr double kSampleGap = 1e-6;
constexpr double kContourGap = 1e-4;

std::vector<cplx> spectrum_of(const ExtensionHandle& ext) {
    return eigenvalues(operator_matrix(ext));
}

void check_samples(const std::vector<cplx>& spectrum, const std::vector<cplx>& samples,
                   const ExtensionHandle& ext) {
    for (const cplx z : samples) {
        bool bad = in_spectrum(ext, z);
        for (const cplx ev : spectrum) bad = bad || std::abs(ev - z) <= kSampleGap;
        if (bad) throw Error(ErrorCode::SampleInSpectrum, "sample point too close to the spectrum");
    }
}

CMatrix normalized(CMatrix cols) {
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        const double nrm = cols.col(j).norm();
        if (nrm > 0.0) cols.col(j) /= nrm;
    }
    return cols;
}

CMatrix t_columns(const ExtensionHandle& ext, const std::vector<cplx>& mus) {
    const auto& tr = ext.triple();
    const auto h = tr.boundary_dim();
    CMatrix cols(tr.hilbert_dim(), static_cast<Eigen::Index>(mus.size()) * h);
    for (std::size_t i = 0; i < mus.size(); ++i) {
        cols.middleCols(static_cast<Eigen::Index>(i) * h, h) = tr.E * solution_matrix(ext, mus[i]);
    }
    return normalized(cols);
}

CMatrix s_columns(const ExtensionHandle& ext, cplx mu0, const std::vector<cplx>& deltas) {
    const auto& tr = ext.triple();
    const auto h = tr.boundary_dim();
    const CMatrix base = tr.E * solution_matrix(ext, mu0);
    CMatrix cols(tr.hilbert_dim(), static_cast<Eigen::Index>(deltas.size()) * h);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        cols.middleCols(static_cast<Eigen::Index>(i) * h, h) =
            tr.E * resolvent_domain(ext, deltas[i], base);
    }
    return normalized(cols);
}

std::vector<cplx> conjugated(const std::vector<cplx>& v) {
    std::vector<cplx> out;
    out.reserve(v.size());
    for (const cplx z : v) out.push_back(std::conj(z));
    return out;
}

double spectral_radius(const std::vector<cplx>& spectrum) {
    double rho = 0.0;
    for (const cplx ev : spectrum) rho = std::max(rho, std::abs(ev));
    return rho;
}

void check_contour(const ExtensionHandle& ext, const ContourSpec& contour) {
    contour.validate();
    for (const cplx ev : spectrum_of(ext)) {
        if (std::abs(std::abs(ev - contour.center) - contour.radius) <= kContourGap) {
            throw Error(ErrorCode::ContourHitsSpectrum, "eigenvalue of A_B on the contour");
        }
    }
}

std::vector<cplx> circle(double radius, int count, double phase) {
    std::vector<cplx> pts;
    for (int j = 0; j < count; ++j) {
        pts.push_back(std::polar(radius, 2.0 * kPi * (j + phase) / count));
    }
    return pts;
}

}  // namespace

std::string_view to_string(SpaceSide side) {
    switch (side) {
        case SpaceSide::S: return "S";
        case SpaceSide::T: return "T";
        case SpaceSide::SAdjoint: return "S-adjoint";
        case SpaceSide::TAdjoint: return "T-adjoint";
    }
    return "?";
}

SpaceSamplingSpec default_sampling(const ExtensionHandle& ext) {
    const double rho = spectral_radius(spectrum_of(ext));
    SpaceSamplingSpec spec;
    for (const auto& pts : {circle(1.05 * rho + 0.1, 12, 0.25), circle(1.5 * rho + 0.5, 12, 0.5)}) {
        spec.delta_samples.insert(spec.delta_samples.end(), pts.begin(), pts.end());
    }
    spec.mu_samples = spec.delta_samples;
    spec.mu0 = cplx(0.0, 2.0 * rho + 1.0);
    return spec;
}

SubspaceBasis build_T(const ExtensionHandle& ext, const SpaceSamplingSpec& spec) {
    check_samples(spectrum_of(ext), spec.mu_samples, ext);
    return {orthonormal_basis(t_columns(ext, spec.mu_samples)), SpaceSide::T, spec};
}

SubspaceBasis build_S(const ExtensionHandle& ext, const SpaceSamplingSpec& spec) {
    const auto spectrum = spectrum_of(ext);
    check_samples(spectrum, spec.delta_samples, ext);
    check_samples(spectrum, {spec.mu0}, ext);
    return {orthonormal_basis(s_columns(ext, spec.mu0, spec.delta_samples)), SpaceSide::S, spec};
}

std::pair<SubspaceBasis, SubspaceBasis> build_adjoint_spaces(const ExtensionHandle& ext,
                                                             const SpaceSamplingSpec& spec) {
    const ExtensionHandle adj = ext.adjoint();
    SpaceSamplingSpec conj_spec;
    conj_spec.mu0 = std::conj(spec.mu0);
    conj_spec.delta_samples = conjugated(spec.delta_samples);
    conj_spec.mu_samples = conjugated(spec.mu_samples);
    SubspaceBasis s = build_S(adj, conj_spec);
    SubspaceBasis t = build_T(adj, conj_spec);
    s.side = SpaceSide::SAdjoint;
    t.side = SpaceSide::TAdjoint;
    s.spec = spec;
    t.spec = spec;
    return {s, t};
}

SpaceSamplingSpec saturate_sampling(const ExtensionHandle& ext, SpaceSamplingSpec spec, int stable_runs,
                                    int max_extra) {
    const double rho = spectral_radius(spectrum_of(ext));
    // Points on a circle of radius 1.25 rho + 0.3 in van der Corput order.
    auto extra_point = [&](int k) {
        double x = 0.0, f = 0.5;
        for (int v = k + 1; v > 0; v /= 2, f /= 2) x += f * (v & 1);
        return std::polar(1.25 * rho + 0.3, 2.0 * kPi * x);
    };
    auto ranks = [&] {
        return std::make_pair(build_S(ext, spec).dim(), build_T(ext, spec).dim());
    };
    auto last = ranks();
    int stable = 0;
    for (int k = 0; k < max_extra && stable < stable_runs; ++k) {
        const cplx z = extra_point(k);
        spec.delta_samples.push_back(z);
        spec.mu_samples.push_back(z);
        const auto now = ranks();
        stable = now == last ? stable + 1 : 0;
        last = now;
    }
    if (stable < stable_runs) {
        throw Error(ErrorCode::NoConvergence, "span ranks did not saturate");
    }
    return spec;
}

double invariance_residual(const SubspaceBasis& space, const ExtensionHandle& ext, cplx mu) {
    const auto& q = space.basis;
    if (q.cols() == 0) return 0.0;
    const CMatrix rq = resolvent_apply_matrix(ext, mu, q);
    return operator_norm(rq - q * (q.adjoint() * rq));
}

CMatrix bordered_resolvent(const ExtensionHandle& ext, cplx lambda, const SubspaceBasis& st,
                           const SubspaceBasis& s) {
    if (st.dim() == 0 || s.dim() == 0) return CMatrix(st.dim(), s.dim());
    return st.basis.adjoint() * resolvent_apply_matrix(ext, lambda, s.basis);
}

double morera_residual(const ExtensionHandle& ext, const ContourSpec& contour, const SubspaceBasis& st,
                       const SubspaceBasis& s) {
    check_contour(ext, contour);
    if (st.dim() == 0 || s.dim() == 0) return 0.0;
    return operator_norm(
        contour_integral([&](cplx l) { return bordered_resolvent(ext, l, st, s); }, contour));
}

double full_resolvent_residual(const ExtensionHandle& ext, const ContourSpec& contour) {
    check_contour(ext, contour);
    return operator_norm(contour_integral([&](cplx l) { return resolvent_matrix(ext, l); }, contour));
}

double resolvent_growth_bound(const ExtensionHandle& ext, int steps) {
    double worst = 0.0;
    for (int j = 0; j < steps; ++j) {
        const cplx z(0.0, std::ldexp(1.0, j));
        worst = std::max(worst, std::abs(z) * operator_norm(resolvent_matrix(ext, z)));
    }
    return worst;
}

DetectReport detect_report(const ExtensionHandle& ext, const ContourSpec& contour) {
    const SpaceSamplingSpec spec = saturate_sampling(ext, default_sampling(ext));
    const SubspaceBasis s = build_S(ext, spec);
    const SubspaceBasis t = build_T(ext, spec);
    const auto [sa, ta] = build_adjoint_spaces(ext, spec);
    DetectReport rep;
    rep.triple_id = ext.triple().id;
    rep.contour = contour;
    rep.residual_bordered = morera_residual(ext, contour, sa, s);
    rep.residual_full = full_resolvent_residual(ext, contour);
    rep.dim_s = s.dim();
    rep.dim_t = t.dim();
    rep.dim_s_adjoint = sa.dim();
    rep.dim_t_adjoint = ta.dim();
    return rep;
}

}  // namespace weyl
