#include "weyl_scope/triple.hpp"

#include <cmath>
#include <random>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

CMatrix pseudo_inverse(const CMatrix& a) {
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
    return cod.pseudoInverse();
}

Eigen::Index numerical_rank(const CMatrix& a, double tol = 1e-10) {
    return orthonormal_basis(a, tol).cols();
}

CMatrix stack(const CMatrix& top, const CMatrix& bottom) {
    CMatrix out(top.rows() + bottom.rows(), top.cols());
    out << top, bottom;
    return out;
}

void check_shapes(const FiniteTriple& tr) {
    const auto n = tr.T.cols();
    const auto m = tr.T.rows();
    const auto h = tr.G1.rows();
    const auto k = tr.G2.rows();
    require(tr.E.rows() == m && tr.E.cols() == n, ErrorCode::DimensionMismatch,
            "E must be m x n like T");
    require(tr.Ttilde.size() == 0 || (tr.Ttilde.rows() == m && tr.Ttilde.cols() == n),
            ErrorCode::DimensionMismatch, "Ttilde must be m x n like T");
    for (const CMatrix* g : {&tr.G1, &tr.Gt2}) {
        require(g->rows() == h && g->cols() == n, ErrorCode::DimensionMismatch, "G1, Gt2 must be h x n");
    }
    for (const CMatrix* g : {&tr.G2, &tr.Gt1}) {
        require(g->rows() == k && g->cols() == n, ErrorCode::DimensionMismatch, "G2, Gt1 must be k x n");
    }
}

void check_surjective(const FiniteTriple& tr) {
    const auto hk = tr.boundary_dim() + tr.second_boundary_dim();
    if (hk == 0) return;
    if (numerical_rank(stack(tr.G1, tr.G2)) != hk) {
        throw Error(ErrorCode::RankDeficientBoundary, "(G1; G2) is not surjective");
    }
    if (numerical_rank(stack(tr.Gt1, tr.Gt2)) != hk) {
        throw Error(ErrorCode::RankDeficientBoundary, "(Gt1; Gt2) is not surjective");
    }
}

double scale_of(const CMatrix& a) { return std::max(1.0, max_abs(a)); }

}  // namespace

double FiniteTriple::green_defect() const {
    const CMatrix d = E.adjoint() * T - Ttilde.adjoint() * E - Gt2.adjoint() * G1 + Gt1.adjoint() * G2;
    return max_abs(d);
}

TriplePtr make_triple(const CMatrix& t, const CMatrix& e, const CMatrix& g1, const CMatrix& g2,
                      const CMatrix& gt1, const CMatrix& gt2, std::string id) {
    auto tr = std::make_shared<FiniteTriple>();
    tr->T = t;
    tr->E = e;
    tr->G1 = g1;
    tr->G2 = g2;
    tr->Gt1 = gt1;
    tr->Gt2 = gt2;
    tr->id = std::move(id);
    check_shapes(*tr);
    check_surjective(*tr);

    const CMatrix rhs = e.adjoint() * t - gt2.adjoint() * g1 + gt1.adjoint() * g2;
    const CMatrix e_pinv = pseudo_inverse(e);
    const CMatrix ttilde_adj = rhs * e_pinv;
    const CMatrix leftover = rhs - ttilde_adj * e;
    if (max_abs(leftover) > 1e-10 * scale_of(rhs)) {
        throw Error(ErrorCode::InvalidArgument,
                    "Green identity cannot be closed: E^*T - Gt2^*G1 + Gt1^*G2 does not vanish on ker E");
    }
    tr->Ttilde = ttilde_adj.adjoint();
    return tr;
}

TriplePtr make_square_triple(const CMatrix& t, const CMatrix& g1, const CMatrix& g2,
                             const CMatrix& gt1, const CMatrix& gt2, std::string id) {
    require(t.rows() == t.cols(), ErrorCode::DimensionMismatch, "square triple needs square T");
    return make_triple(t, CMatrix::Identity(t.rows(), t.cols()), g1, g2, gt1, gt2, std::move(id));
}

TriplePtr derive_triple(const CMatrix& t, const CMatrix& e, const CMatrix& g1, const CMatrix& g2,
                        std::string id) {
    const auto n = t.cols();
    const auto m = t.rows();
    const auto h = g1.rows();
    const auto k = g2.rows();
    require(e.rows() == m && e.cols() == n, ErrorCode::DimensionMismatch, "E must be m x n");
    require(g1.cols() == n && g2.cols() == n, ErrorCode::DimensionMismatch,
            "G1, G2 must act on the maximal domain");

    // Y [E; G1; G2] = E^* T with Y = [Ttilde^*, Gt2^*, -Gt1^*].
    CMatrix z(m + h + k, n);
    z << e, g1, g2;
    require(numerical_rank(z) == n, ErrorCode::RankDeficientBoundary,
            "ker E, ker G1 and ker G2 must intersect trivially");
    const CMatrix y = (e.adjoint() * t) * pseudo_inverse(z);

    auto tr = std::make_shared<FiniteTriple>();
    tr->T = t;
    tr->E = e;
    tr->G1 = g1;
    tr->G2 = g2;
    tr->Ttilde = y.leftCols(m).adjoint();
    tr->Gt2 = y.middleCols(m, h).adjoint();
    tr->Gt1 = -y.rightCols(k).adjoint();
    tr->id = std::move(id);
    check_shapes(*tr);
    check_surjective(*tr);
    return tr;
}

TriplePtr bordered_triple(const CMatrix& k, const CMatrix& t, const CMatrix& s, std::string id) {
    const auto m = k.rows();
    const auto h = t.cols();
    require(k.cols() == m && t.rows() == m && s.rows() == m && s.cols() == h,
            ErrorCode::DimensionMismatch, "bordered_triple: K m x m, t and s m x h");
    const auto n = m + h;
    CMatrix e = CMatrix::Zero(m, n);
    e.leftCols(m).setIdentity();
    CMatrix tt(m, n);
    tt << k, t;
    CMatrix ttilde(m, n);
    ttilde << k.adjoint(), s;
    CMatrix boundary = CMatrix::Zero(h, n);
    boundary.rightCols(h).setIdentity();
    CMatrix g2 = CMatrix::Zero(h, n);
    g2.leftCols(m) = s.adjoint();
    CMatrix gt2 = CMatrix::Zero(h, n);
    gt2.leftCols(m) = t.adjoint();

    auto tr = std::make_shared<FiniteTriple>();
    tr->T = tt;
    tr->Ttilde = ttilde;
    tr->E = e;
    tr->G1 = boundary;
    tr->G2 = g2;
    tr->Gt1 = boundary;
    tr->Gt2 = gt2;
    tr->id = std::move(id);
    check_shapes(*tr);
    check_surjective(*tr);
    return tr;
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = scale * cplx(re, im) / std::sqrt(2.0);
        }
    }
    return out;
}

CVector random_vector(Eigen::Index n, std::uint64_t seed) {
    return random_matrix(n, 1, seed).col(0);
}

TriplePtr random_triple(Eigen::Index m, Eigen::Index h, std::uint64_t seed, std::string id) {
    const auto n = m + h;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const auto base = bordered_triple(random_matrix(m, m, seed, scale), random_matrix(m, h, seed + 1, scale),
                                      random_matrix(m, h, seed + 2, scale));
    if (h == 0) {
        auto tr = std::make_shared<FiniteTriple>(*base);
        tr->id = std::move(id);
        return tr;
    }
    // Mix the boundary coordinates: (G1; G2) -> X (G1; G2) and
    // (Gt1; Gt2) -> (J X^{-1} J^{-1})^* (Gt1; Gt2) keeps the Green form.
    const CMatrix x = CMatrix::Identity(2 * h, 2 * h) + random_matrix(2 * h, 2 * h, seed + 3, 0.5);
    CMatrix j = CMatrix::Zero(2 * h, 2 * h);
    j.topRightCorner(h, h) = -CMatrix::Identity(h, h);
    j.bottomLeftCorner(h, h).setIdentity();
    const CMatrix gamma = x * stack(base->G1, base->G2);
    const CMatrix dual = (j * solve_linear(x, CMatrix(j.adjoint()))).adjoint() * stack(base->Gt1, base->Gt2);

    auto tr = std::make_shared<FiniteTriple>(*base);
    tr->G1 = gamma.topRows(h);
    tr->G2 = gamma.bottomRows(h);
    tr->Gt1 = dual.topRows(h);
    tr->Gt2 = dual.bottomRows(h);
    tr->id = std::move(id);
    check_surjective(*tr);
    return tr;
}

TriplePtr adjoint_triple(const FiniteTriple& tr) {
    auto out = std::make_shared<FiniteTriple>();
    out->T = tr.Ttilde;
    out->Ttilde = tr.T;
    out->E = tr.E;
    out->G1 = tr.Gt1;
    out->G2 = tr.Gt2;
    out->Gt1 = tr.G1;
    out->Gt2 = tr.G2;
    out->id = tr.id + ":adjoint";
    return out;
}

TriplePtr direct_sum_hidden(const TriplePtr& tr, const CMatrix& hidden) {
    require(hidden.rows() == hidden.cols(), ErrorCode::DimensionMismatch, "hidden block must be square");
    const auto q = hidden.rows();
    if (q == 0) return tr;
    const auto n = tr->state_dim();
    auto block = [&](const CMatrix& top, const CMatrix& corner) {
        CMatrix out = CMatrix::Zero(top.rows() + corner.rows(), top.cols() + corner.cols());
        out.topLeftCorner(top.rows(), top.cols()) = top;
        out.bottomRightCorner(corner.rows(), corner.cols()) = corner;
        return out;
    };
    auto widen = [&](const CMatrix& g) {
        CMatrix out = CMatrix::Zero(g.rows(), n + q);
        out.leftCols(n) = g;
        return out;
    };
    auto out = std::make_shared<FiniteTriple>();
    out->T = block(tr->T, hidden);
    out->Ttilde = block(tr->Ttilde, hidden.adjoint());
    out->E = block(tr->E, CMatrix::Identity(q, q));
    out->G1 = widen(tr->G1);
    out->G2 = widen(tr->G2);
    out->Gt1 = widen(tr->Gt1);
    out->Gt2 = widen(tr->Gt2);
    out->id = tr->id + "+hidden";
    return out;
}

double green_residual(const FiniteTriple& tr, const CVector& u, const CVector& v) {
    require(u.size() == tr.state_dim() && v.size() == tr.state_dim(), ErrorCode::DimensionMismatch,
            "green_residual: vectors must live in the maximal domain");
    const cplx lhs = (tr.E * v).dot(tr.T * u) - (tr.Ttilde * v).dot(tr.E * u);
    const cplx rhs = (tr.Gt2 * v).dot(tr.G1 * u) - (tr.Gt1 * v).dot(tr.G2 * u);
    return std::abs(lhs - rhs);
}

ExtensionHandle::ExtensionHandle(TriplePtr owner, CMatrix b) : owner_(std::move(owner)), b_(std::move(b)) {
    require(owner_ != nullptr, ErrorCode::InvalidArgument, "extension needs an owner triple");
    require(b_.rows() == owner_->boundary_dim() && b_.cols() == owner_->second_boundary_dim(),
            ErrorCode::DimensionMismatch, "B must be h x k");
}

CMatrix ExtensionHandle::boundary_condition() const { return owner_->G1 - b_ * owner_->G2; }

ExtensionHandle ExtensionHandle::adjoint() const {
    return ExtensionHandle(adjoint_triple(*owner_), b_.adjoint());
}

ExtensionMatrix extension_matrix(const ExtensionHandle& ext) {
    const auto n = ext.triple().state_dim();
    const CMatrix cond = ext.boundary_condition();
    CMatrix basis;
    if (cond.rows() == 0) {
        basis = CMatrix::Identity(n, n);
    } else {
        Eigen::JacobiSVD<CMatrix> svd(cond, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        Eigen::Index rank = 0;
        const double top = s.size() > 0 ? s(0) : 0.0;
        while (rank < s.size() && top > 0 && s(rank) > kRankTol * top) ++rank;
        basis = svd.matrixV().rightCols(n - rank);
    }
    return {basis, ext.triple().T * basis};
}

CMatrix operator_matrix(const ExtensionHandle& ext) {
    const auto em = extension_matrix(ext);
    const auto m = ext.triple().hilbert_dim();
    require(em.domain_basis.cols() == m, ErrorCode::InvalidArgument,
            "dim ker(G1 - B G2) differs from dim H: A_B is not an operator on H");
    const CMatrix ez = ext.triple().E * em.domain_basis;
    if (relative_min_singular_value(ez) < 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "E is not injective on ker(G1 - B G2)");
    }
    // A_B (E Z c) = T Z c
    return solve_linear(CMatrix(ez.transpose()), CMatrix(em.action.transpose())).transpose();
}

CMatrix constrained_system(const ExtensionHandle& ext, cplx lambda) {
    const auto& tr = ext.triple();
    CMatrix k(tr.hilbert_dim() + tr.boundary_dim(), tr.state_dim());
    k << tr.T - lambda * tr.E, ext.boundary_condition();
    return k;
}

bool in_spectrum(const ExtensionHandle& ext, cplx lambda, double tol) {
    const CMatrix k = constrained_system(ext, lambda);
    if (k.rows() != k.cols()) return true;
    return relative_min_singular_value(k) < tol;
}

namespace {

CMatrix solve_constrained(const ExtensionHandle& ext, cplx lambda, const CMatrix& rhs) {
    const CMatrix k = constrained_system(ext, lambda);
    require(k.rows() == k.cols(), ErrorCode::InvalidArgument,
            "extension is not an operator on H (n != m + h)");
    if (relative_min_singular_value(k) < 1e-10) {
        throw Error(ErrorCode::LambdaInSpectrum, "lambda lies in the spectrum of A_B");
    }
    try {
        return solve_linear(k, rhs);
    } catch (const Error&) {
        throw Error(ErrorCode::LambdaInSpectrum, "constrained system singular");
    }
}

}  // namespace

CMatrix resolvent_domain(const ExtensionHandle& ext, cplx lambda, const CMatrix& rhs) {
    const auto& tr = ext.triple();
    require(rhs.rows() == tr.hilbert_dim(), ErrorCode::DimensionMismatch, "resolvent rhs must be in H");
    CMatrix full = CMatrix::Zero(tr.hilbert_dim() + tr.boundary_dim(), rhs.cols());
    full.topRows(tr.hilbert_dim()) = rhs;
    return solve_constrained(ext, lambda, full);
}

CVector resolvent_domain(const ExtensionHandle& ext, cplx lambda, const CVector& rhs) {
    return resolvent_domain(ext, lambda, CMatrix(rhs)).col(0);
}

CVector resolvent_apply(const ExtensionHandle& ext, cplx lambda, const CVector& rhs) {
    return ext.triple().E * resolvent_domain(ext, lambda, rhs);
}

CMatrix resolvent_apply_matrix(const ExtensionHandle& ext, cplx lambda, const CMatrix& rhs) {
    return ext.triple().E * resolvent_domain(ext, lambda, rhs);
}

CMatrix resolvent_matrix(const ExtensionHandle& ext, cplx lambda) {
    const auto m = ext.triple().hilbert_dim();
    return ext.triple().E * resolvent_domain(ext, lambda, CMatrix(CMatrix::Identity(m, m)));
}

CVector solution_operator_from_lift(const ExtensionHandle& ext, cplx lambda, const CVector& w) {
    const auto& tr = ext.triple();
    require(w.size() == tr.state_dim(), ErrorCode::DimensionMismatch, "lift must be in D");
    const CVector defect = (tr.T - lambda * tr.E) * w;
    return w - resolvent_domain(ext, lambda, defect);
}

CVector solution_operator(const ExtensionHandle& ext, cplx lambda, const CVector& f) {
    const CMatrix cond = ext.boundary_condition();
    require(f.size() == cond.rows(), ErrorCode::DimensionMismatch, "boundary data has wrong length");
    const CVector w = pseudo_inverse(cond) * f;
    return solution_operator_from_lift(ext, lambda, w);
}

CMatrix solution_matrix(const ExtensionHandle& ext, cplx lambda) {
    const auto& tr = ext.triple();
    const auto h = tr.boundary_dim();
    CMatrix rhs = CMatrix::Zero(tr.hilbert_dim() + h, h);
    rhs.bottomRows(h).setIdentity();
    return solve_constrained(ext, lambda, rhs);
}

double hilbert_identity_residual(const ExtensionHandle& ext, cplx lambda, cplx lambda0,
                                 const CVector& f) {
    const CVector s = solution_operator(ext, lambda, f);
    const CVector s0 = solution_operator(ext, lambda0, f);
    const CVector rhs = s0 + (lambda - lambda0) * resolvent_domain(ext, lambda, CVector(ext.triple().E * s0));
    return (s - rhs).norm();
}

CMatrix m_function(const ExtensionHandle& ext, cplx lambda) {
    return ext.triple().G2 * solution_matrix(ext, lambda);
}

CMatrix m_via_resolvent(const ExtensionHandle& ext, cplx lambda, cplx lambda0) {
    const auto& tr = ext.triple();
    const CMatrix s0 = solution_matrix(ext, lambda0);
    if (lambda == lambda0) return tr.G2 * s0;
    const CMatrix shifted = s0 + (lambda - lambda0) * resolvent_domain(ext, lambda, CMatrix(tr.E * s0));
    return tr.G2 * shifted;
}

CMatrix krein_correction(const ExtensionHandle& ext_b, const ExtensionHandle& ext_c, cplx lambda) {
    require(ext_b.owner() == ext_c.owner(), ErrorCode::InvalidArgument,
            "Krein formula compares extensions of the same triple");
    const auto& tr = ext_b.triple();
    const auto m = tr.hilbert_dim();
    const auto h = tr.boundary_dim();
    const CMatrix rc = resolvent_domain(ext_c, lambda, CMatrix(CMatrix::Identity(m, m)));
    const CMatrix diff = ext_b.B() - ext_c.B();
    const CMatrix factor = CMatrix::Identity(h, h) + diff * m_function(ext_b, lambda);
    return solution_matrix(ext_c, lambda) * factor * (-diff) * tr.G2 * rc;
}

double krein_residual(const ExtensionHandle& ext_b, const ExtensionHandle& ext_c, cplx lambda) {
    const auto m = ext_b.triple().hilbert_dim();
    const CMatrix id = CMatrix::Identity(m, m);
    const CMatrix rb = resolvent_domain(ext_b, lambda, id);
    const CMatrix rc = resolvent_domain(ext_c, lambda, id);
    return operator_norm(rb - (rc - krein_correction(ext_b, ext_c, lambda)));
}

double operator_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace weyl
