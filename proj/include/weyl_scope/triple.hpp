#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "weyl_scope/numerics.hpp"

namespace weyl {

/// Finite-dimensional boundary triple for an adjoint pair.
///
/// The maximal domain is D = C^n and the Hilbert space is H = C^m with
/// n = m + h. Elements of D are seen in H through the embedding E (m x n).
/// T and Ttilde are the actions of the two maximal operators (m x n each);
/// G1 and Gt2 map into C^h, G2 and Gt1 into C^k. The Green identity holds as the
/// matrix identity
///
///     E^* T - Ttilde^* E = Gt2^* G1 - Gt1^* G2,
///
/// i.e. (T u, E v) - (E u, Ttilde v) = (G1 u, Gt2 v) - (G2 u, Gt1 v).
/// With E = I and h = 0 this is an ordinary matrix and its adjoint.
struct FiniteTriple {
    CMatrix T;
    CMatrix Ttilde;
    CMatrix E;
    CMatrix G1;
    CMatrix G2;
    CMatrix Gt1;
    CMatrix Gt2;
    std::string id = "triple";

    Eigen::Index state_dim() const { return T.cols(); }     // n
    Eigen::Index hilbert_dim() const { return T.rows(); }   // m
    Eigen::Index boundary_dim() const { return G1.rows(); } // h
    Eigen::Index second_boundary_dim() const { return G2.rows(); } // k

    /// Max entry of E^*T - Ttilde^*E - Gt2^*G1 + Gt1^*G2.
    double green_defect() const;
};

using TriplePtr = std::shared_ptr<const FiniteTriple>;

/// Builds a triple from the action T, embedding E and all four boundary
/// maps; Ttilde is solved from the Green identity. Throws
/// RankDeficientBoundary if (G1;G2) or (Gt1;Gt2) is not of full row rank,
/// InvalidArgument if the Green identity cannot be closed for this E.
TriplePtr make_triple(const CMatrix& t, const CMatrix& e, const CMatrix& g1, const CMatrix& g2,
                      const CMatrix& gt1, const CMatrix& gt2, std::string id = "triple");

/// Square form with E = I: Ttilde = (T - Gt2^*G1 + Gt1^*G2)^*.
TriplePtr make_square_triple(const CMatrix& t, const CMatrix& g1, const CMatrix& g2,
                             const CMatrix& gt1, const CMatrix& gt2, std::string id = "triple");

/// Builds a triple from T, E, G1, G2 alone: Ttilde, Gt1 and Gt2 are the
/// minimum-norm solution of the Green identity.
TriplePtr derive_triple(const CMatrix& t, const CMatrix& e, const CMatrix& g1, const CMatrix& g2,
                        std::string id = "triple");

/// Bordered-matrix triple on D = C^m x C^h:
///   T(a, b) = K a + t b,  Ttilde(a, b) = K^* a + s b,
///   G1 = Gt1 = b,  G2 = s^* a,  Gt2 = t^* a.
/// With K Hermitian and s = t the pair is symmetric and the maps coincide.
TriplePtr bordered_triple(const CMatrix& k, const CMatrix& t, const CMatrix& s,
                          std::string id = "bordered");

/// Random bordered-style triple with m interior and h boundary coordinates,
/// with the boundary coordinates mixed by a random invertible map.
TriplePtr random_triple(Eigen::Index m, Eigen::Index h, std::uint64_t seed,
                        std::string id = "random");

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, double scale = 1.0);
CVector random_vector(Eigen::Index n, std::uint64_t seed);

/// Adjoint triple: roles of (T, G1, G2) and (Ttilde, Gt1, Gt2) swapped.
TriplePtr adjoint_triple(const FiniteTriple& tr);

/// Block-diagonal sum with a hidden block that all boundary maps annihilate.
TriplePtr direct_sum_hidden(const TriplePtr& tr, const CMatrix& hidden);

double green_residual(const FiniteTriple& tr, const CVector& u, const CVector& v);

/// Boundary parameter B selecting A_B = Ttilde^*|ker(G1 - B G2).
class ExtensionHandle {
public:
    ExtensionHandle(TriplePtr owner, CMatrix b);

    const FiniteTriple& triple() const { return *owner_; }
    const TriplePtr& owner() const { return owner_; }
    const CMatrix& B() const { return b_; }

    /// G1 - B G2.
    CMatrix boundary_condition() const;

    /// Parameter B^* on the adjoint triple: the extension adjoint to this one.
    ExtensionHandle adjoint() const;

private:
    TriplePtr owner_;
    CMatrix b_;
};

struct ExtensionMatrix {
    CMatrix domain_basis;  // n x d, orthonormal basis of ker(G1 - B G2)
    CMatrix action;        // m x d, T applied to the basis
};

ExtensionMatrix extension_matrix(const ExtensionHandle& ext);

/// A_B as an m x m matrix on H: T Z (E Z)^{-1}. Throws InvalidArgument if
/// the extension is not an operator on H.
CMatrix operator_matrix(const ExtensionHandle& ext);

/// The n x n system [T - lambda E; G1 - B G2] whose invertibility is
/// equivalent to lambda lying in the resolvent set.
CMatrix constrained_system(const ExtensionHandle& ext, cplx lambda);

/// Spectrum test: relative smallest singular value below 1e-10.
bool in_spectrum(const ExtensionHandle& ext, cplx lambda, double tol = 1e-10);

/// Resolvent as a map H -> D: the x with (T - lambda E) x = rhs and
/// (G1 - B G2) x = 0. Throws LambdaInSpectrum.
CVector resolvent_domain(const ExtensionHandle& ext, cplx lambda, const CVector& rhs);
CMatrix resolvent_domain(const ExtensionHandle& ext, cplx lambda, const CMatrix& rhs);

/// (A_B - lambda)^{-1} rhs as an element of H (= E applied to the above).
CVector resolvent_apply(const ExtensionHandle& ext, cplx lambda, const CVector& rhs);

/// (A_B - lambda)^{-1} applied to each column of rhs (m x r).
CMatrix resolvent_apply_matrix(const ExtensionHandle& ext, cplx lambda, const CMatrix& rhs);

/// m x m matrix of (A_B - lambda)^{-1} on H.
CMatrix resolvent_matrix(const ExtensionHandle& ext, cplx lambda);

/// S_{lambda,B} f through the lift formula y = (I - R(lambda)(Ttilde^* - lambda)) w
/// with the minimum-norm lift w of f.
CVector solution_operator(const ExtensionHandle& ext, cplx lambda, const CVector& f);

/// Same formula for an explicit lift w (any w with (G1 - B G2) w = f).
CVector solution_operator_from_lift(const ExtensionHandle& ext, cplx lambda, const CVector& w);

/// n x h matrix whose columns are S_{lambda,B} e_j, from the direct solve
/// (T - lambda E) y = 0, (G1 - B G2) y = e_j.
CMatrix solution_matrix(const ExtensionHandle& ext, cplx lambda);

/// Norm of S_lambda f - S_lambda0 f - (lambda - lambda0) R(lambda) S_lambda0 f.
double hilbert_identity_residual(const ExtensionHandle& ext, cplx lambda, cplx lambda0,
                                 const CVector& f);

/// M_B(lambda) = G2 S_{lambda,B}, a k x h matrix.
CMatrix m_function(const ExtensionHandle& ext, cplx lambda);

/// M_B(lambda) = G2 (I + (lambda - lambda0) R(lambda)) S_{lambda0,B}.
CMatrix m_via_resolvent(const ExtensionHandle& ext, cplx lambda, cplx lambda0);

/// S_{lambda,C}(I + (B - C) M_B(lambda))(C - B) G2 (A_C - lambda)^{-1}, the
/// correction term between the two resolvents (n x m).
CMatrix krein_correction(const ExtensionHandle& ext_b, const ExtensionHandle& ext_c, cplx lambda);

/// Operator-norm residual of the Krein formula relating A_B and A_C.
double krein_residual(const ExtensionHandle& ext_b, const ExtensionHandle& ext_c, cplx lambda);

double operator_norm(const CMatrix& a);

}  // namespace weyl
