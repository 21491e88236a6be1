#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weyl_scope/triple.hpp"

namespace weyl {

/// Sample points for the detection spaces. All points must stay away from
/// the spectrum of A_B (the adjoint side uses their conjugates).
struct SpaceSamplingSpec {
    cplx mu0{0.0, 1.0};
    std::vector<cplx> delta_samples;
    std::vector<cplx> mu_samples;
};

enum class SpaceSide { S, T, SAdjoint, TAdjoint };

std::string_view to_string(SpaceSide side);

struct SubspaceBasis {
    CMatrix basis;  // orthonormal columns in H
    SpaceSide side = SpaceSide::S;
    SpaceSamplingSpec spec;

    Eigen::Index dim() const { return basis.cols(); }
};

/// Default sampling: 12 points on each of two circles around the origin with
/// radii 1.05 rho + 0.1 and 1.5 rho + 0.5 (rho the spectral radius of A_B),
/// mu0 on the imaginary axis beyond both.
SpaceSamplingSpec default_sampling(const ExtensionHandle& ext);

/// span{ E S_{mu,B} e_j : mu in mu_samples }.
SubspaceBasis build_T(const ExtensionHandle& ext, const SpaceSamplingSpec& spec);

/// span{ (A_B - delta)^{-1} E S_{mu0,B} e_j : delta in delta_samples }.
SubspaceBasis build_S(const ExtensionHandle& ext, const SpaceSamplingSpec& spec);

/// The same two constructions on the adjoint triple with parameter B^* and
/// conjugated samples. Returns (S-adjoint, T-adjoint).
std::pair<SubspaceBasis, SubspaceBasis> build_adjoint_spaces(const ExtensionHandle& ext,
                                                             const SpaceSamplingSpec& spec);

/// Extends the sample lists with points on a third circle until the rank of
/// both spans stays unchanged for `stable_runs` consecutive additions.
SpaceSamplingSpec saturate_sampling(const ExtensionHandle& ext, SpaceSamplingSpec spec,
                                    int stable_runs = 8, int max_extra = 256);

/// || (I - P) (A_B - mu)^{-1} P || for the orthogonal projection P onto space.
double invariance_residual(const SubspaceBasis& space, const ExtensionHandle& ext, cplx mu);

/// Q_t^* (A_B - lambda)^{-1} Q in the two orthonormal bases (dim St x dim S).
CMatrix bordered_resolvent(const ExtensionHandle& ext, cplx lambda, const SubspaceBasis& st,
                           const SubspaceBasis& s);

/// Norm of the contour integral of the bordered resolvent. Throws
/// ContourHitsSpectrum if an eigenvalue of A_B lies within 1e-4 of the circle.
double morera_residual(const ExtensionHandle& ext, const ContourSpec& contour, const SubspaceBasis& st,
                       const SubspaceBasis& s);

/// Norm of the contour integral of the full resolvent on H (same guard).
double full_resolvent_residual(const ExtensionHandle& ext, const ContourSpec& contour);

/// max over t of || i t (A_B - i t)^{-1} ||, t = 2^0 .. 2^(steps-1).
double resolvent_growth_bound(const ExtensionHandle& ext, int steps = 20);

/// Full record for one contour test.
struct DetectReport {
    std::string triple_id;
    ContourSpec contour;
    double residual_bordered = 0.0;
    double residual_full = 0.0;
    Eigen::Index dim_s = 0;
    Eigen::Index dim_t = 0;
    Eigen::Index dim_s_adjoint = 0;
    Eigen::Index dim_t_adjoint = 0;
};

DetectReport detect_report(const ExtensionHandle& ext, const ContourSpec& contour);

}  // namespace weyl
