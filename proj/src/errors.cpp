#include "weyl_scope/errors.hpp"

namespace weyl {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::EvaluationFailed: return "EvaluationFailed";
        case ErrorCode::SlowDecay: return "SlowDecay";
        case ErrorCode::RankDeficientBoundary: return "RankDeficientBoundary";
        case ErrorCode::LambdaInSpectrum: return "LambdaInSpectrum";
        case ErrorCode::SampleInSpectrum: return "SampleInSpectrum";
        case ErrorCode::ContourHitsSpectrum: return "ContourHitsSpectrum";
        case ErrorCode::UpperHalfPlane: return "UpperHalfPlane";
        case ErrorCode::BadMu: return "BadMu";
        case ErrorCode::CoefficientSingular: return "CoefficientSingular";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::AtEigenvalue: return "AtEigenvalue";
        case ErrorCode::ContourHitsEssran: return "ContourHitsEssran";
        case ErrorCode::GridHitsEssranW: return "GridHitsEssranW";
        case ErrorCode::RealLambda: return "RealLambda";
        case ErrorCode::PoleCollision: return "PoleCollision";
        case ErrorCode::DZero: return "DZero";
        case ErrorCode::BracketZero: return "BracketZero";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::ModelUnknown: return "ModelUnknown";
    }
    return "Unknown";
}

}  // namespace weyl
