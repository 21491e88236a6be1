#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weyl {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    SingularMatrix,
    NoConvergence,
    EvaluationFailed,
    SlowDecay,
    RankDeficientBoundary,
    LambdaInSpectrum,
    SampleInSpectrum,
    ContourHitsSpectrum,
    UpperHalfPlane,
    BadMu,
    CoefficientSingular,
    ToleranceNotMet,
    AtEigenvalue,
    ContourHitsEssran,
    GridHitsEssranW,
    RealLambda,
    PoleCollision,
    DZero,
    BracketZero,
    ConstructionFailed,
    ConfigInvalid,
    ModelUnknown,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI, Python layer) can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

}  // namespace weyl
