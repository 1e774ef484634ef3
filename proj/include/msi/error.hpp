#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msi {

enum class ErrorCode {
    InvalidHurstPrime,
    InvalidScale,
    LengthMismatch,
    NonFinite,
    OffLattice,
    NonLatticeScale,
    OutOfDomain,
    FactorizationFailure,
    NonRealResidue,
    ZeroVariance,
    NegativeIndex,
    TooShort,
    DegenerateInterval,
    InvalidRatio,
    UnitScale,
    ZeroDenominator,
    MissingRectangle,
    BackwardPrediction,
    ZeroActual,
    EmptySet,
    Ragged,
    NonNumeric,
    Negative,
    OutOfExtent,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace msi
