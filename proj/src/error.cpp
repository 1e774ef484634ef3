#include "msi/error.hpp"

namespace msi {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidHurstPrime: return "InvalidHurstPrime";
        case ErrorCode::InvalidScale: return "InvalidScale";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::OffLattice: return "OffLattice";
        case ErrorCode::NonLatticeScale: return "NonLatticeScale";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::FactorizationFailure: return "FactorizationFailure";
        case ErrorCode::NonRealResidue: return "NonRealResidue";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::NegativeIndex: return "NegativeIndex";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::DegenerateInterval: return "DegenerateInterval";
        case ErrorCode::InvalidRatio: return "InvalidRatio";
        case ErrorCode::UnitScale: return "UnitScale";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::MissingRectangle: return "MissingRectangle";
        case ErrorCode::BackwardPrediction: return "BackwardPrediction";
        case ErrorCode::ZeroActual: return "ZeroActual";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::Ragged: return "Ragged";
        case ErrorCode::NonNumeric: return "NonNumeric";
        case ErrorCode::Negative: return "Negative";
        case ErrorCode::OutOfExtent: return "OutOfExtent";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace msi
