#include "sl2q/error.hpp"

namespace sl2q {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::BackendMismatch: return "BackendMismatch";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::NonInvertible: return "NonInvertible";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::ParseError: return "ParseError";
        case Errc::NotNegative: return "NotNegative";
        case Errc::RankOutOfRange: return "RankOutOfRange";
        case Errc::SupportViolation: return "SupportViolation";
        case Errc::InRadical: return "InRadical";
        case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case Errc::InternalTableInconsistency: return "InternalTableInconsistency";
        case Errc::UnsupportedKeys: return "UnsupportedKeys";
        case Errc::NotARoot: return "NotARoot";
        case Errc::InvalidKey: return "InvalidKey";
        case Errc::KindViolation: return "KindViolation";
        case Errc::ZeroExponent: return "ZeroExponent";
        case Errc::NonDecidableLambda: return "NonDecidableLambda";
        case Errc::NotWeightVector: return "NotWeightVector";
        case Errc::HypothesisUnmet: return "HypothesisUnmet";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::Overflow: return "Overflow";
    }
    return "Unknown";
}

}  // namespace sl2q
