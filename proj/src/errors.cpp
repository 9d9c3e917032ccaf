#include "hamflow/errors.hpp"

namespace hamflow {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyFactors: return "EmptyFactors";
        case ErrorCode::FactorBelowTwo: return "FactorBelowTwo";
        case ErrorCode::CoordOutOfRange: return "CoordOutOfRange";
        case ErrorCode::IdentityInS: return "IdentityInS";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotGenerating: return "NotGenerating";
        case ErrorCode::NotAnEdge: return "NotAnEdge";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::RepeatedVertex: return "RepeatedVertex";
        case ErrorCode::NotSimple: return "NotSimple";
        case ErrorCode::GraphMismatch: return "GraphMismatch";
        case ErrorCode::RoleMismatch: return "RoleMismatch";
        case ErrorCode::NotExceptionalClass: return "NotExceptionalClass";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnboundSymbol: return "UnboundSymbol";
        case ErrorCode::NegativeExponent: return "NegativeExponent";
        case ErrorCode::NonIntegerDivision: return "NonIntegerDivision";
        case ErrorCode::SharpOnEmpty: return "SharpOnEmpty";
        case ErrorCode::SubscriptOutOfRange: return "SubscriptOutOfRange";
        case ErrorCode::StepNotInS: return "StepNotInS";
        case ErrorCode::TruncatedEnumeration: return "TruncatedEnumeration";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ColumnMismatch: return "ColumnMismatch";
        case ErrorCode::NotInLattice: return "NotInLattice";
        case ErrorCode::NotWeirdConfiguration: return "NotWeirdConfiguration";
        case ErrorCode::NotEssential: return "NotEssential";
        case ErrorCode::OddCycle: return "OddCycle";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::MissingPath: return "MissingPath";
        case ErrorCode::MissingEdge: return "MissingEdge";
        case ErrorCode::SurgeryNotSimple: return "SurgeryNotSimple";
        case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
    }
    return "UnknownError";
}

}  // namespace hamflow
