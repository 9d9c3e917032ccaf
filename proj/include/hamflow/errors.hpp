#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hamflow {

/** Machine-readable failure kinds surfaced by the library. */
enum class ErrorCode {
    EmptyFactors,
    FactorBelowTwo,
    CoordOutOfRange,
    IdentityInS,
    NotSymmetric,
    NotGenerating,
    NotAnEdge,
    NotClosed,
    RepeatedVertex,
    NotSimple,
    GraphMismatch,
    RoleMismatch,
    NotExceptionalClass,
    SyntaxError,
    UnboundSymbol,
    NegativeExponent,
    NonIntegerDivision,
    SharpOnEmpty,
    SubscriptOutOfRange,
    StepNotInS,
    TruncatedEnumeration,
    DimensionMismatch,
    ColumnMismatch,
    NotInLattice,
    NotWeirdConfiguration,
    NotEssential,
    OddCycle,
    UnknownName,
    HypothesisViolated,
    MissingPath,
    MissingEdge,
    SurgeryNotSimple,
    ArithmeticOverflow,
    InvalidInput,
    InternalCheckFailed,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

/* Overflow-checked int64 arithmetic. Flow coefficients and weighted sums stay in
   machine words; any overflow is a hard error, never silent wraparound. */
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::ArithmeticOverflow, "int64 add");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::ArithmeticOverflow, "int64 sub");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::ArithmeticOverflow, "int64 mul");
    return r;
}

}  // namespace hamflow
