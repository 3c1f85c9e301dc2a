#pragma once

#include <stdexcept>
#include <string>

namespace wright {

enum class Errc {
    InvalidInterval,
    DivisionByZeroInterval,
    ArgumentReductionOverflow,
    Overflow,
    DimensionMismatch,
    NotVerifiablyInvertible,
    NumericallySingular,
    ContractionFailed,
    RadiusTooLarge,
    DerivativeVanishes,
    SeedNotInRightHalfPlane,
    EnclosuresOverlap,
    CensusCountMismatch,
    UnstableCountNotTwo,
    ResonantIndex,
    ThresholdViolated,
    NoNegativePoint,
    MismatchedGuess,
    AlphaOutOfRange,
    InvalidConfig,
    IoError,
    ParseError,
};

const char* errc_name(Errc c) noexcept;

/// Every failure in the library is reported through this one type; the code
/// says what went wrong, the message says where.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

    Errc code() const noexcept { return code_; }
    // the message without the code prefix, for re-wrapping with more context
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

}  // namespace wright
