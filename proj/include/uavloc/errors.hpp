#pragma once

#include <stdexcept>
#include <string>

namespace uavloc {

/// Typed failure conditions raised by the library. Every throwing operation
/// documents which of these it can raise.
enum class ErrorCode {
    // pathloss
    EmptyWindow,
    MixedSource,
    NonPositiveDistance,
    DegenerateModel,
    InsufficientPoints,
    ZeroVarianceInDistance,
    TooFewSamples,
    // geometry
    AngleOutOfRange,
    NegativeInput,
    ZeroReference,
    // trilateration
    TooFewStations,
    DuplicateStation,
    SingularSystem,
    ImaginaryHeight,
    // remote_id
    IdNotEncodable,
    MalformedPayload,
    // station_net
    MalformedLine,
    UnknownStation,
    // simulator
    InvalidScenario,
};

/// Stable snake_case token for an error code, used in logs and fix records.
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when sphere intersection puts the target below the station plane:
/// the height radicand went negative. Carries the radicand for diagnostics.
class ImaginaryHeightError : public Error {
public:
    explicit ImaginaryHeightError(double radicand);

    double radicand() const noexcept { return radicand_; }

private:
    double radicand_;
};

/// Input file could not be read or parsed (distinct from domain errors so the
/// CLI can map it to a usage exit code).
class FileError : public std::runtime_error {
public:
    explicit FileError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace uavloc
