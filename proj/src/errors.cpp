#include "uavloc/errors.hpp"

#include <sstream>

namespace uavloc {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyWindow: return "empty_window";
        case ErrorCode::MixedSource: return "mixed_source";
        case ErrorCode::NonPositiveDistance: return "non_positive_distance";
        case ErrorCode::DegenerateModel: return "degenerate_model";
        case ErrorCode::InsufficientPoints: return "insufficient_points";
        case ErrorCode::ZeroVarianceInDistance: return "zero_variance_in_distance";
        case ErrorCode::TooFewSamples: return "too_few_samples";
        case ErrorCode::AngleOutOfRange: return "angle_out_of_range";
        case ErrorCode::NegativeInput: return "negative_input";
        case ErrorCode::ZeroReference: return "zero_reference";
        case ErrorCode::TooFewStations: return "too_few_stations";
        case ErrorCode::DuplicateStation: return "duplicate_station";
        case ErrorCode::SingularSystem: return "singular_system";
        case ErrorCode::ImaginaryHeight: return "imaginary_height";
        case ErrorCode::IdNotEncodable: return "id_not_encodable";
        case ErrorCode::MalformedPayload: return "malformed_payload";
        case ErrorCode::MalformedLine: return "malformed_line";
        case ErrorCode::UnknownStation: return "unknown_station";
        case ErrorCode::InvalidScenario: return "invalid_scenario";
    }
    return "unknown_error";
}

namespace {

std::string imaginary_height_message(double radicand) {
    std::ostringstream msg;
    msg << "spheres do not intersect above the station plane (height radicand "
        << radicand << " m^2)";
    return msg.str();
}

}  // namespace

ImaginaryHeightError::ImaginaryHeightError(double radicand)
    : Error(ErrorCode::ImaginaryHeight, imaginary_height_message(radicand)),
      radicand_(radicand) {}

}  // namespace uavloc
