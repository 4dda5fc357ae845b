#include "uavloc/geometry.hpp"

#include <cmath>
#include <sstream>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

constexpr double kDegToRad = 3.141592653589793 / 180.0;

}  // namespace

double euclidean_distance(const Position3D& a, const Position3D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double beta_from_alpha(double alpha_deg) {
    if (!(alpha_deg >= 0.0 && alpha_deg <= 90.0)) {
        std::ostringstream msg;
        msg << "alpha must be in [0, 90] degrees, got " << alpha_deg;
        throw Error(ErrorCode::AngleOutOfRange, msg.str());
    }
    return 90.0 - alpha_deg;
}

SlantGeometry slant_geometry_from_alpha(double gd_m, double h_m, double alpha_deg) {
    const double beta = beta_from_alpha(alpha_deg);
    if (!(gd_m >= 0.0) || !(h_m >= 0.0)) {
        throw Error(ErrorCode::NegativeInput, "ground distance and height must be >= 0");
    }
    return SlantGeometry{gd_m, h_m, alpha_deg, beta};
}

double slant_distance(double gd_m, double h_m, double beta_deg) {
    if (!(gd_m >= 0.0) || !(h_m >= 0.0)) {
        throw Error(ErrorCode::NegativeInput, "ground distance and height must be >= 0");
    }
    if (!(beta_deg > 0.0 && beta_deg <= 180.0)) {
        std::ostringstream msg;
        msg << "beta must be in (0, 180] degrees, got " << beta_deg;
        throw Error(ErrorCode::AngleOutOfRange, msg.str());
    }
    const double squared =
        gd_m * gd_m + h_m * h_m - 2.0 * gd_m * h_m * std::cos(beta_deg * kDegToRad);
    // Rounding can push an exactly-degenerate triangle a hair below zero.
    return std::sqrt(std::max(squared, 0.0));
}

double distance_error_pct(double estimated_m, double real_m) {
    if (!(real_m > 0.0)) {
        throw Error(ErrorCode::ZeroReference, "reference distance must be > 0");
    }
    return 100.0 * std::abs(estimated_m - real_m) / real_m;
}

}  // namespace uavloc
