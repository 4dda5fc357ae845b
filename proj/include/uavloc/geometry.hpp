#pragma once

namespace uavloc {

/// Point in the local east-north-up Cartesian frame, meters.
struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double euclidean_distance(const Position3D& a, const Position3D& b);

/// Measured triangle between a ground station (GS), the ground point (GP)
/// directly under the UAV, and the UAV itself. alpha is the GP-GS angle,
/// beta the UAV-GS angle; the two always sum to 90 degrees.
struct SlantGeometry {
    double gd_m = 0.0;
    double h_m = 0.0;
    double alpha_deg = 0.0;
    double beta_deg = 0.0;
};

/// Builds the triangle record from the field-measured alpha.
SlantGeometry slant_geometry_from_alpha(double gd_m, double h_m, double alpha_deg);

/// beta = 90 - alpha. Throws AngleOutOfRange unless 0 <= alpha <= 90.
double beta_from_alpha(double alpha_deg);

/// Law-of-cosines slant distance from ground distance, height and the
/// UAV-GS angle in degrees: sqrt(gd^2 + h^2 - 2*gd*h*cos(beta)).
/// Throws NegativeInput for negative lengths, AngleOutOfRange unless
/// 0 < beta <= 180.
double slant_distance(double gd_m, double h_m, double beta_deg);

/// 100 * |estimated - real| / real. Throws ZeroReference when real <= 0.
double distance_error_pct(double estimated_m, double real_m);

}  // namespace uavloc
