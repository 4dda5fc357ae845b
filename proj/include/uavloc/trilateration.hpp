#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

/// A 3-D position fix needs range constraints from at least this many
/// stations.
inline constexpr std::size_t kMinStations = 4;

/// The target lies on a sphere of this radius around the station.
struct SphereConstraint {
    Position3D station;
    double radius_m = 0.0;
    std::string station_id;
};

/// Linearized sphere-difference system A w = b. One row per non-reference
/// constraint, three coefficient columns (x, y, z).
struct LinearSystem {
    std::vector<std::array<double, 3>> coefficients;
    std::vector<double> rhs;
};

enum class SolutionPath {
    Full3D,           // all three columns solved at once
    CoplanarReduced,  // x, y from the reduced system, z from one sphere
};

const char* to_string(SolutionPath path);

struct LocateOutcome {
    Position3D position;
    double residual_norm_m = 0.0;  // RMS range mismatch over all constraints
    SolutionPath path = SolutionPath::Full3D;
    std::vector<std::string> stations_used;
    // Coplanar path only: the height radicand was ~0, so the fix sits in the
    // station plane and above/below cannot be distinguished.
    bool height_ambiguous = false;
};

/// Subtracts the last constraint's sphere equation from every other one,
/// producing the linear system. The last constraint in input order is the
/// reference. Throws TooFewStations, DuplicateStation.
LinearSystem build_linear_system(const std::vector<SphereConstraint>& constraints);

/// Closed-form least squares w = (A^T A)^-1 A^T b. Throws SingularSystem when
/// A^T A is rank-deficient.
Position3D solve_full(const LinearSystem& system);

struct CoplanarSolution {
    Position3D position;
    double radicand = 0.0;
    bool height_ambiguous = false;
};

/// Equal-height path: drops the z column, solves the reduced system for
/// (x, y), then recovers z from the reference sphere as
/// z = z_ref + sqrt(r_ref^2 - (x - x_ref)^2 - (y - y_ref)^2), taking the
/// above-plane root. Throws SingularSystem, ImaginaryHeightError.
CoplanarSolution solve_coplanar(const LinearSystem& system, const SphereConstraint& reference);

/// Builds the system and dispatches: the coplanar path when all station
/// heights agree (or the z column vanishes), the full solve otherwise.
/// Throws TooFewStations, DuplicateStation, SingularSystem,
/// ImaginaryHeightError.
LocateOutcome locate(const std::vector<SphereConstraint>& constraints);

/// Root-mean-square of | |w - station_i| - r_i | over all constraints.
double rms_range_residual(const Position3D& position,
                          const std::vector<SphereConstraint>& constraints);

}  // namespace uavloc
