#include "uavloc/trilateration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

// Relative pivot threshold for declaring the normal matrix rank-deficient.
constexpr double kSingularRelTol = 1e-12;
// Height radicands within this relative band of zero are clamped (and the fix
// marked ambiguous) instead of failing: the target sits in the station plane.
constexpr double kRadicandRelTol = 1e-9;

// Solves the symmetric n x n system M x = v in place by Gaussian elimination
// with partial pivoting. Returns false when a pivot collapses.
template <std::size_t N>
bool solve_dense(std::array<std::array<double, N>, N>& m, std::array<double, N>& v,
                 std::array<double, N>& x) {
    double max_abs = 0.0;
    for (const auto& row : m)
        for (double e : row) max_abs = std::max(max_abs, std::abs(e));
    if (max_abs == 0.0) return false;

    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) <= kSingularRelTol * max_abs) return false;
        std::swap(m[col], m[pivot]);
        std::swap(v[col], v[pivot]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < N; ++c) m[r][c] -= factor * m[col][c];
            v[r] -= factor * v[col];
        }
    }
    for (std::size_t i = N; i-- > 0;) {
        double acc = v[i];
        for (std::size_t c = i + 1; c < N; ++c) acc -= m[i][c] * x[c];
        x[i] = acc / m[i][i];
    }
    return true;
}

double squared_norm(const Position3D& p) { return p.x * p.x + p.y * p.y + p.z * p.z; }

double geometry_scale(const std::vector<SphereConstraint>& constraints) {
    double lo_x = constraints[0].station.x, hi_x = lo_x;
    double lo_y = constraints[0].station.y, hi_y = lo_y;
    double lo_z = constraints[0].station.z, hi_z = lo_z;
    for (const auto& c : constraints) {
        lo_x = std::min(lo_x, c.station.x);
        hi_x = std::max(hi_x, c.station.x);
        lo_y = std::min(lo_y, c.station.y);
        hi_y = std::max(hi_y, c.station.y);
        lo_z = std::min(lo_z, c.station.z);
        hi_z = std::max(hi_z, c.station.z);
    }
    const double dx = hi_x - lo_x, dy = hi_y - lo_y, dz = hi_z - lo_z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

const char* to_string(SolutionPath path) {
    switch (path) {
        case SolutionPath::Full3D: return "full-3D";
        case SolutionPath::CoplanarReduced: return "coplanar-reduced";
    }
    return "unknown";
}

LinearSystem build_linear_system(const std::vector<SphereConstraint>& constraints) {
    if (constraints.size() < kMinStations) {
        std::ostringstream msg;
        msg << "need at least " << kMinStations << " stations for a 3-D fix, got "
            << constraints.size();
        throw Error(ErrorCode::TooFewStations, msg.str());
    }
    for (const auto& c : constraints) {
        if (!(c.radius_m >= 0.0) || !std::isfinite(c.radius_m)) {
            throw Error(ErrorCode::NegativeInput,
                        "sphere radius must be finite and >= 0 for station " + c.station_id);
        }
        if (!std::isfinite(c.station.x) || !std::isfinite(c.station.y) ||
            !std::isfinite(c.station.z)) {
            throw Error(ErrorCode::NegativeInput,
                        "station " + c.station_id + " has non-finite coordinates");
        }
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        for (std::size_t j = i + 1; j < constraints.size(); ++j) {
            if (euclidean_distance(constraints[i].station, constraints[j].station) < 1e-9) {
                throw Error(ErrorCode::DuplicateStation,
                            "stations " + constraints[i].station_id + " and " +
                                constraints[j].station_id + " share one position");
            }
        }
    }

    const auto& ref = constraints.back();
    const double ref_term = ref.radius_m * ref.radius_m - squared_norm(ref.station);

    LinearSystem system;
    system.coefficients.reserve(constraints.size() - 1);
    system.rhs.reserve(constraints.size() - 1);
    for (std::size_t i = 0; i + 1 < constraints.size(); ++i) {
        const auto& c = constraints[i];
        system.coefficients.push_back({2.0 * (ref.station.x - c.station.x),
                                       2.0 * (ref.station.y - c.station.y),
                                       2.0 * (ref.station.z - c.station.z)});
        system.rhs.push_back(c.radius_m * c.radius_m - squared_norm(c.station) - ref_term);
    }
    return system;
}

Position3D solve_full(const LinearSystem& system) {
    std::array<std::array<double, 3>, 3> normal{};
    std::array<double, 3> rhs{};
    for (std::size_t row = 0; row < system.coefficients.size(); ++row) {
        const auto& a = system.coefficients[row];
        const double b = system.rhs[row];
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) normal[i][j] += a[i] * a[j];
            rhs[i] += a[i] * b;
        }
    }
    std::array<double, 3> w{};
    if (!solve_dense(normal, rhs, w)) {
        throw Error(ErrorCode::SingularSystem,
                    "normal matrix is rank-deficient; station geometry does not "
                    "determine all three coordinates");
    }
    return Position3D{w[0], w[1], w[2]};
}

CoplanarSolution solve_coplanar(const LinearSystem& system, const SphereConstraint& reference) {
    std::array<std::array<double, 2>, 2> normal{};
    std::array<double, 2> rhs{};
    for (std::size_t row = 0; row < system.coefficients.size(); ++row) {
        const auto& a = system.coefficients[row];
        const double b = system.rhs[row];
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) normal[i][j] += a[i] * a[j];
            rhs[i] += a[i] * b;
        }
    }
    std::array<double, 2> w{};
    if (!solve_dense(normal, rhs, w)) {
        throw Error(ErrorCode::SingularSystem,
                    "reduced normal matrix is rank-deficient; stations are collinear");
    }

    const double dx = w[0] - reference.station.x;
    const double dy = w[1] - reference.station.y;
    double radicand = reference.radius_m * reference.radius_m - dx * dx - dy * dy;

    const double zero_band =
        kRadicandRelTol * std::max(1.0, reference.radius_m * reference.radius_m);
    CoplanarSolution solution;
    solution.radicand = radicand;
    if (radicand < -zero_band) {
        throw ImaginaryHeightError(radicand);
    }
    solution.height_ambiguous = radicand <= zero_band;
    radicand = std::max(radicand, 0.0);
    solution.position = Position3D{w[0], w[1], reference.station.z + std::sqrt(radicand)};
    return solution;
}

double rms_range_residual(const Position3D& position,
                          const std::vector<SphereConstraint>& constraints) {
    if (constraints.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& c : constraints) {
        const double mismatch = euclidean_distance(position, c.station) - c.radius_m;
        acc += mismatch * mismatch;
    }
    return std::sqrt(acc / static_cast<double>(constraints.size()));
}

LocateOutcome locate(const std::vector<SphereConstraint>& constraints) {
    LinearSystem system = build_linear_system(constraints);

    double z_lo = constraints[0].station.z, z_hi = z_lo;
    for (const auto& c : constraints) {
        z_lo = std::min(z_lo, c.station.z);
        z_hi = std::max(z_hi, c.station.z);
    }
    const double scale = std::max(geometry_scale(constraints), 1.0);
    const bool equal_heights = (z_hi - z_lo) <= 1e-6 * scale;

    LocateOutcome outcome;
    outcome.stations_used.reserve(constraints.size());
    for (const auto& c : constraints) outcome.stations_used.push_back(c.station_id);

    const auto& reference = constraints.back();
    if (equal_heights) {
        const CoplanarSolution solution = solve_coplanar(system, reference);
        outcome.position = solution.position;
        outcome.path = SolutionPath::CoplanarReduced;
        outcome.height_ambiguous = solution.height_ambiguous;
    } else {
        try {
            outcome.position = solve_full(system);
            outcome.path = SolutionPath::Full3D;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularSystem) throw;
            // Heights differ slightly yet the z column still collapsed; retry
            // on the reduced path. Any other rank loss is real degeneracy.
            double z_col = 0.0, all_cols = 0.0;
            for (const auto& row : system.coefficients) {
                z_col = std::max(z_col, std::abs(row[2]));
                all_cols = std::max({all_cols, std::abs(row[0]), std::abs(row[1])});
            }
            if (all_cols == 0.0 || z_col > 1e-6 * all_cols) throw;
            const CoplanarSolution solution = solve_coplanar(system, reference);
            outcome.position = solution.position;
            outcome.path = SolutionPath::CoplanarReduced;
            outcome.height_ambiguous = solution.height_ambiguous;
        }
    }
    outcome.residual_norm_m = rms_range_residual(outcome.position, constraints);
    return outcome;
}

}  // namespace uavloc
