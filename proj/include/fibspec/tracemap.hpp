#pragma once

#include "fibspec/potentials.hpp"

#include <optional>

namespace fibspec {

/// A point (x, y, z) = (x_{k+1}, x_k, x_{k-1}) of the trace-map orbit.
struct TraceTriple {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool finite() const noexcept;
    double max_abs() const noexcept;
};

/// (x, y, z) -> (2xy - z, x, y)
constexpr TraceTriple trace_map_step(const TraceTriple& t) noexcept {
    return {2.0 * t.x * t.y - t.z, t.x, t.y};
}

/// Fricke-Vogt invariant x^2 + y^2 + z^2 - 2xyz - 1.
constexpr double fricke_vogt(const TraceTriple& t) noexcept {
    return t.x * t.x + t.y * t.y + t.z * t.z - 2.0 * t.x * t.y * t.z - 1.0;
}

/// gamma(E) = (x_2, x_1, x_0): half-traces of M_0 (piece0 cell), M_1 (piece1
/// cell) and M_2 = M_0 M_1.
TraceTriple curve_of_initial_conditions(const PotentialPiece& piece0, const PotentialPiece& piece1,
                                        double E, double lambda, int steps);

enum class OrbitStatus { Bounded, Escaped };

struct OrbitVerdict {
    OrbitStatus status = OrbitStatus::Bounded;
    int escape_index = 0;
    double max_abs = 0.0;
};

inline constexpr int kDefaultEscapeIterations = 60;
inline constexpr double kDefaultBlowup = 1e10;

/// Follows T^k(t) for k < max_iter. Escaped at the first k where the point is
/// non-finite, or its two leading coordinates exceed 1 in modulus while the
/// leading one exceeds blowup.
OrbitVerdict escape_test(TraceTriple t, int max_iter = kDefaultEscapeIterations,
                         double blowup = kDefaultBlowup);

/// 2 log(1 + sqrt 2) / log I for I >= (1 + sqrt 2)^2, where the large-I
/// asymptotics of the dimension apply; nullopt below.
std::optional<double> dimension_upper_proxy(double invariant_value);

struct InvariantRecord {
    double E = 0.0;
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double invariant_value = 0.0;
    std::optional<double> dim_proxy;
    bool candidate_spectrum = false;
};

} // namespace fibspec
