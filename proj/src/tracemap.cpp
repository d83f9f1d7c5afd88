#include "fibspec/tracemap.hpp"

#include "fibspec/error.hpp"
#include "fibspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fibspec {

bool TraceTriple::finite() const noexcept {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double TraceTriple::max_abs() const noexcept {
    return std::max({std::abs(x), std::abs(y), std::abs(z)});
}

TraceTriple curve_of_initial_conditions(const PotentialPiece& piece0, const PotentialPiece& piece1,
                                        double E, double lambda, int steps) {
    const SL2Matrix m0 = transfer_piece(piece0, lambda, E, steps);
    const SL2Matrix m1 = transfer_piece(piece1, lambda, E, steps);
    return {half_trace(m0 * m1), half_trace(m1), half_trace(m0)};
}

OrbitVerdict escape_test(TraceTriple t, int max_iter, double blowup) {
    if (max_iter < 1 || !(blowup > 2.0)) {
        throw Error(ErrorKind::InvalidArgument, "escape_test needs max_iter >= 1 and blowup > 2");
    }
    OrbitVerdict verdict;
    for (int k = 0; k < max_iter; ++k) {
        if (!t.finite()) {
            verdict.status = OrbitStatus::Escaped;
            verdict.escape_index = k;
            return verdict;
        }
        verdict.max_abs = std::max(verdict.max_abs, t.max_abs());
        if (std::abs(t.x) > 1.0 && std::abs(t.y) > 1.0 && std::abs(t.x) > blowup) {
            verdict.status = OrbitStatus::Escaped;
            verdict.escape_index = k;
            return verdict;
        }
        t = trace_map_step(t);
    }
    return verdict;
}

std::optional<double> dimension_upper_proxy(double invariant_value) {
    const double base = std::log(1.0 + std::numbers::sqrt2);
    const double threshold = (1.0 + std::numbers::sqrt2) * (1.0 + std::numbers::sqrt2);
    if (!(invariant_value >= threshold) || !std::isfinite(invariant_value)) {
        return std::nullopt;
    }
    return 2.0 * base / std::log(invariant_value);
}

} // namespace fibspec
