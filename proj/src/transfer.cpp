#include "fibspec/transfer.hpp"

#include "fibspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fibspec {

namespace {

constexpr int kMinOdeSteps = 16;

// One RK4 step of Y' = A(x) Y with A = [[0, c(x)], [1, 0]].
inline void rk4_step(SL2Matrix& y, double c0, double cm, double c1, double h) {
    auto rhs = [](const SL2Matrix& m, double c) {
        return SL2Matrix{c * m.a21, c * m.a22, m.a11, m.a12};
    };
    const SL2Matrix k1 = rhs(y, c0);
    const SL2Matrix k2 = rhs(y + k1.scaled(0.5 * h), cm);
    const SL2Matrix k3 = rhs(y + k2.scaled(0.5 * h), cm);
    const SL2Matrix k4 = rhs(y + k3.scaled(h), c1);
    y = y + (k1 + k2.scaled(2.0) + k3.scaled(2.0) + k4).scaled(h / 6.0);
}

SL2Matrix integrate_smooth(const PotentialPiece& piece, double lambda, double E, double a, double b,
                           int steps) {
    SL2Matrix y = SL2Matrix::identity();
    const double h = (b - a) / steps;
    auto coeff = [&](double x) { return lambda * evaluate_closed(piece, std::clamp(x, 0.0, piece.length())) - E; };
    double c0 = coeff(a);
    for (int i = 0; i < steps; ++i) {
        const double x0 = a + h * i;
        const double x1 = (i + 1 == steps) ? b : a + h * (i + 1);
        const double cm = coeff(0.5 * (x0 + x1));
        const double c1 = coeff(x1);
        rk4_step(y, c0, cm, c1, x1 - x0);
        c0 = c1;
    }
    return y;
}

// Segment pieces of [a, b] for a piecewise-constant profile.
std::vector<Segment> clip_segments(const std::vector<Segment>& segs, double a, double b) {
    std::vector<Segment> out;
    double start = 0.0;
    for (const auto& s : segs) {
        const double lo = std::max(start, a);
        const double hi = std::min(start + s.length, b);
        if (hi > lo) {
            out.push_back({s.value, hi - lo});
        }
        start += s.length;
    }
    return out;
}

void check_interval(const PotentialPiece& piece, double a, double b) {
    if (!(a >= 0.0 && b <= piece.length() && a <= b)) {
        throw Error(ErrorKind::Domain, "interval outside the piece");
    }
}

SL2Matrix finish(SL2Matrix y) {
    for (double v : {y.a11, y.a12, y.a21, y.a22}) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::IntegrationFailure, "transfer matrix overflowed during integration");
        }
    }
    if (det_defect(y) >= 1e-6) {
        throw Error(ErrorKind::StepCountTooSmall, "determinant drifted away from 1; increase steps");
    }
    // Renormalize only while the determinant is resolvable in double precision.
    const double scale = y.max_abs();
    if (scale * scale < 1e6) {
        y = y.scaled(1.0 / std::sqrt(y.det()));
    }
    return y;
}

} // namespace

double det_defect(const SL2Matrix& m) noexcept {
    const double s = m.max_abs();
    return std::abs(m.det() - 1.0) / (1.0 + s * s);
}

SL2Matrix transfer_constant(double value, double length, double E) {
    const double w2 = E - value;
    if (w2 > 0.0) {
        const double w = std::sqrt(w2);
        const double c = std::cos(w * length);
        const double s = std::sin(w * length);
        return {c, -w * s, s / w, c};
    }
    if (w2 < 0.0) {
        const double k = std::sqrt(-w2);
        const double c = std::cosh(k * length);
        const double s = std::sinh(k * length);
        return {c, k * s, s / k, c};
    }
    return {1.0, 0.0, length, 1.0};
}

SL2Matrix transfer_ode(const PotentialPiece& piece, double lambda, double E, int steps) {
    return transfer_ode(piece, lambda, E, 0.0, piece.length(), steps);
}

SL2Matrix transfer_ode(const PotentialPiece& piece, double lambda, double E, double a, double b,
                       int steps) {
    if (steps < kMinOdeSteps) {
        throw Error(ErrorKind::StepCountTooSmall, "at least 16 integration steps are required");
    }
    check_interval(piece, a, b);
    if (b == a) {
        return SL2Matrix::identity();
    }
    if (auto segs = piece.constant_segments(); segs && segs->size() > 1) {
        SL2Matrix total = SL2Matrix::identity();
        for (const auto& part : clip_segments(*segs, a, b)) {
            const int n = std::max(4, static_cast<int>(std::lround(steps * part.length / (b - a))));
            // A constant profile on this part; integrate it as a one-segment piece.
            const auto flat = PotentialPiece::constant(part.value);
            total = integrate_smooth(flat, lambda, E, 0.0, part.length, n) * total;
        }
        return finish(total);
    }
    return finish(integrate_smooth(piece, lambda, E, a, b, steps));
}

int resolved_steps(const PotentialPiece& piece, double lambda, double E, double a, double b,
                   double rel_tol) {
    // RK4 amplifies each step by e^z (1 + O(z^5/120)) for z = h * kappa, so over
    // kappa * len / z steps the relative error is ~ kappa * len * z^4 / 120.
    const double kappa = std::sqrt(lambda * piece.max_abs() + std::abs(E) + 1.0);
    const double phase = kappa * (b - a);
    const double z = std::min(0.1, std::pow(120.0 * rel_tol / std::max(phase, 1e-12), 0.25));
    const double steps = std::ceil(phase / z);
    return static_cast<int>(std::clamp(steps, double(kMinOdeSteps), 5e7));
}

SL2Matrix transfer_piece(const PotentialPiece& piece, double lambda, double E, double a, double b,
                         int min_steps) {
    check_interval(piece, a, b);
    if (auto segs = piece.constant_segments()) {
        SL2Matrix total = SL2Matrix::identity();
        for (const auto& part : clip_segments(*segs, a, b)) {
            total = transfer_constant(lambda * part.value, part.length, E) * total;
        }
        return total;
    }
    const int steps = std::max({min_steps, kMinOdeSteps, resolved_steps(piece, lambda, E, a, b)});
    return transfer_ode(piece, lambda, E, a, b, steps);
}

SL2Matrix monodromy(const CellPotential& cell, double E, int steps_per_unit) {
    const auto& word = cell.word();
    const bool uses0 = std::find(word.begin(), word.end(), 0) != word.end();
    const bool uses1 = std::find(word.begin(), word.end(), 1) != word.end();
    auto piece_transfer = [&](const PotentialPiece& p) {
        const int steps = static_cast<int>(std::ceil(steps_per_unit * p.length()));
        return transfer_piece(p, cell.coupling(), E, steps);
    };
    const SL2Matrix t0 = uses0 ? piece_transfer(cell.piece0()) : SL2Matrix::identity();
    const SL2Matrix t1 = uses1 ? piece_transfer(cell.piece1()) : SL2Matrix::identity();
    SL2Matrix m = SL2Matrix::identity();
    for (auto letter : word) {
        m = (letter == 0 ? t0 : t1) * m;
    }
    return m;
}

} // namespace fibspec
