#pragma once

#include "fibspec/potentials.hpp"
#include "fibspec/sl2.hpp"

namespace fibspec {

/// Closed-form transfer matrix of -y'' + value y = E y over an interval of the
/// given length (oscillatory, hyperbolic or linear branch by the sign of E - value).
SL2Matrix transfer_constant(double value, double length, double E);

/// Fixed-step classical RK4 integration of d/dx (y', y) = [[0, lambda f - E], [1, 0]] (y', y)
/// over [0, piece.length()], both columns at once. Piecewise-constant pieces are
/// integrated segment by segment so no step straddles a jump. The result is
/// rescaled by 1/sqrt(det) when the determinant is numerically meaningful.
/// Throws ErrorKind::StepCountTooSmall when det drifts by 1e-6 (relative to ||T||^2) or more.
SL2Matrix transfer_ode(const PotentialPiece& piece, double lambda, double E, int steps);

/// Same integrator over a sub-interval [a, b] of the piece.
SL2Matrix transfer_ode(const PotentialPiece& piece, double lambda, double E, double a, double b,
                       int steps);

/// Number of RK4 steps over [a, b] that keeps the relative propagation error
/// near rel_tol given the local frequency sqrt(|lambda f - E|).
int resolved_steps(const PotentialPiece& piece, double lambda, double E, double a, double b,
                   double rel_tol = 1e-10);

/// Transfer matrix of lambda * piece over [a, b]: closed forms for constant
/// segments, otherwise RK4 with max(min_steps, resolved_steps) steps.
SL2Matrix transfer_piece(const PotentialPiece& piece, double lambda, double E, double a, double b,
                         int min_steps);

inline SL2Matrix transfer_piece(const PotentialPiece& piece, double lambda, double E, int min_steps) {
    return transfer_piece(piece, lambda, E, 0.0, piece.length(), min_steps);
}

/// Period monodromy: per-letter transfer matrices multiplied with later
/// intervals on the left. steps_per_unit sets the minimum RK4 resolution.
SL2Matrix monodromy(const CellPotential& cell, double E, int steps_per_unit);

inline double half_trace(const SL2Matrix& m) noexcept { return 0.5 * m.trace(); }

/// |det - 1| scaled by 1 + ||m||_max^2, the attainable floating-point accuracy
/// for a unimodular matrix with entries of that size.
double det_defect(const SL2Matrix& m) noexcept;

} // namespace fibspec
