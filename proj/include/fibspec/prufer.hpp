#pragma once

#include "fibspec/potentials.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace fibspec {

/// Polar form of (y', y) = r (cos theta, sin theta) with L = log r. theta is
/// continuous along the trajectory (never reduced mod pi).
struct PruferState {
    double theta = 0.0;
    double logr = 0.0;
    double x = 0.0;
};

/// Right-hand side (d theta/dx, dL/dx) at potential value q = lambda phi(x):
///   theta' = 1 - (q - E + 1) sin^2 theta,  L' = cos theta sin theta (q - E + 1).
std::pair<double, double> prufer_derivatives(double theta, double q, double E);

/// Integrates the Prüfer system for lambda * piece over [a, b] (default: the whole
/// piece) from theta(a) = theta0, L(a) = 0, and returns the state at b.
///
/// The step advances the linear flow of (y', y) with RK4 and reads off the change
/// of log |(y', y)| and the signed rotation angle of the step. This is the same
/// trajectory as the polar system but stays stable where the angle equation is
/// stiff (lambda phi >> 1).
PruferState integrate_prufer(const PotentialPiece& piece, double lambda, double E, double theta0,
                             int steps);
PruferState integrate_prufer(const PotentialPiece& piece, double lambda, double E, double theta0,
                             int steps, double a, double b);

/// All states x_0 = a, ..., x_steps = b of the same integration.
std::vector<PruferState> prufer_path(const PotentialPiece& piece, double lambda, double E, double theta0,
                                     int steps, double a, double b);

/// max(base, ceil(40 sqrt(lambda max|phi| + |E| + 1) (b - a))): the rotation
/// and growth rates scale like sqrt(lambda).
int prufer_steps(const PotentialPiece& piece, double lambda, double E, double a, double b, int base = 256);

struct ExponentFit {
    double exponent = 0.0;   // slope of log(value) against log(lambda)
    double intercept = 0.0;
    double r_squared = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    // Linear fit value = log_slope * log(lambda) + log_intercept, used for the
    // logarithmically growing quantities.
    std::optional<double> log_slope;
    std::optional<double> log_intercept;
    std::optional<double> log_r_squared;
};

/// Ordinary least squares of log(values) on log(lambdas). Needs >= 2 points and
/// positive values (ErrorKind::FitDomain otherwise).
ExponentFit fit_power_law(const std::vector<double>& lambdas, const std::vector<double>& values);

/// Logarithmically spaced grid from lo to hi with the given points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

struct PruferSample {
    double lambda = 0.0;
    double delta_theta = 0.0;
    double delta_L = 0.0;
    double max_excursion_L = 0.0; // max over x of |L(x) - L(lo)|
    int steps = 0;
};

struct LemmaMeasurement {
    ExponentFit fit;
    std::vector<PruferSample> samples;
};

inline constexpr double kDefaultTheta0 = 0.7853981633974483; // pi/4

/// Fits L(b) - L(a) against lambda on a region where phi > 0.
LemmaMeasurement measure_positive_growth(const PotentialPiece& piece, Interval region, double E,
                                         const std::vector<double>& lambda_grid,
                                         double theta0 = kDefaultTheta0);

/// Fits theta(d) - theta(c) against lambda on a region where phi < 0; E > 0.
LemmaMeasurement measure_rotation(const PotentialPiece& piece, Interval region, double E,
                                  const std::vector<double>& lambda_grid, double theta0 = kDefaultTheta0);

/// Fits the log-norm change on a region where phi is bounded away from zero
/// and negative; E > 0. The measured quantity is max_x |L(x) - L(c)|, which
/// bounds |L(d) - L(c)| without depending on the phase at which d is reached.
LemmaMeasurement measure_negative_lognorm(const PotentialPiece& piece, Interval region, double E,
                                          const std::vector<double>& lambda_grid,
                                          double theta0 = kDefaultTheta0);

/// As measure_negative_lognorm for a negative lobe vanishing at both ends with
/// phi'(c) < 0 and phi'(d) > 0.
LemmaMeasurement measure_boundary_zero(const PotentialPiece& piece, Interval region, double E,
                                       const std::vector<double>& lambda_grid,
                                       double theta0 = kDefaultTheta0);

} // namespace fibspec
