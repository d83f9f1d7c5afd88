#pragma once

#include <functional>
#include <vector>

namespace fibspec {

using RealFunction = std::function<double(double)>;

/// Bisection on a bracket with f(lo) f(hi) < 0, down to hi - lo <= tol.
double bisect(const RealFunction& f, double lo, double hi, double f_lo, double tol);

/// Location of the extremum of f inside [lo, hi], found by bisecting the sign
/// of a central-difference derivative. `minimize` selects min or max.
double refine_extremum(const RealFunction& f, double lo, double hi, bool minimize, double tol);

struct RootScanOptions {
    double tol = 1e-10;
    /// A local extremum of |f| without a sign change counts as a double root when
    /// |f| <= touch_threshold * max|f| over the grid.
    double touch_threshold = 1e-8;
    /// Roots closer than pair_merge * (1 + |x|) are reported once.
    double pair_merge = 1e-7;
};

/// Real roots of f on the grid xs (ascending) with precomputed values fs:
/// sign changes are bisected; local minima of |f| are refined and reported as
/// two simple roots (if the extremum crosses zero) or one double root.
std::vector<double> scan_roots(const RealFunction& f, const std::vector<double>& xs,
                               const std::vector<double>& fs, const RootScanOptions& opts);

/// Evenly spaced grid of n >= 2 points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

} // namespace fibspec
