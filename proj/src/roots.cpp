#include "fibspec/roots.hpp"

#include "fibspec/error.hpp"

#include <algorithm>
#include <cmath>

namespace fibspec {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

double bisect(const RealFunction& f, double lo, double hi, double f_lo, double tol) {
    const int s_lo = sign(f_lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        (sign(fm) == s_lo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double refine_extremum(const RealFunction& f, double lo, double hi, bool minimize, double tol) {
    const double s = minimize ? 1.0 : -1.0;
    const double width = hi - lo;
    auto slope = [&](double x) {
        const double h = std::min(1e-3 * width, 1e-6 * (1.0 + std::abs(x)));
        return s * (f(x + h) - f(x - h));
    };
    if (slope(lo) < 0.0 && slope(hi) > 0.0) {
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            (slope(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
    // Golden-section fallback when the derivative bracket is not clean.
    constexpr double g = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = s * f(c), fd = s * f(d);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = s * f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = s * f(d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> scan_roots(const RealFunction& f, const std::vector<double>& xs,
                               const std::vector<double>& fs, const RootScanOptions& opts) {
    if (xs.size() != fs.size()) {
        throw Error(ErrorKind::InvalidArgument, "grid and values differ in length");
    }
    std::vector<double> roots;
    const std::size_t n = xs.size();
    if (n == 0) {
        return roots;
    }
    double scale = 0.0;
    for (double v : fs) {
        if (std::isfinite(v)) {
            scale = std::max(scale, std::abs(v));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(xs[i]);
        }
        if (i + 1 < n && fs[i] != 0.0 && fs[i + 1] != 0.0 && std::isfinite(fs[i]) &&
            std::isfinite(fs[i + 1]) && sign(fs[i]) != sign(fs[i + 1])) {
            roots.push_back(bisect(f, xs[i], xs[i + 1], fs[i], opts.tol));
        }
    }

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double a = fs[i - 1], b = fs[i], c = fs[i + 1];
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || b == 0.0) {
            continue;
        }
        if (sign(a) != sign(b) || sign(b) != sign(c)) {
            continue;
        }
        if (!(std::abs(b) < std::abs(a) && std::abs(b) <= std::abs(c))) {
            continue;
        }
        const bool minimize = b > 0.0;
        const double x_ext = refine_extremum(f, xs[i - 1], xs[i + 1], minimize, opts.tol);
        const double v = f(x_ext);
        if (v == 0.0) {
            roots.push_back(x_ext);
        } else if (sign(v) != sign(b)) {
            const double r1 = bisect(f, xs[i - 1], x_ext, a, opts.tol);
            const double r2 = bisect(f, x_ext, xs[i + 1], v, opts.tol);
            // a pair closer than the merge width is a rounded tangency
            if (r2 - r1 <= opts.pair_merge * (1.0 + std::abs(x_ext))) {
                roots.push_back(x_ext);
            } else {
                roots.push_back(r1);
                roots.push_back(r2);
            }
        } else if (std::abs(v) <= opts.touch_threshold * scale) {
            roots.push_back(x_ext);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        const double width = std::max(10.0 * opts.tol, opts.pair_merge * (1.0 + std::abs(r)));
        if (unique.empty() || r - unique.back() > width) {
            unique.push_back(r);
        } else {
            unique.back() = 0.5 * (unique.back() + r);
        }
    }
    return unique;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) {
        throw Error(ErrorKind::InvalidArgument, "a grid needs at least two points");
    }
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = (i + 1 == n) ? hi : lo + (hi - lo) * i / (n - 1);
    }
    return xs;
}

} // namespace fibspec
