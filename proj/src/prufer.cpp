#include "fibspec/prufer.hpp"

#include "fibspec/error.hpp"
#include "fibspec/parallel.hpp"
#include "fibspec/sl2.hpp"

#include <algorithm>
#include <cmath>

namespace fibspec {

namespace {

constexpr int kMinPruferSteps = 64;

Vec2 rk4_vector_step(Vec2 v, double c0, double cm, double c1, double h) {
    // (y', y)' = (c y, y')
    auto rhs = [](Vec2 w, double c) { return Vec2{c * w.y, w.x}; };
    auto axpy = [](Vec2 w, Vec2 k, double s) { return Vec2{w.x + s * k.x, w.y + s * k.y}; };
    const Vec2 k1 = rhs(v, c0);
    const Vec2 k2 = rhs(axpy(v, k1, 0.5 * h), cm);
    const Vec2 k3 = rhs(axpy(v, k2, 0.5 * h), cm);
    const Vec2 k4 = rhs(axpy(v, k3, h), c1);
    return {v.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            v.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

template <class Visit>
PruferState run(const PotentialPiece& piece, double lambda, double E, double theta0, int steps, double a,
                double b, Visit&& visit) {
    if (steps < kMinPruferSteps) {
        throw Error(ErrorKind::StepCountTooSmall, "Prüfer integration needs at least 64 steps");
    }
    if (!(a >= 0.0 && b <= piece.length() && a <= b)) {
        throw Error(ErrorKind::Domain, "Prüfer interval outside the piece");
    }
    auto coeff = [&](double x) { return lambda * evaluate_closed(piece, std::clamp(x, 0.0, piece.length())) - E; };
    PruferState s{theta0, 0.0, a};
    visit(s);
    Vec2 v{std::cos(theta0), std::sin(theta0)};
    // Jumps of a piecewise-constant profile; steps crossing one are split there.
    std::vector<double> jumps;
    if (auto segs = piece.constant_segments()) {
        double x = 0.0;
        for (const auto& seg : *segs) {
            x += seg.length;
            if (x > a && x < b) {
                jumps.push_back(x);
            }
        }
    }
    const bool flat = piece.constant_segments().has_value();
    auto advance = [&](double x0, double x1) {
        if (flat) {
            const double c = coeff(0.5 * (x0 + x1));
            return rk4_vector_step(v, c, c, c, x1 - x0);
        }
        return rk4_vector_step(v, coeff(x0), coeff(0.5 * (x0 + x1)), coeff(x1), x1 - x0);
    };
    const double h = (b - a) / steps;
    std::size_t next_jump = 0;
    for (int i = 0; i < steps; ++i) {
        const double x0 = a + h * i;
        const double x1 = (i + 1 == steps) ? b : a + h * (i + 1);
        double lo = x0;
        double log_gain = 0.0;
        while (next_jump < jumps.size() && jumps[next_jump] <= x1) {
            const double xj = jumps[next_jump++];
            if (xj > lo) {
                const Vec2 w = advance(lo, xj);
                const double n = w.norm();
                log_gain += std::log(n);
                s.theta += std::atan2(cross(v, w), dot(v, w));
                v = {w.x / n, w.y / n};
                lo = xj;
            }
        }
        const Vec2 w = advance(lo, x1);
        const double n = w.norm();
        if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(log_gain)) {
            throw Error(ErrorKind::IntegrationFailure, "Prüfer state became non-finite");
        }
        s.theta += std::atan2(cross(v, w), dot(v, w));
        s.logr += log_gain + std::log(n);
        s.x = x1;
        v = {w.x / n, w.y / n};
        visit(s);
    }
    return s;
}

bool sign_on_interior(const PotentialPiece& piece, Interval r, int sign, bool include_ends) {
    constexpr int n = 512;
    for (int i = include_ends ? 0 : 1; i <= (include_ends ? n : n - 1); ++i) {
        const double x = r.lo + (r.hi - r.lo) * i / n;
        const double v = evaluate_closed(piece, x);
        if (sign > 0 ? !(v > 0.0) : !(v < 0.0)) {
            return false;
        }
    }
    return true;
}

void check_region(const PotentialPiece& piece, Interval r) {
    if (!(r.lo >= 0.0 && r.hi <= piece.length() && r.lo < r.hi)) {
        throw Error(ErrorKind::Domain, "measurement region outside the piece");
    }
}

// OLS y = slope x + intercept.
struct LineFit {
    double slope, intercept, r2;
};

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw Error(ErrorKind::FitDomain, "fit abscissae are all equal");
    }
    const double slope = sxy / sxx;
    const double r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return {slope, my - slope * mx, r2};
}

template <class Quantity>
LemmaMeasurement measure(const PotentialPiece& piece, Interval r, double E,
                         const std::vector<double>& lambdas, double theta0, Quantity&& quantity) {
    if (lambdas.size() < 2) {
        throw Error(ErrorKind::FitDomain, "a fit needs at least two coupling values");
    }
    LemmaMeasurement out;
    out.samples = parallel_map<PruferSample>(lambdas.size(), [&](std::size_t i) {
        const double lambda = lambdas[i];
        const int steps = prufer_steps(piece, lambda, E, r.lo, r.hi);
        double excursion = 0.0;
        const PruferState end = run(piece, lambda, E, theta0, steps, r.lo, r.hi, [&](const PruferState& s) {
            excursion = std::max(excursion, std::abs(s.logr));
        });
        return PruferSample{lambda, end.theta - theta0, end.logr, excursion, steps};
    });
    std::vector<double> values;
    values.reserve(lambdas.size());
    for (const auto& s : out.samples) {
        values.push_back(quantity(s));
    }
    out.fit = fit_power_law(lambdas, values);
    return out;
}

void add_log_fit(LemmaMeasurement& m) {
    std::vector<double> x, y;
    for (const auto& s : m.samples) {
        x.push_back(std::log(s.lambda));
        y.push_back(s.max_excursion_L);
    }
    const auto line = ols(x, y);
    m.fit.log_slope = line.slope;
    m.fit.log_intercept = line.intercept;
    m.fit.log_r_squared = line.r2;
}

} // namespace

std::pair<double, double> prufer_derivatives(double theta, double q, double E) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double k = q - E + 1.0;
    return {1.0 - k * s * s, c * s * k};
}

PruferState integrate_prufer(const PotentialPiece& piece, double lambda, double E, double theta0,
                             int steps) {
    return integrate_prufer(piece, lambda, E, theta0, steps, 0.0, piece.length());
}

PruferState integrate_prufer(const PotentialPiece& piece, double lambda, double E, double theta0,
                             int steps, double a, double b) {
    return run(piece, lambda, E, theta0, steps, a, b, [](const PruferState&) {});
}

std::vector<PruferState> prufer_path(const PotentialPiece& piece, double lambda, double E, double theta0,
                                     int steps, double a, double b) {
    std::vector<PruferState> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    run(piece, lambda, E, theta0, steps, a, b, [&](const PruferState& s) { path.push_back(s); });
    return path;
}

int prufer_steps(const PotentialPiece& piece, double lambda, double E, double a, double b, int base) {
    const double rate = std::sqrt(lambda * piece.max_abs() + std::abs(E) + 1.0);
    const double n = std::ceil(40.0 * rate * (b - a));
    return static_cast<int>(std::max<double>({double(base), double(kMinPruferSteps), n}));
}

ExponentFit fit_power_law(const std::vector<double>& lambdas, const std::vector<double>& values) {
    if (lambdas.size() != values.size() || lambdas.size() < 2) {
        throw Error(ErrorKind::FitDomain, "a power-law fit needs at least two (lambda, value) pairs");
    }
    std::vector<double> x, y;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0) || !(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw Error(ErrorKind::FitDomain, "power-law fit needs positive lambda and positive values");
        }
        x.push_back(std::log(lambdas[i]));
        y.push_back(std::log(values[i]));
    }
    const auto line = ols(x, y);
    ExponentFit fit;
    fit.exponent = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r2;
    fit.lambda_lo = *std::min_element(lambdas.begin(), lambdas.end());
    fit.lambda_hi = *std::max_element(lambdas.begin(), lambdas.end());
    return fit;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) {
        throw Error(ErrorKind::InvalidArgument, "log grid needs 0 < lo < hi and per_decade >= 1");
    }
    const double decades = std::log10(hi / lo);
    const int n = std::max(1, static_cast<int>(std::lround(decades * per_decade)));
    std::vector<double> out;
    for (int i = 0; i <= n; ++i) {
        out.push_back(i == n ? hi : lo * std::pow(10.0, decades * i / n));
    }
    return out;
}

LemmaMeasurement measure_positive_growth(const PotentialPiece& piece, Interval region, double E,
                                         const std::vector<double>& lambda_grid, double theta0) {
    check_region(piece, region);
    if (!sign_on_interior(piece, region, +1, false)) {
        throw Error(ErrorKind::Precondition, "growth measurement needs phi > 0 inside the region");
    }
    if (!(theta0 > 0.0 && theta0 < 1.5707963267948966)) {
        throw Error(ErrorKind::Precondition, "growth measurement needs theta0 in (0, pi/2)");
    }
    return measure(piece, region, E, lambda_grid, theta0, [](const PruferSample& s) { return s.delta_L; });
}

LemmaMeasurement measure_rotation(const PotentialPiece& piece, Interval region, double E,
                                  const std::vector<double>& lambda_grid, double theta0) {
    check_region(piece, region);
    if (!(E > 0.0)) {
        throw Error(ErrorKind::Precondition, "rotation measurement needs E > 0");
    }
    if (!sign_on_interior(piece, region, -1, false)) {
        throw Error(ErrorKind::Precondition, "rotation measurement needs phi < 0 inside the region");
    }
    return measure(piece, region, E, lambda_grid, theta0, [](const PruferSample& s) { return s.delta_theta; });
}

LemmaMeasurement measure_negative_lognorm(const PotentialPiece& piece, Interval region, double E,
                                          const std::vector<double>& lambda_grid, double theta0) {
    check_region(piece, region);
    if (!(E > 0.0)) {
        throw Error(ErrorKind::Precondition, "log-norm measurement needs E > 0");
    }
    if (!sign_on_interior(piece, region, -1, true)) {
        throw Error(ErrorKind::Precondition, "log-norm measurement needs phi < 0 on the closed region");
    }
    auto m = measure(piece, region, E, lambda_grid, theta0,
                     [](const PruferSample& s) { return s.max_excursion_L; });
    add_log_fit(m);
    return m;
}

LemmaMeasurement measure_boundary_zero(const PotentialPiece& piece, Interval region, double E,
                                       const std::vector<double>& lambda_grid, double theta0) {
    check_region(piece, region);
    if (!(E > 0.0)) {
        throw Error(ErrorKind::Precondition, "boundary-zero measurement needs E > 0");
    }
    auto f = [&](double x) { return evaluate_closed(piece, x); };
    const double scale = std::max(1.0, piece.max_abs());
    if (std::abs(f(region.lo)) > 1e-10 * scale || std::abs(f(region.hi)) > 1e-10 * scale) {
        throw Error(ErrorKind::Precondition, "boundary-zero measurement needs phi(c) = phi(d) = 0");
    }
    const double h = 1e-6 * (region.hi - region.lo);
    const double slope_lo = (f(region.lo + h) - f(region.lo)) / h;
    const double slope_hi = (f(region.hi) - f(region.hi - h)) / h;
    // transversal zeros only; a tangential end would pass a raw sign test
    const double floor = 1e-3 * piece.max_abs();
    if (!(slope_lo < -floor) || !(slope_hi > floor)) {
        throw Error(ErrorKind::Precondition, "boundary-zero measurement needs phi'(c) < 0 < phi'(d)");
    }
    if (!sign_on_interior(piece, region, -1, false)) {
        throw Error(ErrorKind::Precondition, "boundary-zero measurement needs phi < 0 inside the region");
    }
    auto m = measure(piece, region, E, lambda_grid, theta0,
                     [](const PruferSample& s) { return s.max_excursion_L; });
    add_log_fit(m);
    return m;
}

} // namespace fibspec
