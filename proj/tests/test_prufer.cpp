#include <doctest.h>

#include "fibspec/error.hpp"
#include "fibspec/potentials.hpp"
#include "fibspec/prufer.hpp"
#include "fibspec/transfer.hpp"

#include <cmath>
#include <numbers>

using namespace fibspec;

namespace {

constexpr double kTwoPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Config;
}

// Direct RK4 on the polar system, usable where it is not stiff.
PruferState polar_rk4(const PotentialPiece& p, double lambda, double E, double theta0, int n) {
    double th = theta0, L = 0.0;
    const double h = p.length() / n;
    auto q = [&](double x) { return lambda * evaluate_closed(p, std::min(x, p.length())); };
    for (int i = 0; i < n; ++i) {
        const double x = i * h;
        const auto k1 = prufer_derivatives(th, q(x), E);
        const auto k2 = prufer_derivatives(th + 0.5 * h * k1.first, q(x + 0.5 * h), E);
        const auto k3 = prufer_derivatives(th + 0.5 * h * k2.first, q(x + 0.5 * h), E);
        const auto k4 = prufer_derivatives(th + h * k3.first, q(x + h), E);
        th += h / 6.0 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
        L += h / 6.0 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
    }
    return {th, L, p.length()};
}

const std::vector<double>& grid() {
    static const auto g = log_grid(1e2, 1e6, 5);
    return g;
}

} // namespace

TEST_CASE("free angle solves tan theta = 1 + x") {
    const auto s = integrate_prufer(PotentialPiece::zero(), 0.0, 0.0, std::numbers::pi / 4, 256);
    CHECK(s.theta == doctest::Approx(std::atan(2.0)).epsilon(1e-12));
    CHECK(s.x == 1.0);
    const auto path = prufer_path(PotentialPiece::zero(), 0.0, 0.0, std::numbers::pi / 4, 256, 0.0, 1.0);
    REQUIRE(path.size() == 257);
    for (const auto& p : path) {
        CHECK(std::tan(p.theta) == doctest::Approx(1.0 + p.x).epsilon(1e-12));
    }
}

TEST_CASE("angle leaves zero with unit slope") {
    for (double q : {-100.0, 0.0, 3.0, 1e4}) {
        CHECK(prufer_derivatives(0.0, q, 2.0).first == 1.0);
        CHECK(prufer_derivatives(0.0, q, 2.0).second == 0.0);
    }
}

TEST_CASE("polar state agrees with the transfer matrix") {
    const PotentialPiece presets[] = {PotentialPiece::zero(), PotentialPiece::constant(1.0), PotentialPiece::bump(),
                                      PotentialPiece::split_cubic(), PotentialPiece::discrete_split()};
    for (const auto& p : presets) {
        for (double lambda : {0.0, 1.0, 10.0, 1e3}) {
            for (double E : {1.0, kTwoPiSq}) {
                const double th0 = 0.3;
                const auto s = integrate_prufer(p, lambda, E, th0, 8192);
                const Vec2 v = transfer_piece(p, lambda, E, 8192).apply({std::cos(th0), std::sin(th0)});
                const double r = std::exp(s.logr);
                const double err = std::hypot(r * std::cos(s.theta) - v.x, r * std::sin(s.theta) - v.y);
                CHECK_MESSAGE(err <= 1e-6 * v.norm(), p.to_spec() << " lambda " << lambda << " E " << E);
            }
        }
    }
}

TEST_CASE("polar RK4 and the linear flow agree where both are accurate") {
    for (double lambda : {0.0, 2.0, 15.0}) {
        const auto a = integrate_prufer(PotentialPiece::split_cubic(), lambda, 3.0, 0.4, 4096);
        const auto b = polar_rk4(PotentialPiece::split_cubic(), lambda, 3.0, 0.4, 20000);
        CHECK(a.theta == doctest::Approx(b.theta).epsilon(1e-9));
        CHECK(a.logr == doctest::Approx(b.logr).epsilon(1e-9));
    }
}

TEST_CASE("angle keeps its branch") {
    // sqrt(1e4 + 1) ~ 100 radians of rotation: about 32 half-turns
    const auto s = integrate_prufer(PotentialPiece::constant(-1.0), 1e4, 1.0, 0.0, 20000);
    CHECK(s.theta > 90.0);
    CHECK(s.theta < 110.0);
}

TEST_CASE("angle increases across negative regions") {
    for (double lambda : {10.0, 1e3, 1e5}) {
        const auto a = integrate_prufer(PotentialPiece::split_cubic(), lambda, 1.0, 0.7, 20000, 1.0 / 3.0, 1.0);
        CHECK(a.theta >= 0.7);
    }
}

TEST_CASE("halving the step barely moves L") {
    const auto p = PotentialPiece::split_cubic();
    for (double lambda : {1e2, 1e4, 1e6}) {
        const int n = prufer_steps(p, lambda, 1.0, 0.0, 1.0);
        const auto a = integrate_prufer(p, lambda, 1.0, 0.5, n);
        const auto b = integrate_prufer(p, lambda, 1.0, 0.5, 2 * n);
        CHECK(std::abs(a.logr - b.logr) <= 1e-5 * (1.0 + std::abs(b.logr)));
    }
}

TEST_CASE("Prufer errors") {
    CHECK(kind_of([] { (void)integrate_prufer(PotentialPiece::zero(), 0.0, 0.0, 0.0, 63); }) ==
          ErrorKind::StepCountTooSmall);
    CHECK(kind_of([] { (void)fit_power_law({1.0}, {2.0}); }) == ErrorKind::FitDomain);
    CHECK(kind_of([] { (void)fit_power_law({1.0, 2.0}, {2.0, -1.0}); }) == ErrorKind::FitDomain);
    CHECK(kind_of([] { (void)measure_positive_growth(PotentialPiece::bump(), {0, 1}, 1.0, {100.0}); }) ==
          ErrorKind::FitDomain);
}

TEST_CASE("power-law fit") {
    std::vector<double> l, v;
    for (double x : log_grid(1.0, 1e4, 5)) {
        l.push_back(x);
        v.push_back(3.0 * std::pow(x, 0.7));
    }
    const auto f = fit_power_law(l, v);
    CHECK(f.exponent == doctest::Approx(0.7));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK(f.lambda_lo == 1.0);
    CHECK(f.lambda_hi == 1e4);
    CHECK(log_grid(1e2, 1e6, 5).size() == 21);
}

TEST_CASE("growth on positive regions scales like sqrt(lambda)") {
    const auto bump = measure_positive_growth(PotentialPiece::bump(), {0, 1}, 1.0, grid());
    CHECK(std::abs(bump.fit.exponent - 0.5) <= 0.05);
    const auto flat = measure_positive_growth(PotentialPiece::constant(1.0), {0, 1}, 1.0, grid());
    CHECK(std::abs(flat.fit.exponent - 0.5) <= 0.02);
    // closed-form cosh oracle for the same fit
    std::vector<double> exact;
    for (double lambda : grid()) {
        const double k = std::sqrt(lambda - 1.0);
        // cosh and sinh with the e^k factor pulled out
        const double e = std::exp(-2.0 * k), v = std::sqrt(0.5);
        const double c = 0.5 * (1.0 + e), s = 0.5 * (1.0 - e);
        exact.push_back(k + std::log(std::hypot(c * v + k * s * v, s / k * v + c * v)));
    }
    const auto oracle = fit_power_law(grid(), exact);
    CHECK(flat.fit.intercept == doctest::Approx(oracle.intercept).epsilon(1e-6));
    CHECK(flat.fit.exponent == doctest::Approx(oracle.exponent).epsilon(1e-6));
    CHECK(std::abs(flat.fit.intercept) <= 0.2);
    CHECK(flat.fit.r_squared >= 0.98);
    REQUIRE(flat.samples.size() == 21);
    CHECK(flat.samples.front().steps >= 256);
}

TEST_CASE("rotation on negative regions scales like sqrt(lambda)") {
    const auto flat = measure_rotation(PotentialPiece::constant(-1.0), {0, 1}, 1.0, grid());
    CHECK(std::abs(flat.fit.exponent - 0.5) <= 0.02);
    const double x_star = validate_split(PotentialPiece::split_cubic()).x_star;
    const auto lobe = measure_rotation(PotentialPiece::split_cubic(), {x_star, 1.0}, 1.0, grid());
    CHECK(std::abs(lobe.fit.exponent - 0.5) <= 0.05);
    CHECK(kind_of([] { (void)measure_rotation(PotentialPiece::constant(-1.0), {0, 1}, -1.0, grid()); }) ==
          ErrorKind::Precondition);
}

TEST_CASE("log-norm change on strictly negative regions grows logarithmically") {
    // The amplitude ratio of (y', y) is ~ sqrt(lambda), so the excursion of L
    // is ~ 0.5 log(lambda): linear in log(lambda) with slope near 1/2.
    for (const auto& p : {PotentialPiece::constant(-1.0), PotentialPiece::polynomial({-0.5, -0.5})}) {
        const auto m = measure_negative_lognorm(p, {0, 1}, 1.0, grid());
        REQUIRE(m.fit.log_slope.has_value());
        CHECK(*m.fit.log_r_squared >= 0.99);
        CHECK(std::abs(*m.fit.log_slope - 0.5) <= 0.1);
        for (const auto& s : m.samples) {
            CHECK(std::abs(s.delta_L) <= s.max_excursion_L + 1e-12);
        }
    }
    CHECK(kind_of([] {
              (void)measure_negative_lognorm(PotentialPiece::polynomial({0.5, -1.0}), {0, 1}, 1.0, grid());
          }) == ErrorKind::Precondition);
}

TEST_CASE("boundary-zero lobes grow slower than positive lobes") {
    const auto cubic = PotentialPiece::split_cubic();
    const double x_star = validate_split(cubic).x_star;
    const auto pos = measure_positive_growth(cubic, {0.0, x_star}, 1.0, grid());
    const auto neg = measure_boundary_zero(cubic, {x_star, 1.0}, 1.0, grid());
    CHECK(neg.fit.exponent <= 0.5);
    CHECK(pos.fit.exponent - neg.fit.exponent >= 0.05);
    const auto parabola = measure_boundary_zero(PotentialPiece::polynomial({0.0, -1.0, 1.0}), {0, 1}, 1.0, grid());
    CHECK(parabola.fit.exponent <= 0.45);
    // -x(1-x)^2 has phi'(1) = 0
    CHECK(kind_of([] {
              (void)measure_boundary_zero(PotentialPiece::polynomial({0.0, -1.0, 2.0, -1.0}), {0, 1}, 1.0, grid());
          }) == ErrorKind::Precondition);
}
