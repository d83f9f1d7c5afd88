#include <doctest.h>

#include "fibspec/error.hpp"
#include "fibspec/sl2util.hpp"
#include "fibspec/transfer.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fibspec;

namespace {

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

SL2Matrix random_sl2(std::mt19937_64& rng, double spread) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(-spread, spread);
    const double d = std::exp(u(rng));
    const SL2Matrix shear_u{1.0, g(rng), 0.0, 1.0};
    const SL2Matrix shear_l{1.0, 0.0, g(rng), 1.0};
    const SL2Matrix diag{d, 0.0, 0.0, 1.0 / d};
    return shear_u * diag * shear_l;
}

} // namespace

TEST_CASE("determinant and inverse") {
    const SL2Matrix m{2.0, 1.0, 1.0, 1.0};
    CHECK(m.det() == 1.0);
    const SL2Matrix id = m * m.inverse();
    CHECK(max_abs_diff(id, SL2Matrix::identity()) == 0.0);
    CHECK(half_trace(SL2Matrix::identity()) == 1.0);
    CHECK(half_trace(SL2Matrix{0.0, -1.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("operator norm is the largest singular value") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const SL2Matrix m = random_sl2(rng, 3.0);
        const auto sd = singular_directions(m);
        CHECK(m.apply(sd.expanding.vec()).norm() == doctest::Approx(m.norm()).epsilon(1e-9));
        CHECK(m.apply(sd.contracting.vec()).norm() == doctest::Approx(1.0 / m.norm()).epsilon(1e-9));
    }
}

TEST_CASE("singular directions") {
    const auto sd = singular_directions(SL2Matrix{2.0, 0.0, 0.0, 0.5});
    CHECK(sd.expanding.x() == doctest::Approx(1.0));
    CHECK(sd.expanding.y() == doctest::Approx(0.0));
    CHECK(sd.contracting.x() == doctest::Approx(0.0));
    CHECK(std::abs(sd.contracting.y()) == doctest::Approx(1.0));
    const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
    CHECK(kind_of([&] { (void)singular_directions(SL2Matrix{c, -s, s, c}); }) == ErrorKind::NoDistinguishedDirection);
}

TEST_CASE("singular directions of cell products") {
    const double lambda = 100.0;
    const PotentialPiece presets[] = {PotentialPiece::constant(1.0), PotentialPiece::bump(),
                                      PotentialPiece::split_cubic(), PotentialPiece::discrete_split(),
                                      PotentialPiece::zero()};
    SL2Matrix m = SL2Matrix::identity();
    for (const auto& p : presets) {
        m = transfer_piece(p, lambda, 3.0, 2048) * m;
    }
    const auto sd = singular_directions(m);
    CHECK(m.apply(sd.expanding.vec()).norm() == doctest::Approx(m.norm()).epsilon(1e-9));
}

TEST_CASE("eigen directions") {
    const auto e = eigen_direction(SL2Matrix{3.0, 0.0, 0.0, 1.0 / 3.0});
    CHECK(e.eigenvalue == doctest::Approx(3.0));
    CHECK(e.direction.x() == doctest::Approx(1.0));
    const auto g = eigen_direction(SL2Matrix{2.0, 1.0, 1.0, 1.0});
    CHECK(std::abs(g.eigenvalue - 2.6180339887498948482) < 1e-12);
    const auto negative = eigen_direction(SL2Matrix{-3.0, 0.0, 0.0, -1.0 / 3.0});
    CHECK(negative.eigenvalue == doctest::Approx(-3.0));
    CHECK(kind_of([] { (void)eigen_direction(SL2Matrix{1.0, 1.0, 0.0, 1.0}); }) == ErrorKind::NotHyperbolic);
}

TEST_CASE("eigen direction is an eigenvector") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const SL2Matrix m = random_sl2(rng, 4.0);
        if (std::abs(m.trace()) <= 2.0 + 1e-6) {
            continue;
        }
        const auto e = eigen_direction(m);
        const Vec2 v = e.direction.vec();
        const Vec2 mv = m.apply(v);
        CHECK(std::abs(cross(v, mv)) <= 1e-9 * m.norm());
        CHECK(std::abs(e.eigenvalue) > 1.0);
    }
}

TEST_CASE("projective angles") {
    const Direction e1(Vec2{1.0, 0.0});
    CHECK(angle_rp1(e1, e1) == 0.0);
    CHECK(angle_rp1(e1, Direction(Vec2{0.0, 1.0})) == doctest::Approx(std::numbers::pi / 2));
    CHECK(angle_rp1(e1, Direction(Vec2{1.0, 1.0})) == doctest::Approx(std::numbers::pi / 4));
    CHECK(angle_rp1(e1, Direction(Vec2{-1.0, 0.0})) == 0.0);
    const Direction d(Vec2{-3.0, -4.0});
    CHECK(d.x() == doctest::Approx(0.6));
    CHECK(d.y() == doctest::Approx(0.8));
}

TEST_CASE("angle bound") {
    const auto r = check_angle_bound(SL2Matrix{3.0, 0.0, 0.0, 1.0 / 3.0});
    CHECK(r.angle == doctest::Approx(0.0));
    CHECK(r.bound == doctest::Approx(std::numbers::pi / 18));
    CHECK(r.holds);
    CHECK(kind_of([] { (void)check_angle_bound(SL2Matrix::identity()); }) == ErrorKind::NotHyperbolic);
}

TEST_CASE("angle bound on random hyperbolic matrices") {
    std::mt19937_64 rng(2024);
    int tested = 0;
    while (tested < 2000) {
        const SL2Matrix m = random_sl2(rng, 9.0);
        if (std::abs(m.trace()) <= 2.0 + 1e-9) {
            continue;
        }
        ++tested;
        const auto r = check_angle_bound(m);
        CHECK_MESSAGE(r.holds, "angle " << r.angle << " bound " << r.bound);
    }
}

TEST_CASE("angle bound for a constant-cell monodromy at large coupling") {
    const SL2Matrix m = transfer_constant(1000.0, 1.0, 0.0);
    const auto r = check_angle_bound(m);
    CHECK(r.holds);
    CHECK(r.angle <= 10.0 * std::exp(-std::sqrt(1000.0)));
}

TEST_CASE("trace zero forces B^2 = -I") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        // [[a, b], [c, -a]] with -a^2 - bc = 1
        const double a = g(rng);
        const double b = std::exp(g(rng));
        const double c = -(1.0 + a * a) / b;
        const SL2Matrix m{a, b, c, -a};
        const SL2Matrix sq = m * m + SL2Matrix::identity();
        CHECK(sq.max_abs() <= 1e-12 * (1.0 + m.max_abs() * m.max_abs()));
    }
}
