#include <doctest.h>

#include "fibspec/error.hpp"
#include "fibspec/roots.hpp"

#include <cmath>

using namespace fibspec;

namespace {

std::vector<double> roots_of(const RealFunction& f, double lo, double hi, int n) {
    const auto xs = linspace(lo, hi, n);
    std::vector<double> fs;
    for (double x : xs) {
        fs.push_back(f(x));
    }
    return scan_roots(f, xs, fs, RootScanOptions{});
}

} // namespace

TEST_CASE("linspace") {
    const auto xs = linspace(0.0, 1.0, 11);
    REQUIRE(xs.size() == 11);
    CHECK(xs[5] == 0.5);
    CHECK(xs.back() == 1.0);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), Error);
}

TEST_CASE("bisection") {
    auto f = [](double x) { return x * x - 2.0; };
    CHECK(bisect(f, 0.0, 2.0, -2.0, 1e-14) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(bisect(f, 0.0, 2.0, -2.0, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
}

TEST_CASE("simple roots") {
    const auto r = roots_of([](double x) { return std::sin(x); }, 0.5, 10.0, 100);
    REQUIRE(r.size() == 3);
    for (int k = 1; k <= 3; ++k) {
        CHECK(r[k - 1] == doctest::Approx(k * M_PI).epsilon(1e-10));
    }
}

TEST_CASE("double roots between grid points") {
    // touches zero at 1.2345 without changing sign
    const auto r = roots_of([](double x) { return (x - 1.2345) * (x - 1.2345); }, 0.0, 3.0, 50);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.2345).epsilon(1e-7));
}

TEST_CASE("close pairs hidden between grid points") {
    // roots at 1.51 and 1.53, grid spacing 0.06
    const auto r = roots_of([](double x) { return (x - 1.51) * (x - 1.53); }, 0.0, 3.0, 51);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.51).epsilon(1e-9));
    CHECK(r[1] == doctest::Approx(1.53).epsilon(1e-9));
}

TEST_CASE("roots on grid points are not duplicated") {
    const auto r = roots_of([](double x) { return x - 1.0; }, 0.0, 2.0, 3);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == 1.0);
}

TEST_CASE("mismatched grids") {
    CHECK_THROWS_AS(scan_roots([](double x) { return x; }, {0.0, 1.0}, {0.0}, RootScanOptions{}), Error);
}
