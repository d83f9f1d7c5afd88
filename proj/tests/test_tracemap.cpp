#include <doctest.h>

#include "fibspec/floquet.hpp"
#include "fibspec/tracemap.hpp"
#include "fibspec/transfer.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fibspec;

namespace {

constexpr double kTwoPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double x_k(const PotentialPiece& p0, const PotentialPiece& p1, double lambda, double E, unsigned k) {
    return half_trace(monodromy(assemble(cell_word(k), p0, p1, lambda), E, 2048));
}

} // namespace

TEST_CASE("trace map and invariant formulas") {
    const TraceTriple one{1, 1, 1};
    const TraceTriple next = trace_map_step(one);
    CHECK(next.x == 1.0);
    CHECK(next.y == 1.0);
    CHECK(next.z == 1.0);
    CHECK(trace_map_step(TraceTriple{}).x == 0.0);
    CHECK(fricke_vogt(one) == 0.0);
    CHECK(fricke_vogt(TraceTriple{}) == -1.0);
    static_assert(trace_map_step(TraceTriple{2, 3, 5}).x == 7.0);
}

TEST_CASE("commutator identity on random SL(2) pairs") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    auto random_sl2 = [&] {
        const double a = g(rng), b = g(rng), c = g(rng);
        const double d = (1.0 + b * c) / a;
        return SL2Matrix{a, b, c, d};
    };
    for (int i = 0; i < 1000; ++i) {
        const SL2Matrix A = random_sl2();
        const SL2Matrix B = random_sl2();
        const double lhs = fricke_vogt({half_trace(A), half_trace(B), half_trace(A * B)});
        const double rhs = 0.25 * ((A.inverse() * B.inverse() * A * B).trace() - 2.0);
        const double scale = 1.0 + std::pow(std::max(A.max_abs(), B.max_abs()), 4);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
    }
}

TEST_CASE("curve of initial conditions") {
    const auto zero = PotentialPiece::zero();
    for (double E : {0.5, 3.0, 20.0}) {
        const auto g = curve_of_initial_conditions(zero, zero, E, 1.0, 2048);
        CHECK(g.y == doctest::Approx(std::cos(std::sqrt(E))));
        CHECK(g.x == doctest::Approx(2.0 * std::cos(std::sqrt(E)) * std::cos(std::sqrt(E)) - 1.0));
        CHECK(std::abs(fricke_vogt(g)) < 1e-12);
    }
    const auto g = curve_of_initial_conditions(zero, PotentialPiece::bump(), kTwoPiSq, 12.0, 2048);
    CHECK(g.z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trace map iterates reproduce monodromy traces") {
    const auto p0 = PotentialPiece::bump();
    const auto p1 = PotentialPiece::split_cubic();
    for (double E : {-1.0, 1.0, kTwoPiSq, 17.3}) {
        for (double lambda : {0.0, 1.0, 50.0}) {
            TraceTriple t = curve_of_initial_conditions(p0, p1, E, lambda, 2048);
            // seeds against directly computed cell monodromies
            CHECK(t.x == doctest::Approx(x_k(p0, p1, lambda, E, 2)).epsilon(1e-9));
            for (unsigned k = 1; k <= 6; ++k) {
                t = trace_map_step(t);
                const double direct = x_k(p0, p1, lambda, E, k + 2);
                CHECK(std::abs(t.x - direct) <= 1e-6 * (1.0 + std::abs(direct)));
            }
        }
    }
}

TEST_CASE("trace recursion on all presets") {
    const PotentialPiece presets[] = {PotentialPiece::zero(), PotentialPiece::constant(1.0), PotentialPiece::bump(),
                                      PotentialPiece::split_cubic(), PotentialPiece::discrete_split()};
    for (const auto& p1 : presets) {
        for (double E : {-1.0, 1.0, kTwoPiSq, 17.3}) {
            for (double lambda : {0.0, 1.0, 50.0}) {
                double xs[10];
                for (unsigned k = 0; k <= 9; ++k) {
                    xs[k] = x_k(PotentialPiece::zero(), p1, lambda, E, k);
                }
                for (unsigned k = 2; k <= 8; ++k) {
                    const double rec = 2.0 * xs[k] * xs[k - 1] - xs[k - 2];
                    CHECK(std::abs(xs[k + 1] - rec) <= 1e-8 * (1.0 + std::abs(xs[k + 1])));
                }
            }
        }
    }
}

TEST_CASE("invariant is conserved along bounded orbits") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int bounded = 0;
    for (int i = 0; i < 2000; ++i) {
        TraceTriple t{u(rng), u(rng), u(rng)};
        const double i0 = fricke_vogt(t);
        double peak = t.max_abs();
        bool ok = true;
        for (int n = 1; n <= 30 && ok; ++n) {
            t = trace_map_step(t);
            peak = std::max(peak, t.max_abs());
            ok = t.finite() && peak < 1e6;
            if (ok) {
                CHECK(std::abs(fricke_vogt(t) - i0) <= 1e-6 * (1.0 + peak * peak * peak));
            }
        }
        bounded += ok;
    }
    CHECK(bounded > 100);
}

TEST_CASE("equal pieces have zero invariant") {
    const auto p = PotentialPiece::split_cubic();
    for (double E = -10.0; E <= 100.0; E += 2.5) {
        CHECK(std::abs(fricke_vogt(curve_of_initial_conditions(p, p, E, 3.0, 2048))) <= 1e-8);
    }
}

TEST_CASE("counterexample energy has zero invariant") {
    for (double lambda : {1.0, 92.46773, 300.0}) {
        for (const auto& p1 : {PotentialPiece::discrete_split(), PotentialPiece::split_cubic()}) {
            const auto g = curve_of_initial_conditions(PotentialPiece::zero(), p1, kTwoPiSq, lambda, 2048);
            CHECK(std::abs(fricke_vogt(g)) <= 1e-8 * (1.0 + g.y * g.y));
        }
    }
}

TEST_CASE("escape test") {
    CHECK(escape_test({1, 1, 1}, 500).status == OrbitStatus::Bounded);
    const auto v = escape_test({10, 10, 0}, 50, 1e6);
    CHECK(v.status == OrbitStatus::Escaped);
    CHECK(v.escape_index <= 10);
    CHECK(v.escape_index < 50);
    const auto inf = escape_test({INFINITY, 0, 0}, 5);
    CHECK(inf.status == OrbitStatus::Escaped);
    CHECK(inf.escape_index == 0);
    CHECK_THROWS(escape_test({1, 1, 1}, 0));
}

TEST_CASE("orbits below the spectrum escape") {
    const auto g = curve_of_initial_conditions(PotentialPiece::zero(), PotentialPiece::constant(1.0), -5.0, 100.0, 2048);
    CHECK(escape_test(g).status == OrbitStatus::Escaped);
    const auto cell = assemble(cell_word(8), PotentialPiece::zero(), PotentialPiece::constant(1.0), 100.0);
    CHECK(band_scan(cell, -10.0, 0.0, 200, 1e-10).empty());
}

TEST_CASE("spectral energies have nonnegative invariant") {
    const auto p0 = PotentialPiece::zero();
    const auto p1 = PotentialPiece::constant(1.0);
    const double lambda = 20.0;
    const auto cell = assemble(cell_word(9), p0, p1, lambda);
    const auto bands = band_scan(cell, -5.0, 80.0, 8000, 1e-10);
    REQUIRE(bands.size() > 5);
    for (const auto& b : bands) {
        const double E = 0.5 * (b.e_lo + b.e_hi);
        const auto g = curve_of_initial_conditions(p0, p1, E, lambda, 2048);
        CHECK(fricke_vogt(g) >= -1e-6);
    }
}

TEST_CASE("dimension proxy") {
    const double s = 1.0 + std::numbers::sqrt2;
    REQUIRE(dimension_upper_proxy(s * s).has_value());
    CHECK(*dimension_upper_proxy(s * s) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(*dimension_upper_proxy(1e6) - 0.12759189511262102611) < 1e-15);
    CHECK_FALSE(dimension_upper_proxy(0.5).has_value());
    CHECK_FALSE(dimension_upper_proxy(-1.0).has_value());
    CHECK_FALSE(dimension_upper_proxy(NAN).has_value());
}
