#include "fibspec/floquet.hpp"

#include "fibspec/error.hpp"
#include "fibspec/parallel.hpp"
#include "fibspec/roots.hpp"
#include "fibspec/transfer.hpp"

#include <cmath>
#include <limits>

namespace fibspec {

namespace {

// Grid points with |Delta| - 2 up to this much positive still count as in-band,
// so roundoff at tangential touches does not split a band.
constexpr double kBandSlack = 1e-10;

double band_gap_function(const CellPotential& cell, double E, int steps) {
    const double d = discriminant(cell, E, steps);
    if (!std::isfinite(d)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(d) - 2.0 - kBandSlack;
}

} // namespace

double discriminant(const CellPotential& cell, double E, int steps) {
    return monodromy(cell, E, steps).trace();
}

BandList band_scan(const CellPotential& cell, double e_min, double e_max, int grid, double tol,
                   int steps) {
    if (grid < 2 || !(tol > 0.0) || !(e_max >= e_min)) {
        throw Error(ErrorKind::InvalidArgument, "band_scan needs grid >= 2, tol > 0, e_min <= e_max");
    }
    const auto xs = linspace(e_min, e_max, grid);
    const auto ds = parallel_map<double>(xs.size(), [&](std::size_t i) { return discriminant(cell, xs[i], steps); });
    std::vector<double> gs(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        gs[i] = std::isfinite(ds[i]) ? std::abs(ds[i]) - 2.0 - kBandSlack : std::numeric_limits<double>::infinity();
    }
    auto g = [&](double E) { return band_gap_function(cell, E, steps); };
    auto delta = [&](double E) { return discriminant(cell, E, steps); };

    BandList bands;
    std::size_t i = 0;
    while (i < xs.size()) {
        if (gs[i] > 0.0) {
            // Delta jumping from above 2 to below -2 hides a band narrower than the grid.
            if (i + 1 < xs.size() && gs[i + 1] > 0.0 && std::isfinite(ds[i]) && std::isfinite(ds[i + 1]) &&
                (ds[i] > 0.0) != (ds[i + 1] > 0.0)) {
                const double mid = bisect(delta, xs[i], xs[i + 1], ds[i], 0.0);
                const double gm = g(mid);
                if (gm <= 0.0) {
                    bands.push_back({bisect(g, xs[i], mid, gs[i], tol), bisect(g, mid, xs[i + 1], gm, tol)});
                } else {
                    // narrower than double resolution at this energy
                    bands.push_back({mid, mid});
                }
            }
            ++i;
            continue;
        }
        const std::size_t first = i;
        while (i + 1 < xs.size() && gs[i + 1] <= 0.0) {
            ++i;
        }
        const std::size_t last = i;
        Band b;
        b.e_lo = first == 0 ? xs.front() : bisect(g, xs[first - 1], xs[first], gs[first - 1], tol);
        b.e_hi = last + 1 == xs.size() ? xs.back() : bisect(g, xs[last], xs[last + 1], gs[last], tol);
        bands.push_back(b);
        ++i;
    }
    return bands;
}

std::vector<double> floquet_eigenvalues(const CellPotential& cell, bool antiperiodic, double e_min,
                                        double e_max, int grid, double tol, int steps) {
    if (!(e_max > e_min)) {
        return {};
    }
    const double target = antiperiodic ? -2.0 : 2.0;
    auto f = [&](double E) { return discriminant(cell, E, steps) - target; };
    const auto xs = linspace(e_min, e_max, grid);
    const auto fs = parallel_map<double>(xs.size(), [&](std::size_t i) { return f(xs[i]); });
    RootScanOptions opts;
    opts.tol = tol;
    return scan_roots(f, xs, fs, opts);
}

std::vector<SliceRow> spectrum_slice_grid(const CellFamily& family, double e_min, double e_max,
                                          double lambda_min, double lambda_max, int e_grid,
                                          int lambda_grid, int steps) {
    if (e_grid < 2) {
        throw Error(ErrorKind::InvalidArgument, "energy grid needs at least two points");
    }
    std::vector<double> lambdas;
    if (lambda_max == lambda_min) {
        lambdas = {lambda_min};
    } else {
        lambdas = linspace(lambda_min, lambda_max, lambda_grid);
    }
    const auto energies = linspace(e_min, e_max, e_grid);
    const std::size_t ne = energies.size();
    std::vector<SliceRow> rows(lambdas.size() * ne);
    parallel_for(lambdas.size(), [&](std::size_t li) {
        const CellPotential cell = family.at(lambdas[li]);
        for (std::size_t ei = 0; ei < ne; ++ei) {
            const double d = discriminant(cell, energies[ei], steps);
            rows[li * ne + ei] = {lambdas[li], energies[ei], d, std::abs(d) <= 2.0};
        }
    });
    return rows;
}

} // namespace fibspec
