#include "fibspec/experiments.hpp"

#include "fibspec/error.hpp"
#include "fibspec/parallel.hpp"
#include "fibspec/roots.hpp"
#include "fibspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fibspec {

double counterexample_energy(int n) {
    if (n < 1) {
        throw Error(ErrorKind::InvalidArgument, "n must be a positive integer");
    }
    const double k = 2.0 * std::numbers::pi * n;
    return k * k;
}

SL2Matrix counterexample_matrix(const PotentialPiece& piece1, double lambda, double E, int steps) {
    return transfer_piece(piece1, lambda, E, steps);
}

CouplingSearch counterexample_search(const PotentialPiece& piece1, int n, double lambda_min,
                                     double lambda_max, double scan_step, double tol, int steps) {
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min)) {
        throw Error(ErrorKind::InvalidArgument, "coupling range needs 0 < lambda_min < lambda_max");
    }
    if (!(scan_step > 0.0) || !(tol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "scan_step and tol must be positive");
    }
    CouplingSearch out;
    out.energy = counterexample_energy(n);
    const double E = out.energy;
    auto trace = [&](double lambda) { return counterexample_matrix(piece1, lambda, E, steps).trace(); };

    const auto count = static_cast<std::size_t>(std::ceil((lambda_max - lambda_min) / scan_step)) + 1;
    std::vector<double> ls(count);
    for (std::size_t i = 0; i < count; ++i) {
        ls[i] = std::min(lambda_max, lambda_min + scan_step * static_cast<double>(i));
    }
    const auto ts = parallel_map<double>(count, [&](std::size_t i) { return trace(ls[i]); });

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        if (ts[i] == 0.0) {
            roots.push_back(ls[i]);
        } else if (ts[i] * ts[i + 1] < 0.0) {
            // bisect to the floating-point limit; the bracket is then far below tol
            roots.push_back(bisect(trace, ls[i], ls[i + 1], ts[i], 0.0));
        }
    }
    if (count > 0 && ts[count - 1] == 0.0) {
        roots.push_back(ls[count - 1]);
    }
    // dips of |tr| between two same-signed neighbours
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double a = std::abs(ts[i - 1]), b = std::abs(ts[i]), c = std::abs(ts[i + 1]);
        if (!(b < a && b <= c) || ts[i - 1] * ts[i] <= 0.0 || ts[i] * ts[i + 1] <= 0.0) {
            continue;
        }
        const double x = refine_extremum([&](double l) { return std::abs(trace(l)); }, ls[i - 1], ls[i + 1],
                                         true, tol);
        if (trace(x) * ts[i] <= 0.0) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "trace changes sign twice in (" << ls[i - 1] << ", " << ls[i + 1]
                << ") between scan points; reduce scan_step";
            out.warnings.push_back(msg.str());
        }
    }

    for (double lambda : roots) {
        const SL2Matrix B = counterexample_matrix(piece1, lambda, E, steps);
        const SL2Matrix B2 = B * B + SL2Matrix::identity();
        const TraceTriple g =
            curve_of_initial_conditions(PotentialPiece::zero(), piece1, E, lambda, steps);
        out.hits.push_back(CouplingHit{lambda, std::abs(B.trace()), B2.max_abs(), fricke_vogt(g), B.norm()});
    }
    return out;
}

DivergenceTable trace_divergence_check(const PotentialPiece& piece1, double e_max,
                                       const std::vector<double>& lambda_grid, int e_grid, int steps) {
    if (e_grid < 2) {
        throw Error(ErrorKind::InvalidArgument, "energy grid needs at least two points");
    }
    DivergenceTable out;
    constexpr int samples = 4096;
    int run = 0;
    for (int i = 0; i <= samples; ++i) {
        const double v = evaluate_closed(piece1, piece1.length() * i / samples);
        if (v < 0.0) {
            throw Error(ErrorKind::Precondition, "trace divergence needs a nonnegative piece");
        }
        run = (v == 0.0) ? run + 1 : 0;
        if (run >= 3) {
            out.flagged = true;
        }
    }
    if (out.flagged) {
        out.note = "piece vanishes on an interval; divergence is not expected";
    }
    const auto es = linspace(-e_max, e_max, e_grid);
    out.rows.resize(lambda_grid.size());
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        const double lambda = lambda_grid[k];
        const auto tr = parallel_map<double>(es.size(), [&](std::size_t i) {
            return transfer_piece(piece1, lambda, es[i], steps).trace();
        });
        for (double v : tr) {
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::IntegrationFailure, "letter-1 trace overflowed at lambda " + std::to_string(lambda));
            }
        }
        const auto it = std::min_element(tr.begin(), tr.end());
        out.rows[k] = {lambda, *it, es[static_cast<std::size_t>(it - tr.begin())]};
    }
    return out;
}

std::vector<InvariantRecord> invariant_scan(const CellFamily& family, double e_min, double e_max,
                                            double lambda, int e_grid, int steps) {
    if (e_grid < 2) {
        throw Error(ErrorKind::InvalidArgument, "energy grid needs at least two points");
    }
    const auto es = linspace(e_min, e_max, e_grid);
    return parallel_map<InvariantRecord>(es.size(), [&](std::size_t i) {
        const double E = es[i];
        const TraceTriple g = curve_of_initial_conditions(family.piece0, family.piece1, E, lambda, steps);
        InvariantRecord r;
        r.E = E;
        r.x2 = g.x;
        r.x1 = g.y;
        r.x0 = g.z;
        r.invariant_value = fricke_vogt(g);
        r.dim_proxy = dimension_upper_proxy(r.invariant_value);
        r.candidate_spectrum = escape_test(g).status == OrbitStatus::Bounded;
        return r;
    });
}

} // namespace fibspec
