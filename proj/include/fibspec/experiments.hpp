#pragma once

#include "fibspec/potentials.hpp"
#include "fibspec/sl2.hpp"
#include "fibspec/tracemap.hpp"

#include <string>
#include <vector>

namespace fibspec {

struct CouplingHit {
    double lambda_value = 0.0;
    double trace_residual = 0.0;
    double b_squared_residual = 0.0; // max |B^2 + I|
    double invariant_at_E = 0.0;
    double b_norm = 0.0;
};

struct CouplingSearch {
    double energy = 0.0;
    std::vector<CouplingHit> hits;
    std::vector<std::string> warnings;
};

/// 4 pi^2 n^2, where the transfer matrix of a unit zero cell is the identity.
double counterexample_energy(int n);

/// Monodromy of the letter-1 cell at the given coupling.
SL2Matrix counterexample_matrix(const PotentialPiece& piece1, double lambda, double E, int steps);

/// Couplings in [lambda_min, lambda_max] with tr B(E, lambda) = 0 at
/// E = 4 pi^2 n^2 (letter 0 is the zero piece). Sign changes on a grid of
/// spacing scan_step are bisected to tol; dips of |tr B| that reach zero
/// between grid points without a sign change are reported as warnings.
CouplingSearch counterexample_search(const PotentialPiece& piece1, int n, double lambda_min,
                                     double lambda_max, double scan_step, double tol, int steps);

struct DivergenceRow {
    double lambda = 0.0;
    double min_trace = 0.0;
    double argmin_E = 0.0;
};

struct DivergenceTable {
    std::vector<DivergenceRow> rows;
    bool flagged = false; // piece vanishes on an interval
    std::string note;
};

/// Minimum over E in [-e_max, e_max] (e_grid points) of tr of the letter-1
/// cell monodromy, per coupling. Negative pieces are rejected; pieces with an
/// interval of zeros run but come back flagged.
DivergenceTable trace_divergence_check(const PotentialPiece& piece1, double e_max,
                                       const std::vector<double>& lambda_grid, int e_grid, int steps);

/// One record per energy of linspace(e_min, e_max, e_grid).
std::vector<InvariantRecord> invariant_scan(const CellFamily& family, double e_min, double e_max,
                                            double lambda, int e_grid, int steps);

} // namespace fibspec
