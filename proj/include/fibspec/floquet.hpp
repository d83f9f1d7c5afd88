#pragma once

#include "fibspec/potentials.hpp"

#include <vector>

namespace fibspec {

/// Closed interval of energies with |discriminant| <= 2.
struct Band {
    double e_lo = 0.0;
    double e_hi = 0.0;
};

using BandList = std::vector<Band>;

inline constexpr int kDefaultStepsPerUnit = 2048;

/// Trace of the period monodromy.
double discriminant(const CellPotential& cell, double E, int steps = kDefaultStepsPerUnit);

/// Bands inside [e_min, e_max]: the grid is classified by |Delta| <= 2, in-band
/// runs become bands, and each run boundary interior to the window is bisected
/// to tol. A sign flip of Delta between two out-of-band grid points locates a
/// band narrower than the spacing; if even its centre is not resolvable in
/// double precision it is reported with e_lo == e_hi. Bands closer together
/// than the grid spacing are merged, and a narrow band whose neighbours share
/// the sign of Delta can still be missed.
BandList band_scan(const CellPotential& cell, double e_min, double e_max, int grid, double tol,
                   int steps = kDefaultStepsPerUnit);

/// Periodic (antiperiodic = false) or antiperiodic Floquet eigenvalues in
/// [e_min, e_max]: roots of Delta(E) - 2 or Delta(E) + 2, tangential touches
/// included.
std::vector<double> floquet_eigenvalues(const CellPotential& cell, bool antiperiodic, double e_min,
                                        double e_max, int grid, double tol,
                                        int steps = kDefaultStepsPerUnit);

struct SliceRow {
    double lambda = 0.0;
    double E = 0.0;
    double discriminant = 0.0;
    bool in_spectrum = false;
};

/// Delta and the |Delta| <= 2 indicator on a lambda x E grid, lambda-major.
/// A zero-width lambda range yields a single slice.
std::vector<SliceRow> spectrum_slice_grid(const CellFamily& family, double e_min, double e_max,
                                          double lambda_min, double lambda_max, int e_grid,
                                          int lambda_grid, int steps = kDefaultStepsPerUnit);

} // namespace fibspec
