#pragma once

#include "fibspec/fibwords.hpp"
#include "fibspec/potentials.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace fibspec {

/// Constant-coefficient subdomains of one period, in order. Each subdomain m
/// carries lambda * value_m on an interval of length length_m; the general
/// solution there is A_m sin(phi_m x) + B_m cos(phi_m x), phi_m = sqrt(E - lambda value_m).
struct NlevpProfile {
    std::vector<double> values;
    std::vector<double> lengths;

    std::size_t subdomains() const noexcept { return values.size(); }

    /// One unit subdomain per letter: value 0 for letter 0, 1 for letter 1.
    static NlevpProfile from_word(const Word& word);
    /// One subdomain per constant segment of the piece for each letter.
    static NlevpProfile from_cell(const Word& word, const PotentialPiece& piece0,
                                  const PotentialPiece& piece1);
    /// Two subdomains per letter taken from a two-segment piecewise-constant
    /// piece for letter 1; letter 0 contributes two zero-valued subdomains.
    static NlevpProfile half_cells(const Word& word, const PotentialPiece& split_pwc);
};

/// T_{lambda,theta}(E). Unknowns are ordered (A_1, B_1, A_2, B_2, ...); row
/// 2m-1 enforces continuity of y and row 2m continuity of y' at the right end of
/// subdomain m, the last pair closing the period with the factor e^{i theta}.
struct NlevpMatrix {
    Eigen::MatrixXcd entries;
    double E = 0.0;
    double lambda = 0.0;
    double theta = 0.0;

    Eigen::Index dimension() const noexcept { return entries.rows(); }
    bool is_real(double tol = 0.0) const;
};

/// The period-2 matrix (letter 1 on [0,1], letter 0 on [1,2]) entered term by
/// term. Throws ErrorKind::DegenerateEnergy at E = 0 or E = lambda.
NlevpMatrix build_period2(double E, double lambda, double theta);

/// General period: one unit subdomain per letter (f_0 = 0, f_1 = 1).
NlevpMatrix build_general(double E, double lambda, double theta, const Word& word);

/// Half-unit subdomains for a two-segment piecewise-constant f_1; dimension 4 |word|.
NlevpMatrix build_halfcell(double E, double lambda, double theta, const Word& word,
                           const PotentialPiece& split_pwc);

/// Matrix for an arbitrary profile; throws DegenerateEnergy if any phi_m = 0.
NlevpMatrix build_profile(double E, double lambda, double theta, const NlevpProfile& profile);

std::complex<double> determinant(const NlevpMatrix& m);

struct SingularValueRange {
    double smallest;
    double largest;
};

SingularValueRange singular_value_range(const NlevpMatrix& m);

/// Real function whose zeros are the singular energies of T_{lambda,theta} for
/// theta in {0, pi}: det T with each A_m column divided by phi_m (the
/// sin(phi x)/phi basis, analytic through phi = 0) and each row scaled to unit
/// 2-norm. Equal to det T / prod(phi_m) up to a positive factor.
double characteristic(const NlevpProfile& profile, double E, double lambda, bool antiperiodic);

/// Real singular energies in [e_min, e_max] for theta in {0, pi}.
std::vector<double> eigenvalue_scan(const NlevpProfile& profile, double lambda, double theta,
                                    double e_min, double e_max, int grid, double tol);

} // namespace fibspec
