#pragma once

#include "fibspec/fibwords.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fibspec {

struct ZeroPiece {};

struct ConstantPiece {
    double value = 0.0;
};

struct Segment {
    double value = 0.0;
    double length = 0.0;
};

struct PiecewiseConstantPiece {
    std::vector<Segment> segments;
};

/// Polynomial on [0, 1], coefficients in ascending degree.
struct PolynomialPiece {
    std::vector<double> coefficients;
};

/// exp(1 + 1/((2x-1)^2 - 1)) on (0, 1), zero at the endpoints.
struct BumpPiece {};

/// A potential fragment f_j placed on one cell of the Fibonacci potential.
class PotentialPiece {
public:
    using Kind = std::variant<ZeroPiece, ConstantPiece, PiecewiseConstantPiece,
                              PolynomialPiece, BumpPiece>;

    static PotentialPiece zero();
    static PotentialPiece constant(double value);
    /// Segments must have positive lengths; the piece length is their sum.
    static PotentialPiece piecewise_constant(std::vector<Segment> segments);
    static PotentialPiece polynomial(std::vector<double> coefficients);
    static PotentialPiece bump();
    /// 50 x (x - 1/3) (x - 1).
    static PotentialPiece split_cubic();
    /// 1 on [0, 1/2), -c on [1/2, 1).
    static PotentialPiece discrete_split(double c = 4.0);

    const Kind& kind() const noexcept { return kind_; }
    double length() const noexcept { return length_; }

    /// Segments with constant value for Zero, Constant and PiecewiseConstant
    /// pieces; nullopt for pieces without a closed-form transfer matrix.
    std::optional<std::vector<Segment>> constant_segments() const;

    /// Upper bound on |f| over the piece (exact for all kinds except
    /// polynomials, which are sampled on a fine grid).
    double max_abs() const;

    /// Canonical spec string accepted by parse_piece.
    std::string to_spec() const;

private:
    explicit PotentialPiece(Kind kind, double length) : kind_(std::move(kind)), length_(length) {}

    Kind kind_;
    double length_ = 1.0;
};

/// Pointwise value on [0, length). Bump returns exactly 0 at x = 0.
double evaluate(const PotentialPiece& piece, double x);

/// Same as evaluate but also accepts the right endpoint x = length, using the
/// closed form (or the last segment's value for piecewise-constant pieces).
/// Integrators need this to sample the endpoint of a cell.
double evaluate_closed(const PotentialPiece& piece, double x);

struct SplitReport {
    bool is_split = false;
    double x_star = 0.0;
};

/// Numerical check of the split-function conditions on a unit-length piece:
/// f(0) = f(1) = 0, f > 0 then f < 0 with one sign change at x_star,
/// f'(x_star) < 0 and f'(1) > 0.
SplitReport validate_split(const PotentialPiece& piece, int grid_points = 1000);

/// Periodic cell: copies of lambda * f_{w_n} placed consecutively.
class CellPotential {
public:
    const Word& word() const noexcept { return word_; }
    const PotentialPiece& piece0() const noexcept { return piece0_; }
    const PotentialPiece& piece1() const noexcept { return piece1_; }
    double coupling() const noexcept { return coupling_; }
    double period() const noexcept { return offsets_.back(); }

    const PotentialPiece& piece_for(std::uint8_t letter) const noexcept {
        return letter == 0 ? piece0_ : piece1_;
    }
    /// Left endpoint of the n-th letter's interval.
    double offset(std::size_t n) const { return offsets_.at(n); }

    /// V(x) for x in [0, period).
    double evaluate(double x) const;

private:
    friend CellPotential assemble(Word, PotentialPiece, PotentialPiece, double);
    CellPotential(Word word, PotentialPiece p0, PotentialPiece p1, double lambda);

    Word word_;
    PotentialPiece piece0_;
    PotentialPiece piece1_;
    double coupling_ = 0.0;
    std::vector<double> offsets_;
};

CellPotential assemble(Word word, PotentialPiece piece0, PotentialPiece piece1, double lambda);

/// Word and pieces without a coupling: one cell per lambda.
struct CellFamily {
    Word word;
    PotentialPiece piece0;
    PotentialPiece piece1;

    CellPotential at(double lambda) const { return assemble(word, piece0, piece1, lambda); }
};

/// Parses "zero", "const:<v>", "pwc:<v1>@<l1>,<v2>@<l2>,...",
/// "poly:<c0>,<c1>,...", "bump", "splitcubic".
PotentialPiece parse_piece(std::string_view spec);

/// Round-trip exact decimal parsing (std::from_chars).
double parse_double(std::string_view text);

} // namespace fibspec
