#pragma once

#include "fibspec/sl2.hpp"

namespace fibspec {

/// Element of the projective line: a unit vector with sign canonicalized so the
/// first nonzero component is positive.
class Direction {
public:
    /// Normalizes and canonicalizes; throws on the zero vector.
    explicit Direction(Vec2 v);

    Vec2 vec() const noexcept { return v_; }
    double x() const noexcept { return v_.x; }
    double y() const noexcept { return v_.y; }

private:
    Vec2 v_;
};

struct SingularDirections {
    Direction expanding;
    Direction contracting;
};

/// Unit eigenvectors of m^T m for its largest / smallest eigenvalue.
/// Requires ||m|| > 1 + 1e-12.
SingularDirections singular_directions(const SL2Matrix& m);

struct EigenDirection {
    Direction direction;
    double eigenvalue;
};

/// Eigen-direction of a hyperbolic matrix for the eigenvalue with modulus > 1.
EigenDirection eigen_direction(const SL2Matrix& m);

/// Angle in RP^1, in [0, pi/2].
double angle_rp1(const Direction& u, const Direction& v);

struct AngleBound {
    double angle;
    double bound;
    bool holds;
};

/// Angle between the expanding eigen-direction V(m) and the image m U(m) of the
/// most expanded direction, against pi / (2 |eigenvalue| ||m||).
AngleBound check_angle_bound(const SL2Matrix& m);

} // namespace fibspec
