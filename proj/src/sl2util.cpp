#include "fibspec/sl2util.hpp"

#include "fibspec/error.hpp"

#include <cmath>
#include <numbers>

namespace fibspec {

Direction::Direction(Vec2 v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidArgument, "direction of a zero or non-finite vector");
    }
    v = {v.x / n, v.y / n};
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) {
        v = {-v.x, -v.y};
    }
    v_ = v;
}

SingularDirections singular_directions(const SL2Matrix& m) {
    if (!(m.norm() > 1.0 + 1e-12)) {
        throw Error(ErrorKind::NoDistinguishedDirection, "matrix norm is 1; no expanding direction");
    }
    // m^T m = [[p, q], [q, r]]; the top eigenvector sits at angle psi with
    // tan(2 psi) = 2q / (p - r).
    const double p = m.a11 * m.a11 + m.a21 * m.a21;
    const double q = m.a11 * m.a12 + m.a21 * m.a22;
    const double r = m.a12 * m.a12 + m.a22 * m.a22;
    const double psi = 0.5 * std::atan2(2.0 * q, p - r);
    const Vec2 u{std::cos(psi), std::sin(psi)};
    return {Direction(u), Direction(Vec2{-u.y, u.x})};
}

EigenDirection eigen_direction(const SL2Matrix& m) {
    const double t = m.trace();
    if (!(std::abs(t) > 2.0)) {
        throw Error(ErrorKind::NotHyperbolic, "|trace| <= 2");
    }
    const double mu = 0.5 * (t + std::copysign(std::sqrt((t - 2.0) * (t + 2.0)), t));
    // Two candidate kernel vectors of m - mu I; keep the better conditioned one.
    const Vec2 from_row1{m.a12, mu - m.a11};
    const Vec2 from_row2{mu - m.a22, m.a21};
    const Vec2 v = from_row1.norm() >= from_row2.norm() ? from_row1 : from_row2;
    return {Direction(v), mu};
}

double angle_rp1(const Direction& u, const Direction& v) {
    return std::atan2(std::abs(cross(u.vec(), v.vec())), std::abs(dot(u.vec(), v.vec())));
}

AngleBound check_angle_bound(const SL2Matrix& m) {
    const auto eig = eigen_direction(m);
    const auto dirs = singular_directions(m);
    const Direction image(m.apply(dirs.expanding.vec()));
    const double angle = angle_rp1(eig.direction, image);
    const double bound = std::numbers::pi / (2.0 * std::abs(eig.eigenvalue) * m.norm());
    return {angle, bound, angle <= bound + 1e-12};
}

} // namespace fibspec
