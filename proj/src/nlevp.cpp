#include "fibspec/nlevp.hpp"

#include "fibspec/error.hpp"
#include "fibspec/parallel.hpp"
#include "fibspec/roots.hpp"

#include <cmath>
#include <numbers>

namespace fibspec {

namespace {

using cd = std::complex<double>;

cd phase(double theta) { return std::polar(1.0, theta); }

cd phi_of(double E, double value) { return std::sqrt(cd(E - value, 0.0)); }

void require_nondegenerate(const std::vector<cd>& phis) {
    for (const auto& p : phis) {
        if (p == cd(0.0, 0.0)) {
            throw Error(ErrorKind::DegenerateEnergy,
                        "E equals a subdomain potential value; the sin/cos basis degenerates");
        }
    }
}

// Real entries of the sin(phi x)/phi basis for w2 = phi^2 = E - value.
struct RealBasis {
    double sinc; // sin(phi h) / phi
    double cosv; // cos(phi h)
};

RealBasis real_basis(double w2, double h) {
    if (w2 > 0.0) {
        const double w = std::sqrt(w2);
        return {std::sin(w * h) / w, std::cos(w * h)};
    }
    if (w2 < 0.0) {
        const double k = std::sqrt(-w2);
        return {std::sinh(k * h) / k, std::cosh(k * h)};
    }
    return {h, 1.0};
}

bool is_zero_or_pi(double theta) { return theta == 0.0 || theta == std::numbers::pi; }

} // namespace

NlevpProfile NlevpProfile::from_word(const Word& word) {
    NlevpProfile p;
    for (auto letter : word) {
        p.values.push_back(letter == 1 ? 1.0 : 0.0);
        p.lengths.push_back(1.0);
    }
    return p;
}

NlevpProfile NlevpProfile::half_cells(const Word& word, const PotentialPiece& split_pwc) {
    const auto segs = split_pwc.constant_segments();
    const auto* pwc = std::get_if<PiecewiseConstantPiece>(&split_pwc.kind());
    if (!segs || !pwc || segs->size() != 2) {
        throw Error(ErrorKind::InvalidArgument, "half-cell profile needs a two-segment piecewise-constant piece");
    }
    NlevpProfile p;
    for (auto letter : word) {
        for (const auto& s : *segs) {
            p.values.push_back(letter == 1 ? s.value : 0.0);
            p.lengths.push_back(s.length);
        }
    }
    return p;
}

NlevpProfile NlevpProfile::from_cell(const Word& word, const PotentialPiece& piece0,
                                     const PotentialPiece& piece1) {
    const auto s0 = piece0.constant_segments();
    const auto s1 = piece1.constant_segments();
    if (!s0 || !s1) {
        throw Error(ErrorKind::Unsupported, "matrix formulation needs piecewise-constant pieces");
    }
    NlevpProfile p;
    for (auto letter : word) {
        for (const auto& s : letter == 1 ? *s1 : *s0) {
            if (s.length > 0.0) {
                p.values.push_back(s.value);
                p.lengths.push_back(s.length);
            }
        }
    }
    return p;
}

bool NlevpMatrix::is_real(double tol) const {
    return entries.imag().cwiseAbs().maxCoeff() <= tol;
}

NlevpMatrix build_period2(double E, double lambda, double theta) {
    if (E == 0.0 || E == lambda) {
        throw Error(ErrorKind::DegenerateEnergy, "period-2 matrix requires E != 0 and E != lambda");
    }
    const cd s1 = std::sqrt(cd(E - lambda, 0.0));
    const cd s0 = std::sqrt(cd(E, 0.0));
    const cd ph = phase(theta);
    NlevpMatrix m;
    m.E = E;
    m.lambda = lambda;
    m.theta = theta;
    m.entries.resize(4, 4);
    m.entries << std::sin(s1), std::cos(s1), 0.0, -1.0,
                 s1 * std::cos(s1), -s1 * std::sin(s1), -s0, 0.0,
                 0.0, -ph, std::sin(s0), std::cos(s0),
                 -ph * s1, 0.0, s0 * std::cos(s0), -s0 * std::sin(s0);
    return m;
}

NlevpMatrix build_profile(double E, double lambda, double theta, const NlevpProfile& profile) {
    const std::size_t n = profile.subdomains();
    if (n == 0) {
        throw Error(ErrorKind::InvalidCell, "empty profile");
    }
    std::vector<cd> phis(n);
    for (std::size_t i = 0; i < n; ++i) {
        phis[i] = phi_of(E, lambda * profile.values[i]);
    }
    require_nondegenerate(phis);
    const cd ph = phase(theta);
    const auto dim = static_cast<Eigen::Index>(2 * n);
    NlevpMatrix m;
    m.E = E;
    m.lambda = lambda;
    m.theta = theta;
    m.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(2 * i);
        const cd arg = phis[i] * profile.lengths[i];
        m.entries(r, r) += std::sin(arg);
        m.entries(r, r + 1) += std::cos(arg);
        m.entries(r + 1, r) += phis[i] * std::cos(arg);
        m.entries(r + 1, r + 1) += -phis[i] * std::sin(arg);
        if (i + 1 < n) {
            m.entries(r, r + 3) += -1.0;
            m.entries(r + 1, r + 2) += -phis[i + 1];
        } else {
            m.entries(r, 1) += -ph;
            m.entries(r + 1, 0) += -phis[0] * ph;
        }
    }
    return m;
}

NlevpMatrix build_general(double E, double lambda, double theta, const Word& word) {
    return build_profile(E, lambda, theta, NlevpProfile::from_word(word));
}

NlevpMatrix build_halfcell(double E, double lambda, double theta, const Word& word,
                           const PotentialPiece& split_pwc) {
    return build_profile(E, lambda, theta, NlevpProfile::half_cells(word, split_pwc));
}

std::complex<double> determinant(const NlevpMatrix& m) {
    return m.entries.partialPivLu().determinant();
}

SingularValueRange singular_value_range(const NlevpMatrix& m) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.entries);
    const auto& sv = svd.singularValues();
    return {sv(sv.size() - 1), sv(0)};
}

double characteristic(const NlevpProfile& profile, double E, double lambda, bool antiperiodic) {
    const std::size_t n = profile.subdomains();
    const auto dim = static_cast<Eigen::Index>(2 * n);
    const double wrap = antiperiodic ? -1.0 : 1.0;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(2 * i);
        const double w2 = E - lambda * profile.values[i];
        const auto b = real_basis(w2, profile.lengths[i]);
        t(r, r) += b.sinc;
        t(r, r + 1) += b.cosv;
        t(r + 1, r) += b.cosv;
        t(r + 1, r + 1) += -w2 * b.sinc;
        if (i + 1 < n) {
            t(r, r + 3) += -1.0;
            t(r + 1, r + 2) += -1.0;
        } else {
            t(r, 1) += -wrap;
            t(r + 1, 0) += -wrap;
        }
    }
    for (Eigen::Index r = 0; r < dim; ++r) {
        const double norm = t.row(r).norm();
        if (norm > 0.0) {
            t.row(r) /= norm;
        }
    }
    return t.partialPivLu().determinant();
}

std::vector<double> eigenvalue_scan(const NlevpProfile& profile, double lambda, double theta,
                                    double e_min, double e_max, int grid, double tol) {
    if (!is_zero_or_pi(theta)) {
        throw Error(ErrorKind::Precondition, "eigenvalue_scan needs theta = 0 or theta = pi");
    }
    if (!(e_max > e_min)) {
        return {};
    }
    const bool anti = theta != 0.0;
    auto f = [&](double E) { return characteristic(profile, E, lambda, anti); };
    const auto xs = linspace(e_min, e_max, grid);
    const auto fs = parallel_map<double>(xs.size(), [&](std::size_t i) { return f(xs[i]); });
    RootScanOptions opts;
    opts.tol = tol;
    return scan_roots(f, xs, fs, opts);
}

} // namespace fibspec
