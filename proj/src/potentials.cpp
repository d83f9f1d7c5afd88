#include "fibspec/potentials.hpp"

#include "fibspec/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace fibspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double bump_value(double x) {
    if (x <= 0.0 || x >= 1.0) {
        return 0.0;
    }
    const double s = 2.0 * x - 1.0;
    return std::exp(1.0 + 1.0 / (s * s - 1.0));
}

double segment_value(const std::vector<Segment>& segs, double x) {
    double start = 0.0;
    for (const auto& s : segs) {
        if (x < start + s.length) {
            return s.value;
        }
        start += s.length;
    }
    return segs.back().value;
}

double closed_value(const PotentialPiece& piece, double x) {
    return std::visit(overloaded{
                          [](const ZeroPiece&) { return 0.0; },
                          [](const ConstantPiece& c) { return c.value; },
                          [x](const PiecewiseConstantPiece& p) { return segment_value(p.segments, x); },
                          [x](const PolynomialPiece& p) { return horner(p.coefficients, x); },
                          [x](const BumpPiece&) { return bump_value(x); },
                      },
                      piece.kind());
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

PotentialPiece PotentialPiece::zero() { return PotentialPiece(ZeroPiece{}, 1.0); }

PotentialPiece PotentialPiece::constant(double value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::InvalidArgument, "constant piece value must be finite");
    }
    return PotentialPiece(ConstantPiece{value}, 1.0);
}

PotentialPiece PotentialPiece::piecewise_constant(std::vector<Segment> segments) {
    if (segments.empty()) {
        throw Error(ErrorKind::InvalidArgument, "piecewise-constant piece needs at least one segment");
    }
    double total = 0.0;
    for (const auto& s : segments) {
        if (!(s.length > 0.0) || !std::isfinite(s.length) || !std::isfinite(s.value)) {
            throw Error(ErrorKind::InvalidArgument,
                        "piecewise-constant segments need finite values and positive lengths");
        }
        total += s.length;
    }
    return PotentialPiece(PiecewiseConstantPiece{std::move(segments)}, total);
}

PotentialPiece PotentialPiece::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) {
        coefficients.push_back(0.0);
    }
    for (double c : coefficients) {
        if (!std::isfinite(c)) {
            throw Error(ErrorKind::InvalidArgument, "polynomial coefficients must be finite");
        }
    }
    return PotentialPiece(PolynomialPiece{std::move(coefficients)}, 1.0);
}

PotentialPiece PotentialPiece::bump() { return PotentialPiece(BumpPiece{}, 1.0); }

PotentialPiece PotentialPiece::split_cubic() {
    // 50 x (x - 1/3) (x - 1) = 50 x^3 - (200/3) x^2 + (50/3) x
    return polynomial({0.0, 50.0 / 3.0, -200.0 / 3.0, 50.0});
}

PotentialPiece PotentialPiece::discrete_split(double c) {
    return piecewise_constant({{1.0, 0.5}, {-c, 0.5}});
}

std::optional<std::vector<Segment>> PotentialPiece::constant_segments() const {
    return std::visit(overloaded{
                          [](const ZeroPiece&) -> std::optional<std::vector<Segment>> {
                              return std::vector<Segment>{{0.0, 1.0}};
                          },
                          [](const ConstantPiece& c) -> std::optional<std::vector<Segment>> {
                              return std::vector<Segment>{{c.value, 1.0}};
                          },
                          [](const PiecewiseConstantPiece& p) -> std::optional<std::vector<Segment>> {
                              return p.segments;
                          },
                          [](const auto&) -> std::optional<std::vector<Segment>> { return std::nullopt; },
                      },
                      kind_);
}

double PotentialPiece::max_abs() const {
    return std::visit(overloaded{
                          [](const ZeroPiece&) { return 0.0; },
                          [](const ConstantPiece& c) { return std::abs(c.value); },
                          [](const PiecewiseConstantPiece& p) {
                              double m = 0.0;
                              for (const auto& s : p.segments) {
                                  m = std::max(m, std::abs(s.value));
                              }
                              return m;
                          },
                          [](const PolynomialPiece& p) {
                              double m = 0.0;
                              constexpr int n = 4096;
                              for (int i = 0; i <= n; ++i) {
                                  m = std::max(m, std::abs(horner(p.coefficients, double(i) / n)));
                              }
                              return m;
                          },
                          [](const BumpPiece&) { return 1.0; },
                      },
                      kind_);
}

std::string PotentialPiece::to_spec() const {
    return std::visit(overloaded{
                          [](const ZeroPiece&) { return std::string("zero"); },
                          [](const ConstantPiece& c) { return "const:" + shortest(c.value); },
                          [](const PiecewiseConstantPiece& p) {
                              std::string s = "pwc:";
                              for (std::size_t i = 0; i < p.segments.size(); ++i) {
                                  if (i) s += ',';
                                  s += shortest(p.segments[i].value) + "@" + shortest(p.segments[i].length);
                              }
                              return s;
                          },
                          [](const PolynomialPiece& p) {
                              std::string s = "poly:";
                              for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
                                  if (i) s += ',';
                                  s += shortest(p.coefficients[i]);
                              }
                              return s;
                          },
                          [](const BumpPiece&) { return std::string("bump"); },
                      },
                      kind_);
}

double evaluate(const PotentialPiece& piece, double x) {
    if (!(x >= 0.0 && x < piece.length())) {
        throw Error(ErrorKind::Domain, "x = " + shortest(x) + " outside [0, " +
                                           shortest(piece.length()) + ")");
    }
    return closed_value(piece, x);
}

double evaluate_closed(const PotentialPiece& piece, double x) {
    if (!(x >= 0.0 && x <= piece.length())) {
        throw Error(ErrorKind::Domain, "x = " + shortest(x) + " outside [0, " +
                                           shortest(piece.length()) + "]");
    }
    return closed_value(piece, x);
}

SplitReport validate_split(const PotentialPiece& piece, int grid_points) {
    if (grid_points < 100) {
        throw Error(ErrorKind::InvalidArgument, "validate_split needs at least 100 grid points");
    }
    if (piece.length() != 1.0) {
        throw Error(ErrorKind::Unsupported, "split validation requires a unit-length piece");
    }
    constexpr double endpoint_tol = 1e-10;
    auto f = [&](double x) { return closed_value(piece, x); };
    if (std::abs(f(0.0)) > endpoint_tol || std::abs(f(1.0)) > endpoint_tol) {
        return {};
    }

    // Interior samples must read + ... + - ... - with exactly one change.
    int change = -1;
    for (int i = 1; i < grid_points; ++i) {
        const double x = double(i) / grid_points;
        const double v = f(x);
        if (v == 0.0) {
            return {};
        }
        const bool positive = v > 0.0;
        if (change < 0) {
            if (!positive) {
                if (i == 1) {
                    return {};
                }
                change = i;
            }
        } else if (positive) {
            return {};
        }
    }
    if (change < 0) {
        return {};
    }

    double lo = double(change - 1) / grid_points;
    double hi = double(change) / grid_points;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x_star = 0.5 * (lo + hi);

    // Slopes must be nonzero on the scale of the piece; a tangential zero
    // shows up as a difference quotient of order h.
    constexpr double h = 1e-6;
    double peak = 0.0;
    for (int i = 1; i < grid_points; ++i) {
        peak = std::max(peak, std::abs(f(double(i) / grid_points)));
    }
    const double min_slope = 1e-3 * peak;
    const double slope_star = (f(x_star + h) - f(x_star - h)) / (2.0 * h);
    const double slope_end = (f(1.0) - f(1.0 - h)) / h;
    if (!(slope_star < -min_slope) || !(slope_end > min_slope)) {
        return {};
    }
    return {true, x_star};
}

CellPotential::CellPotential(Word word, PotentialPiece p0, PotentialPiece p1, double lambda)
    : word_(std::move(word)), piece0_(std::move(p0)), piece1_(std::move(p1)), coupling_(lambda) {
    offsets_.reserve(word_.size() + 1);
    offsets_.push_back(0.0);
    for (auto letter : word_) {
        offsets_.push_back(offsets_.back() + piece_for(letter).length());
    }
}

double CellPotential::evaluate(double x) const {
    if (!(x >= 0.0 && x < period())) {
        throw Error(ErrorKind::Domain, "x = " + shortest(x) + " outside the cell [0, " +
                                           shortest(period()) + ")");
    }
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), x);
    const auto n = static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
    const auto& piece = piece_for(word_[n]);
    const double local = std::min(x - offsets_[n], std::nextafter(piece.length(), 0.0));
    return coupling_ * fibspec::evaluate(piece, local);
}

CellPotential assemble(Word word, PotentialPiece piece0, PotentialPiece piece1, double lambda) {
    if (word.empty()) {
        throw Error(ErrorKind::InvalidCell, "cell word is empty");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::InvalidArgument, "coupling must be finite and nonnegative");
    }
    return CellPotential(std::move(word), std::move(piece0), std::move(piece1), lambda);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || first == last) {
        throw Error(ErrorKind::Config, "cannot parse number '" + std::string(text) + "'");
    }
    return v;
}

PotentialPiece parse_piece(std::string_view spec) {
    auto colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    auto no_body = [&] {
        if (colon != std::string_view::npos) {
            throw Error(ErrorKind::Config, "piece '" + std::string(head) + "' takes no parameters");
        }
    };
    try {
        if (head == "zero") {
            no_body();
            return PotentialPiece::zero();
        }
        if (head == "bump") {
            no_body();
            return PotentialPiece::bump();
        }
        if (head == "splitcubic") {
            no_body();
            return PotentialPiece::split_cubic();
        }
        if (head == "const") {
            return PotentialPiece::constant(parse_double(body));
        }
        if (head == "pwc") {
            std::vector<Segment> segs;
            for (auto item : split(body, ',')) {
                auto at = item.find('@');
                if (at == std::string_view::npos) {
                    throw Error(ErrorKind::Config, "pwc segment '" + std::string(item) + "' lacks '@<length>'");
                }
                segs.push_back({parse_double(item.substr(0, at)), parse_double(item.substr(at + 1))});
            }
            return PotentialPiece::piecewise_constant(std::move(segs));
        }
        if (head == "poly") {
            std::vector<double> coeffs;
            for (auto item : split(body, ',')) {
                coeffs.push_back(parse_double(item));
            }
            return PotentialPiece::polynomial(std::move(coeffs));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) {
            throw;
        }
        throw Error(ErrorKind::Config, "invalid piece spec '" + std::string(spec) + "': " + e.what());
    }
    throw Error(ErrorKind::Config, "unknown piece spec '" + std::string(spec) + "'");
}

} // namespace fibspec
