#include "cli.hpp"

#include "fibspec/error.hpp"
#include "fibspec/experiments.hpp"
#include "fibspec/floquet.hpp"
#include "fibspec/nlevp.hpp"
#include "fibspec/output.hpp"
#include "fibspec/prufer.hpp"
#include "fibspec/roots.hpp"
#include "fibspec/tracemap.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace fibspec::cli {

namespace {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

Range parse_range(const std::string& text, bool allow_empty) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::Config, "range '" + text + "' must look like lo:hi");
    }
    Range r{parse_double(std::string_view(text).substr(0, colon)),
            parse_double(std::string_view(text).substr(colon + 1))};
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.hi < r.lo || (!allow_empty && r.hi == r.lo)) {
        throw Error(ErrorKind::Config, "range '" + text + "' is empty or reversed");
    }
    return r;
}

std::int64_t parse_int(std::string_view text) {
    const double v = parse_double(text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw Error(ErrorKind::Config, "expected an integer, got '" + std::string(text) + "'");
    }
    return static_cast<std::int64_t>(v);
}

// sub:k | rot:num/den[:count] | a literal 0/1 string
Word parse_word(const std::string& text) {
    if (text.rfind("sub:", 0) == 0) {
        const auto k = parse_int(std::string_view(text).substr(4));
        if (k < 0 || k > 40) {
            throw Error(ErrorKind::Config, "substitution depth must be in [0, 40]");
        }
        return cell_word(static_cast<unsigned>(k));
    }
    if (text.rfind("rot:", 0) == 0) {
        std::string_view rest = std::string_view(text).substr(4);
        const auto slash = rest.find('/');
        if (slash == std::string_view::npos) {
            throw Error(ErrorKind::Config, "rotation word must look like rot:num/den[:count]");
        }
        const auto colon = rest.find(':', slash);
        const auto num = parse_int(rest.substr(0, slash));
        const auto den = parse_int(rest.substr(slash + 1, colon == std::string_view::npos ? std::string_view::npos
                                                                                        : colon - slash - 1));
        const auto count = colon == std::string_view::npos ? den : parse_int(rest.substr(colon + 1));
        if (den <= 0 || count <= 0 || count > 100000000) {
            throw Error(ErrorKind::Config, "rotation word needs den > 0 and a positive count");
        }
        return rotation_word(num, den, Rational{0, 1}, 0, count);
    }
    try {
        return Word::from_string(text);
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, "invalid word '" + text + "': " + e.what());
    }
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidFrequency:
    case ErrorKind::Domain:
    case ErrorKind::InvalidCell:
    case ErrorKind::Unsupported:
    case ErrorKind::Precondition:
    case ErrorKind::Config:
        return 2;
    default:
        return 3;
    }
}

// Every option of the subcommand, in declaration order, with its effective value.
Metadata echo_options(const std::string& command, const CLI::App& sub) {
    Metadata meta{{"command", command}};
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help") {
            continue;
        }
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) {
                value += (value.empty() ? "" : ",") + r;
            }
        } else {
            value = opt->get_default_str();
        }
        meta.emplace_back(name, value);
    }
    return meta;
}

struct Common {
    std::string out;
    std::string format = "csv";
    int steps = kDefaultStepsPerUnit;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("-o,--out", c.out, "output file")->required();
    sub->add_option("--format", c.format, "csv or json");
    sub->add_option("--steps", c.steps, "minimum integration steps per unit length");
}

void check_grid(int n, const char* what, int min = 2) {
    if (n < min) {
        throw Error(ErrorKind::Config, std::string(what) + " must be at least " + std::to_string(min));
    }
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::Config, std::string(what) + " must be positive");
    }
}

using Action = std::function<Table(Metadata&, std::ostream&)>;

} // namespace

int run(int argc, const char* const* argv, std::ostream& err) {
    CLI::App app{"Spectra, trace maps and Prüfer asymptotics of continuum Fibonacci operators", "fibspec"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    Common common;
    std::string word = "sub:6", piece0 = "zero", piece1 = "const:1";
    std::string e_range = "0:60", lambda_range = "0:40";
    int e_grid = 400, lambda_grid = 100;
    double tol = 1e-10;
    Action action;
    std::string command;

    // spectrum-slice
    auto* slice = app.add_subcommand("spectrum-slice", "discriminant on a (lambda, E) grid");
    add_common(slice, common);
    slice->add_option("--word", word, "sub:k, rot:num/den[:count] or a 0/1 string");
    slice->add_option("--piece0", piece0);
    slice->add_option("--piece1", piece1);
    slice->add_option("--e-range", e_range);
    slice->add_option("--lambda-range", lambda_range);
    slice->add_option("--e-grid", e_grid);
    slice->add_option("--lambda-grid", lambda_grid);
    slice->callback([&] {
        command = "spectrum-slice";
        action = [&](Metadata& meta, std::ostream&) {
            const auto er = parse_range(e_range, false);
            const auto lr = parse_range(lambda_range, true);
            check_grid(e_grid, "--e-grid");
            check_grid(lambda_grid, "--lambda-grid", 1);
            if (lr.hi > lr.lo) {
                check_grid(lambda_grid, "--lambda-grid");
            }
            CellFamily fam{parse_word(word), parse_piece(piece0), parse_piece(piece1)};
            meta.emplace_back("word_letters", fam.word.to_string());
            Table t{{"lambda", "E", "discriminant", "in_spectrum"}, {}};
            for (const auto& r :
                 spectrum_slice_grid(fam, er.lo, er.hi, lr.lo, lr.hi, e_grid, lambda_grid, common.steps)) {
                t.rows.push_back({r.lambda, r.E, r.discriminant, std::int64_t{r.in_spectrum ? 1 : 0}});
            }
            return t;
        };
    });

    // band-edges
    std::string band_lambda = "1:1";
    int band_e_grid = 4000, band_lambda_grid = 1;
    auto* bands = app.add_subcommand("band-edges", "bands of the periodic approximant");
    add_common(bands, common);
    bands->add_option("--word", word);
    bands->add_option("--piece0", piece0);
    bands->add_option("--piece1", piece1);
    bands->add_option("--e-range", e_range);
    bands->add_option("--lambda-range", band_lambda);
    bands->add_option("--e-grid", band_e_grid);
    bands->add_option("--lambda-grid", band_lambda_grid);
    bands->add_option("--tol", tol);
    bands->callback([&] {
        command = "band-edges";
        action = [&](Metadata& meta, std::ostream&) {
            const auto er = parse_range(e_range, false);
            const auto lr = parse_range(band_lambda, true);
            check_grid(band_e_grid, "--e-grid");
            check_positive(tol, "--tol");
            std::vector<double> lambdas{lr.lo};
            if (lr.hi > lr.lo) {
                check_grid(band_lambda_grid, "--lambda-grid");
                lambdas = linspace(lr.lo, lr.hi, band_lambda_grid);
            }
            CellFamily fam{parse_word(word), parse_piece(piece0), parse_piece(piece1)};
            meta.emplace_back("word_letters", fam.word.to_string());
            Table t{{"lambda", "band_index", "e_lo", "e_hi"}, {}};
            for (double l : lambdas) {
                const auto list = band_scan(fam.at(l), er.lo, er.hi, band_e_grid, tol, common.steps);
                for (std::size_t i = 0; i < list.size(); ++i) {
                    t.rows.push_back({l, static_cast<std::int64_t>(i), list[i].e_lo, list[i].e_hi});
                }
            }
            return t;
        };
    });

    // invariant-scan
    std::string inv_e_range = "-10:100";
    double lambda = 1.0;
    int inv_grid = 1000, max_iter = kDefaultEscapeIterations;
    double blowup = kDefaultBlowup;
    auto* inv = app.add_subcommand("invariant-scan", "Fricke-Vogt invariant along the curve of initial conditions");
    add_common(inv, common);
    inv->add_option("--piece0", piece0);
    inv->add_option("--piece1", piece1);
    inv->add_option("--e-range", inv_e_range);
    inv->add_option("--lambda", lambda);
    inv->add_option("--e-grid", inv_grid);
    inv->add_option("--max-iter", max_iter);
    inv->add_option("--blowup", blowup);
    inv->callback([&] {
        command = "invariant-scan";
        action = [&](Metadata&, std::ostream&) {
            const auto er = parse_range(inv_e_range, false);
            check_grid(inv_grid, "--e-grid");
            check_grid(max_iter, "--max-iter", 1);
            if (!(blowup > 2.0)) {
                throw Error(ErrorKind::Config, "--blowup must exceed 2");
            }
            CellFamily fam{Word::from_string("10"), parse_piece(piece0), parse_piece(piece1)};
            Table t{{"E", "lambda", "x0", "x1", "x2", "invariant", "dim_proxy"}, {}};
            for (const auto& r : invariant_scan(fam, er.lo, er.hi, lambda, inv_grid, common.steps)) {
                Cell proxy;
                if (r.dim_proxy) {
                    proxy = *r.dim_proxy;
                }
                t.rows.push_back({r.E, lambda, r.x0, r.x1, r.x2, r.invariant_value, proxy});
            }
            return t;
        };
    });

    // trace-orbit
    double energy = 4.0 * std::numbers::pi * std::numbers::pi;
    int iterations = 30;
    auto* orbit = app.add_subcommand("trace-orbit", "trace-map orbit of the curve of initial conditions");
    add_common(orbit, common);
    orbit->add_option("--piece0", piece0);
    orbit->add_option("--piece1", piece1);
    orbit->add_option("--E", energy);
    orbit->add_option("--lambda", lambda);
    orbit->add_option("--iterations", iterations);
    orbit->add_option("--max-iter", max_iter);
    orbit->add_option("--blowup", blowup);
    orbit->callback([&] {
        command = "trace-orbit";
        action = [&](Metadata& meta, std::ostream&) {
            check_grid(iterations, "--iterations", 0);
            check_grid(max_iter, "--max-iter", 1);
            if (!(blowup > 2.0)) {
                throw Error(ErrorKind::Config, "--blowup must exceed 2");
            }
            TraceTriple tr = curve_of_initial_conditions(parse_piece(piece0), parse_piece(piece1), energy, lambda,
                                                         common.steps);
            const auto verdict = escape_test(tr, max_iter, blowup);
            meta.emplace_back("status", verdict.status == OrbitStatus::Bounded ? "bounded" : "escaped");
            meta.emplace_back("escape_index", std::to_string(verdict.escape_index));
            Table t{{"k", "x", "y", "z", "invariant"}, {}};
            for (int k = 0; k <= iterations && tr.finite(); ++k) {
                t.rows.push_back({std::int64_t{k}, tr.x, tr.y, tr.z, fricke_vogt(tr)});
                tr = trace_map_step(tr);
            }
            return t;
        };
    });

    // prufer-asymptotics
    std::string pr_piece = "bump", region, lemma = "growth", pr_lambda = "1e2:1e6";
    double pr_energy = 1.0, theta0 = kDefaultTheta0;
    int per_decade = 5;
    auto* pr = app.add_subcommand("prufer-asymptotics", "Prüfer angle and log-norm changes against lambda");
    add_common(pr, common);
    pr->add_option("--piece", pr_piece);
    pr->add_option("--region", region, "lo:hi inside the piece (default: the whole piece)");
    pr->add_option("--lemma", lemma, "growth, rotation, lognorm or boundary");
    pr->add_option("--E", pr_energy);
    pr->add_option("--lambda-range", pr_lambda);
    pr->add_option("--per-decade", per_decade);
    pr->add_option("--theta0", theta0);
    pr->callback([&] {
        command = "prufer-asymptotics";
        action = [&](Metadata& meta, std::ostream&) {
            const auto piece = parse_piece(pr_piece);
            const auto lr = parse_range(pr_lambda, false);
            check_positive(lr.lo, "lower coupling");
            check_grid(per_decade, "--per-decade", 1);
            const Range rr = region.empty() ? Range{0.0, piece.length()} : parse_range(region, false);
            const Interval iv{rr.lo, rr.hi};
            const auto grid = log_grid(lr.lo, lr.hi, per_decade);
            LemmaMeasurement m;
            if (lemma == "growth") {
                m = measure_positive_growth(piece, iv, pr_energy, grid, theta0);
            } else if (lemma == "rotation") {
                m = measure_rotation(piece, iv, pr_energy, grid, theta0);
            } else if (lemma == "lognorm") {
                m = measure_negative_lognorm(piece, iv, pr_energy, grid, theta0);
            } else if (lemma == "boundary") {
                m = measure_boundary_zero(piece, iv, pr_energy, grid, theta0);
            } else {
                throw Error(ErrorKind::Config, "unknown --lemma '" + lemma + "'");
            }
            meta.emplace_back("fit_exponent", format_double(m.fit.exponent));
            meta.emplace_back("fit_intercept", format_double(m.fit.intercept));
            meta.emplace_back("fit_r_squared", format_double(m.fit.r_squared));
            if (m.fit.log_slope) {
                meta.emplace_back("fit_log_slope", format_double(*m.fit.log_slope));
                meta.emplace_back("fit_log_r_squared", format_double(*m.fit.log_r_squared));
            }
            Table t{{"lambda", "delta_theta", "delta_L", "steps", "max_excursion_L"}, {}};
            for (const auto& s : m.samples) {
                t.rows.push_back({s.lambda, s.delta_theta, s.delta_L, std::int64_t{s.steps}, s.max_excursion_L});
            }
            return t;
        };
    });

    // nlevp-validate
    std::string nl_word = "sub:4", nl_e_range = "0:120";
    int nl_grid = 24000;
    double nl_tol = 1e-12;
    auto* nl = app.add_subcommand("nlevp-validate", "matrix-formulation eigenvalues checked against the discriminant");
    add_common(nl, common);
    nl->add_option("--word", nl_word);
    nl->add_option("--piece0", piece0);
    nl->add_option("--piece1", piece1);
    nl->add_option("--lambda", lambda);
    nl->add_option("--e-range", nl_e_range);
    nl->add_option("--e-grid", nl_grid);
    nl->add_option("--tol", nl_tol);
    nl->callback([&] {
        command = "nlevp-validate";
        action = [&](Metadata& meta, std::ostream&) {
            const auto er = parse_range(nl_e_range, false);
            check_grid(nl_grid, "--e-grid");
            check_positive(nl_tol, "--tol");
            const Word w = parse_word(nl_word);
            meta.emplace_back("word_letters", w.to_string());
            const auto p0 = parse_piece(piece0);
            const auto p1 = parse_piece(piece1);
            const auto profile = NlevpProfile::from_cell(w, p0, p1);
            const auto cell = assemble(w, p0, p1, lambda);
            Table t{{"theta", "E_root", "abs_det", "smallest_singular_value", "floquet_discriminant"}, {}};
            for (double theta : {0.0, std::numbers::pi}) {
                for (double E : eigenvalue_scan(profile, lambda, theta, er.lo, er.hi, nl_grid, nl_tol)) {
                    double det = std::nan(""), sv = std::nan("");
                    try {
                        const auto m = build_profile(E, lambda, theta, profile);
                        det = std::abs(determinant(m));
                        sv = singular_value_range(m).smallest;
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::DegenerateEnergy) {
                            throw;
                        }
                    }
                    t.rows.push_back({theta, E, det, sv, discriminant(cell, E, common.steps)});
                }
            }
            return t;
        };
    });

    // counterexample-search
    std::string ce_piece = "pwc:1@0.5,-4@0.5", ce_range = "40:200";
    int ce_n = 1;
    double scan_step = 0.05;
    auto* ce = app.add_subcommand("counterexample-search", "couplings where the letter-1 monodromy has trace zero");
    add_common(ce, common);
    ce->add_option("--piece1", ce_piece);
    ce->add_option("--n", ce_n);
    ce->add_option("--lambda-range", ce_range);
    ce->add_option("--scan-step", scan_step);
    ce->add_option("--tol", tol);
    ce->callback([&] {
        command = "counterexample-search";
        action = [&](Metadata& meta, std::ostream& errs) {
            const auto lr = parse_range(ce_range, false);
            check_positive(lr.lo, "lower coupling");
            check_positive(scan_step, "--scan-step");
            check_positive(tol, "--tol");
            check_grid(ce_n, "--n", 1);
            const auto res = counterexample_search(parse_piece(ce_piece), ce_n, lr.lo, lr.hi, scan_step, tol,
                                                   common.steps);
            meta.emplace_back("E", format_double(res.energy));
            for (const auto& w : res.warnings) {
                errs << "warning: " << w << "\n";
                meta.emplace_back("warning", w);
            }
            Table t{{"lambda", "trace_residual", "b2_residual", "invariant"}, {}};
            for (const auto& h : res.hits) {
                t.rows.push_back({h.lambda_value, h.trace_residual, h.b_squared_residual, h.invariant_at_E});
            }
            return t;
        };
    });

    // trace-divergence
    std::string td_piece = "bump";
    std::vector<double> td_lambdas{1e3, 1e4, 1e5};
    double e_max = 10.0;
    int td_grid = 201;
    auto* td = app.add_subcommand("trace-divergence", "minimum letter-1 trace over |E| <= e-max per coupling");
    add_common(td, common);
    td->add_option("--piece1", td_piece);
    td->add_option("--e-max", e_max);
    td->add_option("--lambdas", td_lambdas)->delimiter(',');
    td->add_option("--e-grid", td_grid);
    td->callback([&] {
        command = "trace-divergence";
        action = [&](Metadata& meta, std::ostream& errs) {
            check_grid(td_grid, "--e-grid");
            check_positive(e_max, "--e-max");
            const auto res = trace_divergence_check(parse_piece(td_piece), e_max, td_lambdas, td_grid, common.steps);
            if (res.flagged) {
                errs << "warning: " << res.note << "\n";
                meta.emplace_back("warning", res.note);
            }
            Table t{{"lambda", "min_trace", "argmin_E"}, {}};
            for (const auto& r : res.rows) {
                t.rows.push_back({r.lambda, r.min_trace, r.argmin_E});
            }
            return t;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        err << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (common.steps < 16) {
            throw Error(ErrorKind::Config, "--steps must be at least 16");
        }
        const Format format = parse_format(common.format);
        const CLI::App* sub = app.get_subcommands().front();
        Metadata meta = echo_options(command, *sub);
        Table table = action(meta, err);
        write_table(common.out, format, meta, table);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace fibspec::cli
