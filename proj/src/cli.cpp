#include "amtk/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "amtk/amcore.hpp"
#include "amtk/aminverse.hpp"
#include "amtk/critpoints.hpp"
#include "amtk/elimination.hpp"
#include "amtk/errors.hpp"
#include "amtk/expr.hpp"
#include "amtk/ratpoly.hpp"

namespace amtk::cli {
namespace {

using nlohmann::json;

// 17 significant digits, '.' decimal point, round-trip exact.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Output {
    std::string format = "csv";
    std::string path;  // empty = stdout

    void deliver(std::ostream& out, const std::string& text) const {
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw Error("cannot open output file '" + path + "'");
        file << text;
    }
};

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string render_text(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows,
                        const std::vector<std::string>& preamble) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const std::string& line : preamble) {
        out += line;
        out += '\n';
    }
    const auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += "  ";
            out += row[i];
            if (i + 1 < row.size()) out.append(width[i] - row[i].size(), ' ');
        }
        out += '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
}

// {"meta": ..., "rows": [...]} with the full argv recorded for
// reproducibility.
std::string render_json(json meta, json rows) {
    json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

json argv_meta(const std::vector<std::string>& args) {
    json argv = json::array();
    argv.push_back("amtk");
    for (const auto& a : args) argv.push_back(a);
    json meta;
    meta["argv"] = std::move(argv);
    return meta;
}

std::vector<double> parse_phase_list(const std::string& text) {
    std::vector<double> phases;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            phases.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--phases", "'" + item + "' is not a number");
        }
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return phases;
}

std::vector<std::vector<std::string>> curve_rows(const SampledCurve& curve) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(curve.points.size());
    for (const CurvePoint& pt : curve.points) rows.push_back({fmt17(pt.x), fmt17(pt.y)});
    return rows;
}

json curve_json_rows(const SampledCurve& curve) {
    json rows = json::array();
    for (const CurvePoint& pt : curve.points) rows.push_back({{"x", pt.x}, {"y", pt.y}});
    return rows;
}

struct CommonFlags {
    std::string expr;
    double from = 0.0, to = 0.0;
    Output output;
};

void add_format_flags(CLI::App* cmd, Output& output, const std::string& default_format) {
    output.format = default_format;
    cmd->add_option("--format", output.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "text"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", output.path, "Write output to a file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Amplitude-modulation transform toolkit"};
    app.require_subcommand(1);

    // ---- transform ----
    CommonFlags tr;
    std::size_t tr_samples = 200;
    CLI::App* transform = app.add_subcommand("transform", "Sample AM(f) on an interval");
    transform->add_option("--expr", tr.expr, "Function f(x)")->required();
    transform->add_option("--from", tr.from, "Interval start")->required();
    transform->add_option("--to", tr.to, "Interval end")->required();
    transform->add_option("--samples", tr_samples, "Sample count")->capture_default_str();
    add_format_flags(transform, tr.output, "csv");

    // ---- critical ----
    CommonFlags cr;
    double cr_phase = 0.0;
    std::size_t cr_grid = 0;
    CLI::App* critical = app.add_subcommand("critical", "Critical points of f(x)sin(x+k)");
    critical->add_option("--expr", cr.expr, "Function f(x)")->required();
    critical->add_option("--phase", cr_phase, "Phase k")->required();
    critical->add_option("--from", cr.from, "Interval start")->required();
    critical->add_option("--to", cr.to, "Interval end")->required();
    critical->add_option("--grid", cr_grid, "Scan cells (default 256 per 2*pi)");
    add_format_flags(critical, cr.output, "csv");

    // ---- certify ----
    CommonFlags ce;
    std::string ce_phases;
    std::size_t ce_grid = 0;
    CLI::App* certify = app.add_subcommand("certify", "Phase-independence certificate of the envelope");
    certify->add_option("--expr", ce.expr, "Function f(x)")->required();
    certify->add_option("--phases", ce_phases, "Comma-separated phase list")->required();
    certify->add_option("--from", ce.from, "Interval start")->required();
    certify->add_option("--to", ce.to, "Interval end")->required();
    certify->add_option("--grid", ce_grid, "Scan cells (default 256 per 2*pi)");
    add_format_flags(certify, ce.output, "text");

    // ---- invert ----
    CommonFlags iv;
    double iv_f0 = 0.0;
    double iv_step = 1e-3;
    bool iv_weak = false;
    CLI::App* invert = app.add_subcommand("invert", "Invert the transform by ODE integration");
    invert->add_option("--g", iv.expr, "Target transform g(x)")->required();
    invert->add_option("--from", iv.from, "Interval start")->required();
    invert->add_option("--to", iv.to, "Interval end")->required();
    CLI::Option* f0_opt = invert->add_option("--f0", iv_f0, "Initial value (default: g at the start endpoint)");
    invert->add_option("--step", iv_step, "RK4 step size")->capture_default_str();
    invert->add_flag("--weak", iv_weak, "Stitch a weak inverse across critical points of g");
    add_format_flags(invert, iv.output, "csv");

    // ---- ratio-invert ----
    CommonFlags ri;
    std::string ri_sign;
    std::size_t ri_samples = 201;
    CLI::App* ratio_inv = app.add_subcommand("ratio-invert", "Solve f/AM(f) = r explicitly");
    ratio_inv->add_option("--r", ri.expr, "Target ratio r(x) > 1")->required();
    ratio_inv->add_option("--from", ri.from, "Interval start")->required();
    ratio_inv->add_option("--to", ri.to, "Interval end")->required();
    ratio_inv->add_option("--sign", ri_sign, "Exponent sign")
        ->required()
        ->check(CLI::IsMember({"plus", "minus"}));
    ratio_inv->add_option("--samples", ri_samples, "Sample count")->capture_default_str();
    add_format_flags(ratio_inv, ri.output, "csv");

    // ---- annihilate ----
    std::string an_poly, an_expr;
    double an_from = 0.0, an_to = 0.0;
    Output an_output;
    CLI::App* annihilate = app.add_subcommand("annihilate", "Annihilating polynomial of AM(f) for algebraic f");
    annihilate->add_option("--poly", an_poly, "Defining polynomial P(x,y)")->required();
    CLI::Option* ve = annihilate->add_option("--verify-expr", an_expr, "Expression for the numeric residual");
    CLI::Option* vf = annihilate->add_option("--from", an_from, "Verification interval start");
    CLI::Option* vt = annihilate->add_option("--to", an_to, "Verification interval end");
    ve->needs(vf)->needs(vt);
    vf->needs(ve);
    vt->needs(ve);
    add_format_flags(annihilate, an_output, "text");

    // ---- sinc-table ----
    std::size_t st_count = 0;
    Output st_output;
    CLI::App* sinc_table = app.add_subcommand("sinc-table", "Local maxima of sinc and their envelope");
    sinc_table->add_option("--count", st_count, "Row count")->required();
    add_format_flags(sinc_table, st_output, "csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    // argv-level range validation.
    const auto check_range = [&](const CLI::App* cmd, double from, double to) {
        if (cmd->parsed() && !(from < to)) {
            err << "usage error: --from must be less than --to\n";
            return false;
        }
        return true;
    };
    if (!check_range(transform, tr.from, tr.to) || !check_range(critical, cr.from, cr.to) ||
        !check_range(certify, ce.from, ce.to) || !check_range(invert, iv.from, iv.to) ||
        !check_range(ratio_inv, ri.from, ri.to)) {
        return 1;
    }
    if (annihilate->parsed() && ve->count() > 0 && !(an_from < an_to)) {
        err << "usage error: --from must be less than --to\n";
        return 1;
    }
    if (invert->parsed() && iv_weak && f0_opt->count() > 0) {
        err << "usage error: --f0 cannot be combined with --weak\n";
        return 1;
    }

    try {
        if (transform->parsed()) {
            const Expr f = parse(tr.expr);
            const SampledCurve curve = am_curve(f, tr.from, tr.to, tr_samples, "am");
            if (tr.output.format == "csv") {
                tr.output.deliver(out, render_csv({"x", "y"}, curve_rows(curve)));
            } else if (tr.output.format == "json") {
                json meta = argv_meta(args);
                meta["samples"] = tr_samples;
                meta["skipped"] = curve.skipped;
                tr.output.deliver(out, render_json(std::move(meta), curve_json_rows(curve)));
            } else {
                tr.output.deliver(out, render_text({"x", "y"}, curve_rows(curve),
                                                   {"AM(" + tr.expr + "), " +
                                                    std::to_string(curve.points.size()) + " samples, " +
                                                    std::to_string(curve.skipped) + " skipped"}));
            }
            return 0;
        }

        if (critical->parsed()) {
            const Expr f = parse(cr.expr);
            const std::size_t grid = cr_grid > 0 ? cr_grid : default_grid(cr.from, cr.to);
            const auto points = find_critical_points(f, cr_phase, cr.from, cr.to, grid);
            const std::vector<std::string> header{"x", "value", "kind", "deriv_residual",
                                                  "envelope_residual"};
            std::vector<std::vector<std::string>> rows;
            for (const CriticalPoint& cp : points) {
                rows.push_back({fmt17(cp.x), fmt17(cp.value), to_string(cp.kind),
                                fmt17(cp.deriv_residual), fmt17(cp.envelope_residual)});
            }
            if (cr.output.format == "csv") {
                cr.output.deliver(out, render_csv(header, rows));
            } else if (cr.output.format == "json") {
                json meta = argv_meta(args);
                meta["grid"] = grid;
                json jrows = json::array();
                for (const CriticalPoint& cp : points) {
                    jrows.push_back({{"x", cp.x},
                                     {"value", cp.value},
                                     {"kind", to_string(cp.kind)},
                                     {"deriv_residual", cp.deriv_residual},
                                     {"envelope_residual", cp.envelope_residual}});
                }
                cr.output.deliver(out, render_json(std::move(meta), std::move(jrows)));
            } else {
                cr.output.deliver(out, render_text(header, rows,
                                                   {"critical points of (" + cr.expr + ")*sin(x+k), k = " +
                                                    fmt17(cr_phase) + ", grid = " + std::to_string(grid)}));
            }
            return 0;
        }

        if (certify->parsed()) {
            const Expr f = parse(ce.expr);
            const std::vector<double> phases = parse_phase_list(ce_phases);
            const std::size_t grid = ce_grid > 0 ? ce_grid : default_grid(ce.from, ce.to);
            const CertificateReport report = envelope_certificate(f, phases, ce.from, ce.to, grid);
            const std::vector<std::string> header{"phase", "points", "max_envelope_residual"};
            std::vector<std::vector<std::string>> rows;
            for (const PhaseReport& pr : report.phases) {
                rows.push_back({fmt17(pr.phase), std::to_string(pr.points),
                                fmt17(pr.max_envelope_residual)});
            }
            if (ce.output.format == "csv") {
                ce.output.deliver(out, render_csv(header, rows));
            } else if (ce.output.format == "json") {
                json meta = argv_meta(args);
                meta["grid"] = grid;
                meta["total_points"] = report.total_points;
                meta["max_envelope_residual"] = report.max_envelope_residual;
                json jrows = json::array();
                for (const PhaseReport& pr : report.phases) {
                    jrows.push_back({{"phase", pr.phase},
                                     {"points", pr.points},
                                     {"max_envelope_residual", pr.max_envelope_residual}});
                }
                ce.output.deliver(out, render_json(std::move(meta), std::move(jrows)));
            } else {
                ce.output.deliver(out, render_text(header, rows,
                                                   {"envelope certificate for " + ce.expr + " on [" +
                                                        fmt17(ce.from) + ", " + fmt17(ce.to) + "], grid = " +
                                                        std::to_string(grid),
                                                    "max envelope residual: " +
                                                        fmt17(report.max_envelope_residual)}));
            }
            return 0;
        }

        if (invert->parsed()) {
            const Expr g = parse(iv.expr);
            InverseSolution sol;
            if (iv_weak) {
                sol = weak_invert(g, iv.from, iv.to, iv_step);
            } else {
                if (f0_opt->count() == 0) {
                    // Default to the weak rule's choice: f = g at the start
                    // endpoint dictated by monotonicity (left for decreasing
                    // g, right for increasing).
                    try {
                        iv_f0 = eval_value(g, iv.from);
                        sol = invert_monotone(g, iv.from, iv.to, iv_f0, iv_step);
                    } catch (const InitialConditionError&) {
                        iv_f0 = eval_value(g, iv.to);
                        sol = invert_monotone(g, iv.from, iv.to, iv_f0, iv_step);
                    }
                } else {
                    sol = invert_monotone(g, iv.from, iv.to, iv_f0, iv_step);
                }
            }
            SampledCurve merged;
            for (const InverseSegment& seg : sol.segments) {
                for (const CurvePoint& pt : seg.curve.points) {
                    if (!merged.points.empty() && pt.x <= merged.points.back().x) continue;
                    merged.points.push_back(pt);
                }
            }
            if (iv.output.format == "csv") {
                iv.output.deliver(out, render_csv({"x", "y"}, curve_rows(merged)));
            } else if (iv.output.format == "json") {
                json meta = argv_meta(args);
                meta["step"] = iv_step;
                meta["roundtrip_error"] = sol.roundtrip_error;
                if (!iv_weak) meta["f0"] = iv_f0;
                json segs = json::array();
                for (const InverseSegment& seg : sol.segments) {
                    segs.push_back({{"from", seg.curve.points.front().x},
                                    {"to", seg.curve.points.back().x},
                                    {"branch", to_string(seg.branch)},
                                    {"direction", to_string(seg.direction)},
                                    {"points", seg.curve.points.size()}});
                }
                meta["segments"] = std::move(segs);
                iv.output.deliver(out, render_json(std::move(meta), curve_json_rows(merged)));
            } else {
                std::vector<std::string> pre{
                    "inverse of " + iv.expr + " on [" + fmt17(iv.from) + ", " + fmt17(iv.to) +
                        "], step = " + fmt17(iv_step),
                    "segments: " + std::to_string(sol.segments.size()) +
                        ", roundtrip error: " + fmt17(sol.roundtrip_error)};
                iv.output.deliver(out, render_text({"x", "y"}, curve_rows(merged), pre));
            }
            return 0;
        }

        if (ratio_inv->parsed()) {
            const Expr r = parse(ri.expr);
            const Branch sign = ri_sign == "plus" ? Branch::plus : Branch::minus;
            const SampledCurve curve = ratio_invert(r, ri.from, ri.to, sign, ri_samples);
            if (ri.output.format == "csv") {
                ri.output.deliver(out, render_csv({"x", "y"}, curve_rows(curve)));
            } else if (ri.output.format == "json") {
                json meta = argv_meta(args);
                meta["sign"] = ri_sign;
                meta["samples"] = ri_samples;
                ri.output.deliver(out, render_json(std::move(meta), curve_json_rows(curve)));
            } else {
                ri.output.deliver(out, render_text({"x", "y"}, curve_rows(curve),
                                                   {"f with f/AM(f) = " + ri.expr + ", sign " + ri_sign}));
            }
            return 0;
        }

        if (annihilate->parsed()) {
            const RatPoly P = parse_poly(an_poly);
            const RatPoly A = am_annihilator(P);
            const std::string poly_text = to_string(A);
            const double curve_residual = verify_annihilator_on_curve(A, P);
            const bool verified = ve->count() > 0;
            double residual = 0.0;
            if (verified) {
                residual = verify_annihilator(A, parse(an_expr), an_from, an_to, 32);
            }
            if (an_output.format == "csv") {
                std::vector<std::vector<std::string>> rows{
                    {poly_text, fmt17(curve_residual), verified ? fmt17(residual) : std::string()}};
                an_output.deliver(out,
                                  render_csv({"polynomial", "curve_residual", "residual"}, rows));
            } else if (an_output.format == "json") {
                json meta = argv_meta(args);
                json row;
                row["polynomial"] = poly_text;
                row["curve_residual"] = curve_residual;
                if (verified) row["residual"] = residual;
                an_output.deliver(out, render_json(std::move(meta), json::array({row})));
            } else {
                std::string text = "annihilator: " + poly_text + "\n";
                text += "curve residual: " + fmt17(curve_residual) + "\n";
                if (verified) text += "residual: " + fmt17(residual) + "\n";
                an_output.deliver(out, text);
            }
            return 0;
        }

        if (sinc_table->parsed()) {
            const std::vector<SincRow> rows = sinc_maxima(st_count);
            const std::vector<std::string> header{"x", "sinc", "envelope"};
            std::vector<std::vector<std::string>> cells;
            for (const SincRow& row : rows) {
                cells.push_back({fmt17(row.x), fmt17(row.sinc), fmt17(row.envelope)});
            }
            if (st_output.format == "csv") {
                st_output.deliver(out, render_csv(header, cells));
            } else if (st_output.format == "json") {
                json jrows = json::array();
                for (const SincRow& row : rows) {
                    jrows.push_back({{"x", row.x}, {"sinc", row.sinc}, {"envelope", row.envelope}});
                }
                st_output.deliver(out, render_json(argv_meta(args), std::move(jrows)));
            } else {
                st_output.deliver(out, render_text(header, cells,
                                                   {"local maxima of sinc(x) = sin(x)/x"}));
            }
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 1;
}

}  // namespace amtk::cli
