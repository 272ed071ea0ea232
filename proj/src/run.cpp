#include "pnev/run.hpp"

#include "pnev/errors.hpp"
#include "pnev/geometry.hpp"

#include <sstream>

namespace pnev {

namespace {

using Columns = std::vector<std::pair<std::string, PLFunction>>;

std::string label(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

std::string dump(const Columns& cols) {
    std::ostringstream os;
    for (const auto& [name, f] : cols) os << name << ": " << f.str() << '\n';
    return os.str();
}

struct Context {
    const Scenario& s;
    PrimeConfig cfg;
    std::ostringstream report;
    Columns columns;
    int exit_code = exit_ok;

    explicit Context(const Scenario& sc) : s(sc), cfg(sc.p) {}

    void header(Subcommand c) {
        report << subcommand_name(c) << "  p = " << s.p << ", N = " << s.N << '\n';
    }
    void failed(const std::string& what) {
        report << "FAILED: " << what << '\n';
        exit_code = exit_check_failed;
    }
    RunResult finish(std::vector<Artifact> extra = {}) {
        report << "status: " << (exit_code == exit_ok ? "pass" : "fail") << '\n';
        RunResult r;
        r.exit_code = exit_code;
        r.report = report.str();
        r.artifacts.push_back({s.report_path, r.report});
        r.artifacts.push_back({s.dump_path, dump(columns)});
        r.artifacts.push_back({s.table_path, plot_table(s.s_grid, columns)});
        for (Artifact& a : extra) r.artifacts.push_back(std::move(a));
        return r;
    }
};

ProjectiveMap scenario_map(const Scenario& s) {
    if (s.map.empty()) throw InputError("scenario has no map");
    return ProjectiveMap(s.map);
}

void require_hypersurfaces(const Scenario& s) {
    if (s.hypersurfaces.empty()) throw InputError("scenario has no hypersurfaces");
}

// Transversality at every witness point, over the hypersurfaces through it.
Preconditions witness_preconditions(const Scenario& s, const VarietySpec& x, std::ostringstream& report,
                                    bool& violated) {
    Preconditions pre;
    violated = false;
    if (s.witness_points.empty()) return pre;
    std::vector<std::string> seen;
    for (const ProjectivePoint& pt : s.witness_points) {
        for (const Polynomial& e : x.equations) {
            if (e.eval(pt.coords()) != 0) throw InputError("witness point " + pt.str() + " is not on X");
        }
        std::vector<Hypersurface> through;
        for (const Hypersurface& h : s.hypersurfaces) {
            if (h.poly().eval(pt.coords()) == 0) through.push_back(h);
        }
        bool ok = transversality_check(through, x, pt);
        report << "witness " << pt.str() << ": " << through.size() << " hypersurface(s) through it, "
               << (ok ? "transverse" : "NOT transverse") << '\n';
        violated = violated || !ok;
        seen.push_back(pt.str());
    }
    std::string where;
    for (std::size_t i = 0; i < seen.size(); ++i) where += (i ? ", " : "") + seen[i];
    pre.transversality = violated ? "violated at a witness point" : "witnessed at " + where;
    return pre;
}

void describe_report(const NevanlinnaReport& r, Context& ctx) {
    auto& os = ctx.report;
    os << "n = " << r.dimension << ", M = " << r.multiplier << '\n';
    os << "preconditions: general position " << r.preconditions.general_position << "; transversality "
       << r.preconditions.transversality << "; common zeros " << r.common_zero_status << '\n';
    os << "T = " << r.characteristic.str() << '\n';
    ctx.columns.emplace_back("T", r.characteristic);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const HypersurfaceTerms& t = r.terms[i];
        os << "D_" << i + 1 << ": " << t.hypersurface.poly().str() << " (degree " << t.hypersurface.degree()
           << ")\n  pullback = " << t.pullback.str() << "\n  m final slope = " << to_string(t.proximity.final_slope());
        if (t.defect) os << ", defect = " << to_string(*t.defect);
        os << '\n';
        ctx.columns.emplace_back(label("m_", i), t.proximity);
    }
    for (std::size_t i = 0; i < r.terms.size(); ++i) ctx.columns.emplace_back(label("N_", i), r.terms[i].counting);
    ctx.columns.emplace_back("sum", r.weighted_sum);
    ctx.columns.emplace_back("bound", r.bound);
    ctx.columns.emplace_back("margin", r.margin);
    os << "bound coefficient n - 1 + max_i M/deg D_i = " << to_string(r.bound_coefficient) << '\n';
    os << "window " << r.verdict_window.str() << (r.window_unbounded ? "" : " (certified part only)") << '\n';
    os << "slopes: sum = " << to_string(r.sum_slope) << ", bound = " << to_string(r.bound_slope)
       << ", margin = " << to_string(r.margin_slope) << '\n';
    os << "margin infimum on window = " << r.margin_infimum.str() << '\n';
    os << "verdict: " << (r.pass ? "margin bounded below" : "margin UNBOUNDED below")
       << (r.pass && r.tight ? " (tight: margin slope 0)" : "") << '\n';
}

RunResult run_fmt_check(Context& ctx) {
    const Scenario& s = ctx.s;
    require_hypersurfaces(s);
    ProjectiveMap f = scenario_map(s);
    PLFunction t = characteristic(f, ctx.cfg);
    ctx.report << "T = " << t.str() << '\n';
    ctx.columns.emplace_back("T", t);
    Columns counts;
    for (std::size_t i = 0; i < s.hypersurfaces.size(); ++i) {
        const Hypersurface& d = s.hypersurfaces[i];
        ctx.report << "D_" << i + 1 << ": " << d.poly().str() << " (degree " << d.degree() << ")\n";
        try {
            FmtCheck c = fmt_check(f, d, ctx.cfg);
            ctx.report << "  residual = " << to_string(c.residual) << " (constant); expected -log_p|a_k| = "
                       << to_string(c.expected) << '\n';
            ctx.columns.emplace_back(label("m_", i), c.proximity);
            counts.emplace_back(label("N_", i), c.counting);
        } catch (const CheckFailure& e) {
            ctx.failed(e.what());
        }
    }
    for (auto& c : counts) ctx.columns.push_back(std::move(c));
    return ctx.finish();
}

RunResult run_smt_report(Context& ctx) {
    const Scenario& s = ctx.s;
    require_hypersurfaces(s);
    ProjectiveMap f = scenario_map(s);
    VarietySpec x = s.variety_or_space();
    bool violated = false;
    Preconditions pre = witness_preconditions(s, x, ctx.report, violated);
    NevanlinnaReport r = smt_report(f, s.hypersurfaces, x, s.M, ctx.cfg, pre);
    describe_report(r, ctx);
    if (violated) ctx.failed("transversality fails at a witness point");
    if (!r.pass) ctx.failed("margin is unbounded below on s >= 0");
    return ctx.finish();
}

RunResult run_defect(Context& ctx) {
    const Scenario& s = ctx.s;
    require_hypersurfaces(s);
    ProjectiveMap f = scenario_map(s);
    VarietySpec x = s.variety_or_space();
    Rational total = 0;
    Rational max_ratio = 0;
    ctx.columns.emplace_back("T", characteristic(f, ctx.cfg));
    for (std::size_t i = 0; i < s.hypersurfaces.size(); ++i) {
        const Hypersurface& d = s.hypersurfaces[i];
        Rational delta = defect(f, d, ctx.cfg);
        ctx.report << "delta(D_" << i + 1 << ": " << d.poly().str() << ") = " << to_string(delta) << '\n';
        if (delta < 0 || delta > 1) ctx.failed("defect outside [0, 1]");
        total += delta;
        max_ratio = std::max(max_ratio, make_rational(s.M, d.degree()));
        ctx.columns.emplace_back(label("m_", i), proximity(f, d, ctx.cfg));
    }
    Rational bound = Rational(static_cast<long>(x.dimension) - 1) + max_ratio;
    ctx.report << "sum of defects = " << to_string(total) << ", bound n - 1 + max_i M/deg D_i = " << to_string(bound)
               << '\n';
    if (total > bound) ctx.failed("defect sum exceeds the bound");
    return ctx.finish();
}

RunResult run_sharpness(Context& ctx) {
    const Scenario& s = ctx.s;
    if (!s.sharpness) throw InputError("sharpness needs a 'sharpness: {n, d}' block");
    const std::size_t n = s.sharpness->n;
    const unsigned d = s.sharpness->d;
    SharpnessConfig cfg = sharpness_family(n, d, ctx.cfg);
    Scenario generated = scenario_from_sharpness(cfg, s.s_grid);
    ctx.report << "generated family n = " << n << ", d = " << d << ", f = (z, 1, 0, ..., 0), P = " << cfg.point.str()
               << '\n';
    bool violated = false;
    const VarietySpec x = VarietySpec::projective_space(n);
    Preconditions pre = witness_preconditions(generated, x, ctx.report, violated);
    NevanlinnaReport r = smt_report(cfg.map, cfg.hypersurfaces, x, 1, ctx.cfg, pre);
    describe_report(r, ctx);

    const Rational target = Rational(static_cast<long>(n) - 1) + make_rational(1, d);
    std::optional<Rational> gap = r.margin.constant_on(Interval::at_least(0));
    if (gap) ctx.report << "margin constant on s >= 0: " << to_string(*gap) << '\n';
    else ctx.failed("margin is not constant on s >= 0");
    Rational defects = 0;
    for (const HypersurfaceTerms& t : r.terms) defects += *t.defect;
    ctx.report << "sum of defects = " << to_string(defects) << ", n - 1 + 1/d = " << to_string(target) << '\n';
    if (defects != target) ctx.failed("defect sum differs from n - 1 + 1/d");
    if (violated) ctx.failed("generated hypersurfaces are not transverse at P");
    return ctx.finish({{"scenario.yaml", emit_scenario(generated)}});
}

RunResult run_polygon(Context& ctx) {
    const Scenario& s = ctx.s;
    ProjectiveMap f = scenario_map(s);
    std::vector<std::pair<std::string, EntireSeries>> series;
    for (std::size_t j = 0; j < f.coordinates().size(); ++j) {
        if (!f.coordinates()[j].head_is_zero()) series.emplace_back("f_" + std::to_string(j), f.coordinates()[j]);
    }
    for (std::size_t i = 0; i < s.hypersurfaces.size(); ++i) {
        series.emplace_back(label("Q", i) + "(f)", checked_pullback(s.hypersurfaces[i], f, ctx.cfg));
    }
    for (const auto& [name, g] : series) {
        NewtonPolygon np = newton_polygon(g, ctx.cfg);
        ctx.report << name << " = " << g.str() << "\n  Newton polygon " << np.str();
        if (np.certified_below) ctx.report << " (certified for slopes < " << to_string(*np.certified_below) << ")";
        ctx.report << "\n  zero counts:";
        for (const Rational& sv : s.s_grid) {
            ctx.report << ' ' << to_string(sv) << "->";
            try {
                ctx.report << zero_count(g, sv, ctx.cfg);
            } catch (const WindowError&) {
                ctx.report << '-';
            }
        }
        ctx.report << '\n';
        ctx.columns.emplace_back("log|" + name + "|", gauss_norm(g, ctx.cfg));
        ctx.columns.emplace_back("N[" + name + "]", counting_plf(g, ctx.cfg));
    }
    return ctx.finish();
}

RunResult run_bounded_proximity(Context& ctx) {
    const Scenario& s = ctx.s;
    require_hypersurfaces(s);
    ProjectiveMap f = scenario_map(s);
    BoundednessReport r = sorted_proximity_boundedness(f, s.hypersurfaces, s.variety_or_space(), ctx.cfg);
    ctx.report << "n = " << r.dimension << ", q = " << s.hypersurfaces.size() << '\n';
    for (std::size_t k = 0; k < r.sorted.size(); ++k) {
        const auto& e = r.sorted[k];
        ctx.report << (k < r.dimension ? "  top " : "  rest ") << "D_" << e.index + 1 << ": eventual slope "
                   << to_string(e.eventual_slope);
        if (e.supremum) ctx.report << ", sup on s >= 0 = " << to_string(*e.supremum);
        ctx.report << '\n';
        ctx.columns.emplace_back(label("m_", e.index), proximity(f, s.hypersurfaces[e.index], ctx.cfg));
    }
    if (!r.pass) ctx.failed("a proximity function beyond the first n is unbounded");
    return ctx.finish();
}

}  // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (Subcommand c : {Subcommand::fmt_check, Subcommand::smt_report, Subcommand::defect, Subcommand::sharpness,
                         Subcommand::polygon, Subcommand::bounded_proximity}) {
        if (subcommand_name(c) == name) return c;
    }
    return std::nullopt;
}

std::string_view subcommand_name(Subcommand c) {
    switch (c) {
        case Subcommand::fmt_check: return "fmt-check";
        case Subcommand::smt_report: return "smt-report";
        case Subcommand::defect: return "defect";
        case Subcommand::sharpness: return "sharpness";
        case Subcommand::polygon: return "polygon";
        case Subcommand::bounded_proximity: return "bounded-proximity";
    }
    return "?";
}

std::string plot_table(const std::vector<Rational>& grid, const Columns& columns) {
    std::ostringstream os;
    os << 's';
    for (const auto& [name, f] : columns) os << '\t' << name;
    os << '\n';
    for (const Rational& s : grid) {
        os << to_string(s);
        for (const auto& [name, f] : columns) {
            os << '\t' << (f.domain().contains(s) ? to_string(f.eval(s)) : std::string("-"));
        }
        os << '\n';
    }
    return os.str();
}

RunResult run(Subcommand cmd, const Scenario& scenario) {
    try {
        Context ctx(scenario);
        ctx.header(cmd);
        switch (cmd) {
            case Subcommand::fmt_check: return run_fmt_check(ctx);
            case Subcommand::smt_report: return run_smt_report(ctx);
            case Subcommand::defect: return run_defect(ctx);
            case Subcommand::sharpness: return run_sharpness(ctx);
            case Subcommand::polygon: return run_polygon(ctx);
            case Subcommand::bounded_proximity: return run_bounded_proximity(ctx);
        }
    } catch (const InputError& e) {
        return {exit_input_error, std::string("error: ") + e.what() + '\n', {}};
    } catch (const CheckFailure& e) {
        return {exit_check_failed, std::string("check failed: ") + e.what() + '\n', {}};
    }
    return {exit_input_error, "error: unknown subcommand\n", {}};
}

}  // namespace pnev
