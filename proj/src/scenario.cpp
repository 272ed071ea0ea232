#include "pnev/scenario.hpp"

#include "pnev/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace pnev {

namespace {

[[noreturn]] void fail_at(const std::string& field, const YAML::Node& node, const std::string& what) {
    std::ostringstream os;
    os << "field '" << field << "'";
    if (node.IsDefined() && node.Mark().line >= 0) {
        os << " (line " << node.Mark().line + 1 << ", column " << node.Mark().column + 1 << ")";
    }
    os << ": " << what;
    throw InputError(os.str());
}

// Runs `body`, re-throwing InputError with the field location attached.
template <typename F>
auto at_field(const std::string& field, const YAML::Node& node, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const InputError& e) {
        fail_at(field, node, e.what());
    }
}

std::string scalar(const std::string& field, const YAML::Node& node) {
    if (!node.IsDefined() || node.IsNull()) fail_at(field, node, "missing value");
    if (!node.IsScalar()) fail_at(field, node, "expected a scalar");
    return node.Scalar();
}

Rational fraction(const std::string& field, const YAML::Node& node) {
    std::string text = scalar(field, node);
    return at_field(field, node, [&] { return parse_rational(text); });
}

long integer(const std::string& field, const YAML::Node& node, long min_value) {
    Rational q = fraction(field, node);
    if (!is_integer(q) || !q.get_num().fits_slong_p()) fail_at(field, node, "expected an integer");
    long v = q.get_num().get_si();
    if (v < min_value) fail_at(field, node, "must be at least " + std::to_string(min_value));
    return v;
}

const YAML::Node& sequence(const std::string& field, const YAML::Node& node) {
    if (!node.IsSequence()) fail_at(field, node, "expected a sequence");
    return node;
}

void check_keys(const std::string& field, const YAML::Node& node, const std::set<std::string>& allowed) {
    if (!node.IsMap()) fail_at(field, node, "expected a mapping");
    for (const auto& kv : node) {
        std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            fail_at(field.empty() ? key : field + "." + key, kv.first, "unknown key");
        }
    }
}

std::vector<Rational> fraction_list(const std::string& field, const YAML::Node& node) {
    std::vector<Rational> out;
    std::size_t i = 0;
    for (const auto& item : sequence(field, node)) {
        out.push_back(fraction(field + "[" + std::to_string(i++) + "]", item));
    }
    return out;
}

EntireSeries parse_series(const std::string& field, const YAML::Node& node) {
    if (node.IsScalar()) return EntireSeries::constant(fraction(field, node));
    if (node.IsSequence()) return EntireSeries::polynomial(fraction_list(field, node));
    check_keys(field, node, {"coeffs", "tail"});
    std::vector<Rational> coeffs = fraction_list(field + ".coeffs", node["coeffs"]);
    if (!node["tail"]) return EntireSeries::polynomial(std::move(coeffs));
    const YAML::Node tail = node["tail"];
    check_keys(field + ".tail", tail, {"c", "b"});
    TailCertificate cert{fraction(field + ".tail.c", tail["c"]), fraction(field + ".tail.b", tail["b"])};
    return at_field(field, node, [&] { return EntireSeries::truncated(std::move(coeffs), cert); });
}

std::string quoted(const Rational& q) { return "\"" + to_string(q) + "\""; }

std::string quoted_list(const std::vector<Rational>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quoted(v[i]);
    return out + "]";
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw InputError("malformed document (line " + std::to_string(e.mark.line + 1) + ", column " +
                         std::to_string(e.mark.column + 1) + "): " + e.msg);
    }
    if (!root.IsMap()) throw InputError("malformed document: expected a mapping at the top level");
    check_keys("", root, {"p", "N", "variety", "map", "hypersurfaces", "M", "witness_points", "s_grid",
                          "sharpness", "outputs"});

    Scenario s;
    s.p = integer("p", root["p"], 0);
    at_field("p", root["p"], [&] { return PrimeConfig(s.p); });

    if (root["sharpness"]) {
        const YAML::Node sh = root["sharpness"];
        check_keys("sharpness", sh, {"n", "d"});
        s.sharpness = SharpnessSpec{static_cast<std::size_t>(integer("sharpness.n", sh["n"], 1)),
                                    static_cast<unsigned>(integer("sharpness.d", sh["d"], 1))};
    }
    if (root["N"]) s.N = static_cast<std::size_t>(integer("N", root["N"], 1));
    else if (s.sharpness) s.N = s.sharpness->n;
    else fail_at("N", root["N"], "missing value");
    const std::size_t nvars = s.N + 1;

    if (root["variety"]) {
        const YAML::Node v = root["variety"];
        check_keys("variety", v, {"equations", "dimension"});
        VarietySpec x;
        if (v["equations"]) {
            std::size_t i = 0;
            for (const auto& e : sequence("variety.equations", v["equations"])) {
                std::string f = "variety.equations[" + std::to_string(i++) + "]";
                std::string txt = scalar(f, e);
                x.equations.push_back(at_field(f, e, [&] { return Polynomial::parse(txt, nvars); }));
            }
        }
        x.dimension = static_cast<std::size_t>(integer("variety.dimension", v["dimension"], 1));
        at_field("variety", v, [&] { x.validate(s.N); return 0; });
        s.variety = std::move(x);
    }

    if (root["map"]) {
        const YAML::Node m = sequence("map", root["map"]);
        if (m.size() != nvars) {
            fail_at("map", m, "expected " + std::to_string(nvars) + " coordinates, got " + std::to_string(m.size()));
        }
        for (std::size_t i = 0; i < m.size(); ++i) s.map.push_back(parse_series("map[" + std::to_string(i) + "]", m[i]));
        at_field("map", m, [&] { return ProjectiveMap(s.map); });
    } else if (!s.sharpness) {
        fail_at("map", root["map"], "missing value");
    }

    if (root["hypersurfaces"]) {
        std::size_t i = 0;
        for (const auto& h : sequence("hypersurfaces", root["hypersurfaces"])) {
            std::string f = "hypersurfaces[" + std::to_string(i++) + "]";
            check_keys(f, h, {"poly", "degree"});
            std::string txt = scalar(f + ".poly", h["poly"]);
            Polynomial q = at_field(f + ".poly", h["poly"], [&] { return Polynomial::parse(txt, nvars); });
            if (h["degree"]) {
                unsigned deg = static_cast<unsigned>(integer(f + ".degree", h["degree"], 1));
                s.hypersurfaces.push_back(at_field(f, h, [&] { return Hypersurface(q, deg); }));
            } else {
                s.hypersurfaces.push_back(at_field(f, h, [&] { return Hypersurface(q); }));
            }
        }
    } else if (!s.sharpness) {
        fail_at("hypersurfaces", root["hypersurfaces"], "missing value");
    }

    if (root["M"]) s.M = static_cast<unsigned>(integer("M", root["M"], 1));

    if (root["witness_points"]) {
        std::size_t i = 0;
        for (const auto& pt : sequence("witness_points", root["witness_points"])) {
            std::string f = "witness_points[" + std::to_string(i++) + "]";
            std::vector<Rational> coords = fraction_list(f, pt);
            if (coords.size() != nvars) fail_at(f, pt, "expected " + std::to_string(nvars) + " coordinates");
            s.witness_points.push_back(at_field(f, pt, [&] { return ProjectivePoint(coords); }));
        }
    }

    if (root["s_grid"]) {
        s.s_grid = fraction_list("s_grid", root["s_grid"]);
        for (std::size_t i = 1; i < s.s_grid.size(); ++i) {
            if (!(s.s_grid[i - 1] < s.s_grid[i])) fail_at("s_grid", root["s_grid"], "must be strictly increasing");
        }
    }

    if (root["outputs"]) {
        const YAML::Node o = root["outputs"];
        check_keys("outputs", o, {"report", "dump", "table"});
        if (o["report"]) s.report_path = scalar("outputs.report", o["report"]);
        if (o["dump"]) s.dump_path = scalar("outputs.dump", o["dump"]);
        if (o["table"]) s.table_path = scalar("outputs.table", o["table"]);
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string emit_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "p: " << s.p << '\n';
    os << "N: " << s.N << '\n';
    if (s.sharpness) os << "sharpness: {n: " << s.sharpness->n << ", d: " << s.sharpness->d << "}\n";
    if (s.variety) {
        os << "variety:\n  equations: [";
        for (std::size_t i = 0; i < s.variety->equations.size(); ++i) {
            os << (i ? ", " : "") << '"' << s.variety->equations[i].str() << '"';
        }
        os << "]\n  dimension: " << s.variety->dimension << '\n';
    }
    if (!s.map.empty()) {
        os << "map:\n";
        for (const EntireSeries& f : s.map) {
            if (f.tail()) {
                os << "  - {coeffs: " << quoted_list(f.coefficients()) << ", tail: {c: " << quoted(f.tail()->c)
                   << ", b: " << quoted(f.tail()->b) << "}}\n";
            } else {
                os << "  - " << quoted_list(f.coefficients()) << '\n';
            }
        }
    }
    if (!s.hypersurfaces.empty()) {
        os << "hypersurfaces:\n";
        for (const Hypersurface& h : s.hypersurfaces) {
            os << "  - {poly: \"" << h.poly().str() << "\", degree: " << h.degree() << "}\n";
        }
    }
    os << "M: " << s.M << '\n';
    if (!s.witness_points.empty()) {
        os << "witness_points:\n";
        for (const ProjectivePoint& pt : s.witness_points) os << "  - " << quoted_list(pt.coords()) << '\n';
    }
    os << "s_grid: " << quoted_list(s.s_grid) << '\n';
    os << "outputs: {report: \"" << s.report_path << "\", dump: \"" << s.dump_path << "\", table: \""
       << s.table_path << "\"}\n";
    return os.str();
}

Scenario scenario_from_sharpness(const SharpnessConfig& cfg, std::vector<Rational> s_grid) {
    Scenario s;
    s.p = cfg.p;
    s.N = cfg.n;
    s.sharpness = SharpnessSpec{cfg.n, cfg.d};
    s.map = cfg.map.coordinates();
    s.hypersurfaces = cfg.hypersurfaces;
    s.witness_points = {cfg.point};
    s.s_grid = std::move(s_grid);
    return s;
}

}  // namespace pnev
