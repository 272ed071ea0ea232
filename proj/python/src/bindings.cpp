// Python module pnev._core. Rationals cross the boundary as fractions.Fraction
// (ints and "a/b" strings are accepted on input; floats are refused).

#include "pnev/errors.hpp"
#include "pnev/geometry.hpp"
#include "pnev/nevanlinna.hpp"
#include "pnev/run.hpp"
#include "pnev/scenario.hpp"
#include "pnev/series.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pnev;

namespace pybind11::detail {

template <>
struct type_caster<mpq_class> {
    PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (isinstance<str>(src)) {
            value = parse_rational(src.cast<std::string>());
            return true;
        }
        object rational = module_::import("numbers").attr("Rational");
        if (!isinstance(src, rational)) return false;
        std::string num = str(src.attr("numerator"));
        std::string den = str(src.attr("denominator"));
        value = mpq_class(mpz_class(num, 10), mpz_class(den, 10));
        value.canonicalize();
        return true;
    }

    static handle cast(const mpq_class& q, return_value_policy, handle) {
        return module_::import("fractions").attr("Fraction")(pnev::to_string(q)).release();
    }
};

}  // namespace pybind11::detail

namespace {

// -inf becomes None.
std::optional<Rational> ext(const ExtLog& x) {
    if (x.is_neg_inf()) return std::nullopt;
    return x.value();
}

Interval window(std::optional<Rational> lo, std::optional<Rational> hi) { return Interval{std::move(lo), std::move(hi)}; }

std::pair<std::optional<Rational>, std::optional<Rational>> bounds(const Interval& i) { return {i.lo, i.hi}; }

EntireSeries as_series(const py::handle& h) {
    if (py::isinstance<EntireSeries>(h)) return h.cast<EntireSeries>();
    if (py::isinstance<py::sequence>(h) && !py::isinstance<py::str>(h)) {
        return EntireSeries::polynomial(h.cast<std::vector<Rational>>());
    }
    return EntireSeries::constant(h.cast<Rational>());
}

ProjectiveMap make_map(const py::sequence& coords) {
    std::vector<EntireSeries> out;
    for (const py::handle& c : coords) out.push_back(as_series(c));
    return ProjectiveMap(std::move(out));
}

Hypersurface make_hypersurface(const std::string& text, std::size_t nvars, std::optional<unsigned> degree) {
    Polynomial q = Polynomial::parse(text, nvars);
    return degree ? Hypersurface(std::move(q), *degree) : Hypersurface(std::move(q));
}

Subcommand subcommand(const std::string& name) {
    auto c = parse_subcommand(name);
    if (!c) throw InputError("unknown subcommand '" + name + "'");
    return *c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact non-archimedean Nevanlinna functions over Q with the p-adic absolute value";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CheckFailure>(m, "CheckFailure", PyExc_RuntimeError);

    m.def("log_abs", [](const Rational& x, long p) { return ext(log_abs(x, PrimeConfig(p))); }, py::arg("x"),
          py::arg("p"), "log_p |x|_p, or None for x = 0.");
    m.def("is_prime", &is_prime);

    py::class_<PLFunction>(m, "PLFunction")
        .def_static("affine", [](const Rational& slope, const Rational& intercept) {
            return PLFunction::affine(slope, intercept);
        }, py::arg("slope"), py::arg("intercept"))
        .def_static("constant", [](const Rational& c) { return PLFunction::constant(c); })
        .def_property_readonly("domain", [](const PLFunction& f) { return bounds(f.domain()); })
        .def_property_readonly("breakpoints", &PLFunction::breakpoints)
        .def_property_readonly("slopes", &PLFunction::slopes)
        .def("__call__", &PLFunction::eval)
        .def("eventual_slope", &PLFunction::eventual_slope)
        .def("constant_on", [](const PLFunction& f, std::optional<Rational> lo, std::optional<Rational> hi) {
            return f.constant_on(window(std::move(lo), std::move(hi)));
        }, py::arg("lo") = py::none(), py::arg("hi") = py::none(),
           "Constant value on [lo, hi] (None = infinite end), or None if f varies there.")
        .def("infimum_on", [](const PLFunction& f, std::optional<Rational> lo, std::optional<Rational> hi) {
            return ext(f.infimum_on(window(std::move(lo), std::move(hi))));
        }, py::arg("lo") = py::none(), py::arg("hi") = py::none())
        .def("restrict", [](const PLFunction& f, std::optional<Rational> lo, std::optional<Rational> hi) {
            return f.restrict_to(window(std::move(lo), std::move(hi)));
        }, py::arg("lo") = py::none(), py::arg("hi") = py::none())
        .def("is_convex", &PLFunction::is_convex)
        .def("is_constant", &PLFunction::is_constant)
        .def("scaled", &PLFunction::scaled)
        .def("shifted", &PLFunction::shifted)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", &PLFunction::str)
        .def("__repr__", [](const PLFunction& f) { return "<PLFunction " + f.str() + ">"; });

    m.def("plf_max", [](const std::vector<PLFunction>& fs) { return plf_max(fs); });
    m.def("plf_min", [](const std::vector<PLFunction>& fs) { return plf_min(fs); });

    py::class_<EntireSeries>(m, "EntireSeries")
        .def(py::init([](const std::vector<Rational>& coeffs) { return EntireSeries::polynomial(coeffs); }),
             py::arg("coeffs"))
        .def_static("truncated", [](const std::vector<Rational>& head, const Rational& c, const Rational& b) {
            return EntireSeries::truncated(head, {c, b});
        }, py::arg("head"), py::arg("c"), py::arg("b"),
           "Series known through head, with v_p(a_i) >= c*i + b beyond it.")
        .def_property_readonly("coefficients", &EntireSeries::coefficients)
        .def_property_readonly("tail", [](const EntireSeries& f) -> std::optional<std::pair<Rational, Rational>> {
            if (!f.tail()) return std::nullopt;
            return std::pair{f.tail()->c, f.tail()->b};
        })
        .def("is_polynomial", &EntireSeries::is_polynomial)
        .def(py::self == py::self)
        .def("__str__", &EntireSeries::str)
        .def("__repr__", [](const EntireSeries& f) { return "<EntireSeries " + f.str() + ">"; });

    m.def("validity_window", [](const EntireSeries& f, long p) { return bounds(validity_window(f, PrimeConfig(p))); });
    m.def("gauss_norm", [](const EntireSeries& f, long p) { return gauss_norm(f, PrimeConfig(p)); });
    m.def("newton_polygon", [](const EntireSeries& f, long p) {
        std::vector<std::pair<std::size_t, Rational>> out;
        for (const auto& v : newton_polygon(f, PrimeConfig(p)).vertices) out.emplace_back(v.index, v.valuation);
        return out;
    }, "Vertices (i, v_p(a_i)) of the lower convex hull.");
    m.def("zero_count", [](const EntireSeries& f, const Rational& s, long p) {
        return zero_count(f, s, PrimeConfig(p));
    }, py::arg("f"), py::arg("s"), py::arg("p"));
    m.def("counting_function", [](const EntireSeries& f, long p) { return counting_plf(f, PrimeConfig(p)); });
    m.def("series_mul", [](const EntireSeries& f, const EntireSeries& g, long p) {
        return series_mul(f, g, PrimeConfig(p));
    });

    py::class_<Hypersurface>(m, "Hypersurface")
        .def(py::init(&make_hypersurface), py::arg("poly"), py::arg("nvars"), py::arg("degree") = py::none())
        .def_property_readonly("degree", &Hypersurface::degree)
        .def_property_readonly("poly", [](const Hypersurface& h) { return h.poly().str(); })
        .def("pow", &Hypersurface::pow)
        .def("__str__", [](const Hypersurface& h) { return h.poly().str(); });

    py::class_<ProjectiveMap>(m, "ProjectiveMap")
        .def(py::init(&make_map), py::arg("coords"),
             "Coordinates as EntireSeries, coefficient lists or constants.")
        .def_static("reduced", [](const py::sequence& coords) {
            std::vector<EntireSeries> out;
            for (const py::handle& c : coords) out.push_back(as_series(c));
            return ProjectiveMap::reduced(std::move(out));
        })
        .def_property_readonly("coordinates", &ProjectiveMap::coordinates)
        .def_property_readonly("ambient_dim", &ProjectiveMap::ambient_dim)
        .def("rescaled", [](const ProjectiveMap& f, const Rational& c, long p) { return f.rescaled(c, PrimeConfig(p)); })
        .def("permuted", [](const ProjectiveMap& f, const std::vector<std::size_t>& perm) { return f.permuted(perm); });

    m.def("pullback", [](const Hypersurface& d, const ProjectiveMap& f, long p) {
        return pullback(d, f, PrimeConfig(p));
    });
    m.def("characteristic", [](const ProjectiveMap& f, long p) { return characteristic(f, PrimeConfig(p)); });
    m.def("proximity", [](const ProjectiveMap& f, const Hypersurface& d, long p) {
        return proximity(f, d, PrimeConfig(p));
    });
    m.def("counting", [](const ProjectiveMap& f, const Hypersurface& d, long p) {
        return counting(f, d, PrimeConfig(p));
    });
    m.def("fmt_residual", [](const ProjectiveMap& f, const Hypersurface& d, long p) {
        return fmt_residual(f, d, PrimeConfig(p));
    }, "The constant m + N - d T; raises CheckFailure if it is not the predicted constant.");
    m.def("defect", [](const ProjectiveMap& f, const Hypersurface& d, long p) { return defect(f, d, PrimeConfig(p)); });
    m.def("verify_image_in_variety", [](const ProjectiveMap& f, const std::vector<std::string>& equations,
                                        std::size_t dimension, long p) {
        VarietySpec x{{}, dimension};
        for (const auto& e : equations) x.equations.push_back(Polynomial::parse(e, f.ambient_dim() + 1));
        return verify_image_in_variety(f, x, PrimeConfig(p));
    }, py::arg("f"), py::arg("equations"), py::arg("dimension"), py::arg("p"));

    py::class_<NevanlinnaReport>(m, "NevanlinnaReport")
        .def_readonly("characteristic", &NevanlinnaReport::characteristic)
        .def_property_readonly("proximities", [](const NevanlinnaReport& r) {
            std::vector<PLFunction> out;
            for (const auto& t : r.terms) out.push_back(t.proximity);
            return out;
        })
        .def_property_readonly("countings", [](const NevanlinnaReport& r) {
            std::vector<PLFunction> out;
            for (const auto& t : r.terms) out.push_back(t.counting);
            return out;
        })
        .def_readonly("weighted_sum", &NevanlinnaReport::weighted_sum)
        .def_readonly("bound_coefficient", &NevanlinnaReport::bound_coefficient)
        .def_readonly("bound", &NevanlinnaReport::bound)
        .def_readonly("margin", &NevanlinnaReport::margin)
        .def_readonly("sum_slope", &NevanlinnaReport::sum_slope)
        .def_readonly("bound_slope", &NevanlinnaReport::bound_slope)
        .def_readonly("margin_slope", &NevanlinnaReport::margin_slope)
        .def_property_readonly("margin_infimum", [](const NevanlinnaReport& r) { return ext(r.margin_infimum); })
        .def_readonly("passed", &NevanlinnaReport::pass)
        .def_readonly("tight", &NevanlinnaReport::tight);

    m.def("smt_report", [](const ProjectiveMap& f, const std::vector<Hypersurface>& ds, long p, unsigned multiplier,
                           std::optional<std::size_t> dimension) {
        VarietySpec x = VarietySpec::projective_space(f.ambient_dim());
        if (dimension) x.dimension = *dimension;
        return smt_report(f, ds, x, multiplier, PrimeConfig(p));
    }, py::arg("f"), py::arg("hypersurfaces"), py::arg("p"), py::arg("multiplier") = 1u,
       py::arg("dimension") = py::none());

    m.def("sorted_proximity_slopes", [](const ProjectiveMap& f, const std::vector<Hypersurface>& ds, long p) {
        BoundednessReport r = sorted_proximity_boundedness(f, ds, VarietySpec::projective_space(f.ambient_dim()),
                                                           PrimeConfig(p));
        std::vector<Rational> slopes;
        for (const auto& e : r.sorted) slopes.push_back(e.eventual_slope);
        return std::pair{slopes, r.pass};
    }, "Eventual proximity slopes, descending, and whether all past the first n vanish.");

    py::class_<SharpnessConfig>(m, "SharpnessConfig")
        .def_readonly("n", &SharpnessConfig::n)
        .def_readonly("d", &SharpnessConfig::d)
        .def_readonly("hypersurfaces", &SharpnessConfig::hypersurfaces)
        .def_readonly("map", &SharpnessConfig::map)
        .def_property_readonly("point", [](const SharpnessConfig& s) { return s.point.coords(); });
    m.def("sharpness_family", [](std::size_t n, unsigned d, long p) { return sharpness_family(n, d, PrimeConfig(p)); },
          py::arg("n"), py::arg("d"), py::arg("p"));

    m.def("jacobian_rank_at", [](const std::vector<std::string>& polys, const std::vector<Rational>& point) {
        std::vector<Polynomial> qs;
        for (const auto& t : polys) qs.push_back(Polynomial::parse(t, point.size()));
        return jacobian_rank_at(qs, ProjectivePoint(point));
    }, py::arg("polys"), py::arg("point"));

    m.def("run", [](const std::string& command, const std::string& document) {
        RunResult r = run(subcommand(command), parse_scenario(document));
        py::dict artifacts;
        for (const Artifact& a : r.artifacts) artifacts[py::str(a.path)] = a.content;
        return py::make_tuple(r.exit_code, r.report, artifacts);
    }, py::arg("command"), py::arg("document"),
       "Runs a CLI subcommand on a scenario document; returns (exit_code, report, artifacts).");
}
