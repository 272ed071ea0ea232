#include "pnev/nevanlinna.hpp"

#include "pnev/errors.hpp"
#include "pnev/linalg.hpp"

#include <algorithm>
#include <map>

namespace pnev {

Hypersurface::Hypersurface(Polynomial poly, unsigned degree) : poly_(std::move(poly)), degree_(degree) {
    if (poly_.nvars() < 2) throw InputError("hypersurface needs at least two homogeneous coordinates");
    if (poly_.is_zero()) throw InputError("hypersurface polynomial is zero");
    if (!poly_.is_homogeneous()) throw InputError("polynomial is not homogeneous: " + poly_.str());
    if (degree_ == 0) throw InputError("hypersurface degree must be positive");
    if (poly_.total_degree() != degree_) {
        throw InputError("degree mismatch: declared " + std::to_string(degree_) + ", actual " +
                         std::to_string(poly_.total_degree()));
    }
}

Hypersurface::Hypersurface(Polynomial poly) : Hypersurface(poly, poly.total_degree()) {}

void VarietySpec::validate(std::size_t N) const {
    for (const Polynomial& e : equations) {
        if (e.nvars() != N + 1) throw InputError("variety equation in the wrong number of variables");
        if (!e.is_homogeneous()) throw InputError("variety equation is not homogeneous: " + e.str());
    }
    if (dimension < 1 || dimension > N) {
        throw InputError("variety dimension must lie in [1, " + std::to_string(N) + "]");
    }
    if (equations.empty() && dimension != N) {
        throw InputError("X = P^" + std::to_string(N) + " has dimension " + std::to_string(N));
    }
}

namespace {

std::vector<Rational> padded(const EntireSeries& s, std::size_t len) {
    std::vector<Rational> row = s.coefficients();
    row.resize(len);
    return row;
}

}  // namespace

ProjectiveMap::ProjectiveMap(std::vector<EntireSeries> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw InputError("a map to P^N needs at least two coordinates");
    if (std::all_of(coords_.begin(), coords_.end(), [](const EntireSeries& s) { return s.head_is_zero(); })) {
        throw InputError("all coordinates of the map are zero");
    }
    std::size_t len = 0;
    for (const EntireSeries& s : coords_) len = std::max(len, s.coefficients().size());
    RationalMatrix rows;
    for (const EntireSeries& s : coords_) rows.push_back(padded(s, len));
    if (rank(rows) < 2) throw InputError("the map is constant (coordinates are proportional)");

    if (is_polynomial()) {
        std::vector<Rational> g;
        for (const EntireSeries& s : coords_) g = poly_gcd(g, s.coefficients());
        if (g.size() > 1) throw InputError("coordinates share a common zero (nonconstant gcd)");
    }
}

ProjectiveMap ProjectiveMap::reduced(std::vector<EntireSeries> coords) {
    bool polynomial = std::all_of(coords.begin(), coords.end(), [](const EntireSeries& s) { return s.is_polynomial(); });
    if (polynomial) {
        std::vector<Rational> g;
        for (const EntireSeries& s : coords) g = poly_gcd(g, s.coefficients());
        if (g.size() > 1) {
            for (EntireSeries& s : coords) s = EntireSeries::polynomial(poly_divexact(s.coefficients(), g));
        }
    }
    return ProjectiveMap(std::move(coords));
}

bool ProjectiveMap::is_polynomial() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const EntireSeries& s) { return s.is_polynomial(); });
}

ProjectiveMap ProjectiveMap::rescaled(const Rational& c, const PrimeConfig& cfg) const {
    if (c == 0) throw InputError("rescaling by zero");
    std::vector<EntireSeries> out;
    for (const EntireSeries& s : coords_) out.push_back(series_scale(s, c, cfg));
    return ProjectiveMap(std::move(out));
}

ProjectiveMap ProjectiveMap::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != coords_.size()) throw InputError("permutation has wrong length");
    std::vector<EntireSeries> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out.at(perm[i]) = coords_[i];
    return ProjectiveMap(std::move(out));
}

EntireSeries pullback(const Polynomial& q, const ProjectiveMap& f, const PrimeConfig& cfg) {
    const auto& coords = f.coordinates();
    if (q.nvars() != coords.size()) {
        throw InputError("dimension mismatch: polynomial in " + std::to_string(q.nvars()) +
                         " variables, map has " + std::to_string(coords.size()) + " coordinates");
    }
    std::map<std::pair<std::size_t, unsigned>, EntireSeries> powers;
    auto power = [&](std::size_t j, unsigned k) -> const EntireSeries& {
        auto key = std::make_pair(j, k);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, series_pow(coords[j], k, cfg)).first;
        return it->second;
    };
    EntireSeries sum;
    for (const auto& [e, c] : q.terms()) {
        EntireSeries term = EntireSeries::constant(c);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] > 0) term = series_mul(term, power(j, e[j]), cfg);
        }
        sum = series_add(sum, term, cfg);
    }
    return sum;
}

EntireSeries pullback(const Hypersurface& d, const ProjectiveMap& f, const PrimeConfig& cfg) {
    return pullback(d.poly(), f, cfg);
}

EntireSeries checked_pullback(const Hypersurface& d, const ProjectiveMap& f, const PrimeConfig& cfg) {
    EntireSeries q = pullback(d, f, cfg);
    if (q.head_is_zero()) {
        throw ImageInHypersurface("image of the map is contained in the hypersurface " + d.poly().str() +
                                  (q.is_polynomial() ? "" : " (to truncation order)"));
    }
    return q;
}

PLFunction characteristic(const ProjectiveMap& f, const PrimeConfig& cfg) {
    std::vector<PLFunction> norms;
    for (const EntireSeries& s : f.coordinates()) {
        if (!s.head_is_zero()) norms.push_back(gauss_norm(s, cfg));
    }
    return plf_max(norms);
}

PLFunction proximity(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg) {
    EntireSeries q = checked_pullback(d, f, cfg);
    return characteristic(f, cfg).scaled(d.degree()) - gauss_norm(q, cfg);
}

PLFunction counting(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg) {
    return counting_plf(checked_pullback(d, f, cfg), cfg);
}

FmtCheck fmt_check(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg) {
    EntireSeries q = checked_pullback(d, f, cfg);
    PLFunction t = characteristic(f, cfg);
    PLFunction m = t.scaled(d.degree()) - gauss_norm(q, cfg);
    PLFunction n = counting_plf(q, cfg);
    PLFunction residual = m + n - t.scaled(d.degree());
    std::optional<Rational> c = residual.constant_on(residual.domain());
    if (!c) throw CheckFailure("m + N - d*T is not constant: " + residual.str());
    Rational expected = -log_abs(q.lowest_coefficient(), cfg).value();
    if (*c != expected) {
        throw CheckFailure("m + N - d*T = " + to_string(*c) + ", expected -log_p|a_k| = " + to_string(expected));
    }
    return {std::move(t), std::move(m), std::move(n), *c, expected};
}

Rational fmt_residual(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg) {
    return fmt_check(f, d, cfg).residual;
}

Rational defect(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg) {
    PLFunction t = characteristic(f, cfg);
    PLFunction m = proximity(f, d, cfg);
    if (m.domain().bounded_above() || t.domain().bounded_above()) {
        throw InputError("defect undefined: proximity is only certified on " + m.domain().str() +
                         "; final slope there is " + to_string(m.final_slope()));
    }
    Rational growth = t.eventual_slope();
    if (growth <= 0) throw InputError("defect undefined: characteristic function does not grow");
    return m.eventual_slope() / (Rational(d.degree()) * growth);
}

bool verify_image_in_variety(const ProjectiveMap& f, const VarietySpec& x, const PrimeConfig& cfg) {
    return std::all_of(x.equations.begin(), x.equations.end(),
                       [&](const Polynomial& e) { return pullback(e, f, cfg).head_is_zero(); });
}

NevanlinnaReport smt_report(const ProjectiveMap& f, std::span<const Hypersurface> ds, const VarietySpec& x,
                            unsigned multiplier, const PrimeConfig& cfg, Preconditions pre) {
    const std::size_t N = f.ambient_dim();
    if (ds.empty()) throw InputError("smt_report needs at least one hypersurface");
    if (multiplier == 0) throw InputError("multiplier M must be a positive integer");
    x.validate(N);
    for (const Hypersurface& d : ds) {
        if (d.ambient_dim() != N) throw InputError("hypersurface and map live in different projective spaces");
    }
    if (!verify_image_in_variety(f, x, cfg)) throw InputError("the image of the map is not contained in X");

    NevanlinnaReport r;
    r.dimension = x.dimension;
    r.multiplier = multiplier;
    r.preconditions = std::move(pre);
    r.common_zero_status = f.common_zero_status();
    r.characteristic = characteristic(f, cfg);

    Rational max_ratio = 0;
    std::optional<PLFunction> sum;
    for (const Hypersurface& d : ds) {
        EntireSeries q = checked_pullback(d, f, cfg);
        PLFunction m = r.characteristic.scaled(d.degree()) - gauss_norm(q, cfg);
        PLFunction n = counting_plf(q, cfg);
        std::optional<Rational> delta;
        if (!m.domain().bounded_above() && r.characteristic.eventual_slope() > 0) {
            delta = m.eventual_slope() / (Rational(d.degree()) * r.characteristic.eventual_slope());
        }
        PLFunction weighted = m.scaled(make_rational(1, d.degree()));
        sum = sum ? *sum + weighted : weighted;
        max_ratio = std::max(max_ratio, make_rational(multiplier, d.degree()));
        r.terms.push_back({d, std::move(q), std::move(m), std::move(n), std::move(delta)});
    }
    r.bound_coefficient = Rational(static_cast<long>(x.dimension) - 1) + max_ratio;
    r.weighted_sum = *sum;
    r.bound = r.characteristic.scaled(r.bound_coefficient);
    r.margin = r.bound - r.weighted_sum;

    r.verdict_window = intersect(Interval::at_least(0), r.margin.domain());
    if (r.verdict_window.empty()) throw WindowError("certified domain " + r.margin.domain().str() + " misses s >= 0");
    r.window_unbounded = !r.verdict_window.bounded_above();
    PLFunction margin_w = r.margin.restrict_to(r.verdict_window);
    r.sum_slope = r.weighted_sum.restrict_to(r.verdict_window).final_slope();
    r.bound_slope = r.bound.restrict_to(r.verdict_window).final_slope();
    r.margin_slope = margin_w.final_slope();
    r.margin_infimum = margin_w.infimum_on(r.verdict_window);
    r.pass = !r.margin_infimum.is_neg_inf();
    r.tight = r.margin_slope == 0;
    return r;
}

BoundednessReport sorted_proximity_boundedness(const ProjectiveMap& f, std::span<const Hypersurface> ds,
                                               const VarietySpec& x, const PrimeConfig& cfg) {
    x.validate(f.ambient_dim());
    if (ds.size() <= x.dimension) {
        throw InputError("bounded-proximity check needs q > n (q = " + std::to_string(ds.size()) +
                         ", n = " + std::to_string(x.dimension) + ")");
    }
    if (!f.is_polynomial()) throw InputError("bounded-proximity check requires polynomial coordinates");
    BoundednessReport r;
    r.dimension = x.dimension;
    const Interval window = Interval::at_least(0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        PLFunction m = proximity(f, ds[i], cfg);
        Rational slope = m.eventual_slope();
        std::optional<Rational> sup;
        if (slope <= 0) sup = -(-m).infimum_on(window).value();
        r.sorted.push_back({i, slope, sup});
    }
    std::stable_sort(r.sorted.begin(), r.sorted.end(),
                     [](const auto& a, const auto& b) { return a.eventual_slope > b.eventual_slope; });
    r.pass = std::all_of(r.sorted.begin() + static_cast<std::ptrdiff_t>(x.dimension), r.sorted.end(),
                         [](const auto& e) { return e.eventual_slope == 0; });
    return r;
}

}  // namespace pnev
