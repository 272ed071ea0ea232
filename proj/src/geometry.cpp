#include "pnev/geometry.hpp"

#include "pnev/errors.hpp"
#include "pnev/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace pnev {

ProjectivePoint::ProjectivePoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
    auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Rational& c) { return c != 0; });
    if (lead == coords_.end()) throw InputError("projective point with all coordinates zero");
    Rational scale = *lead;
    for (Rational& c : coords_) c /= scale;
}

std::string ProjectivePoint::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ":" : "") << to_string(coords_[i]);
    os << ')';
    return os.str();
}

ProjectiveLine::ProjectiveLine(std::vector<Rational> a, std::vector<Rational> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size() || a_.size() < 2) throw InputError("line spanned by vectors of mismatched length");
    if (rank({a_, b_}) != 2) throw InputError("line spanned by linearly dependent vectors");
}

ProjectiveLine ProjectiveLine::coordinate_line(std::size_t N) {
    std::vector<Rational> a(N + 1);
    std::vector<Rational> b(N + 1);
    a[0] = 1;
    b[1] = 1;
    return ProjectiveLine(std::move(a), std::move(b));
}

Polynomial substitute(const Polynomial& q, std::span<const Polynomial> images) {
    if (images.size() != q.nvars()) throw InputError("substitution needs one image per variable");
    const std::size_t m = images.empty() ? 0 : images.front().nvars();
    Polynomial out(m);
    for (const auto& [e, c] : q.terms()) {
        Polynomial term = Polynomial::constant(m, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) term = term * images[i].pow(e[i]);
        }
        out += term;
    }
    return out;
}

std::size_t jacobian_rank_at(std::span<const Polynomial> polys, const ProjectivePoint& p) {
    RationalMatrix rows;
    for (const Polynomial& q : polys) {
        if (q.nvars() != p.coords().size()) throw InputError("polynomial and point live in different spaces");
        if (q.eval(p.coords()) != 0) {
            throw InputError("polynomial " + q.str() + " does not vanish at " + p.str());
        }
        std::vector<Rational> grad;
        for (std::size_t i = 0; i < q.nvars(); ++i) grad.push_back(q.derivative(i).eval(p.coords()));
        rows.push_back(std::move(grad));
    }
    return rank(rows);
}

bool transversality_check(std::span<const Hypersurface> ds, const VarietySpec& x, const ProjectivePoint& p) {
    const std::size_t N = p.ambient_dim();
    x.validate(N);
    std::vector<Polynomial> polys;
    for (const Hypersurface& d : ds) polys.push_back(d.poly());
    for (const Polynomial& e : x.equations) polys.push_back(e);
    return jacobian_rank_at(polys, p) == ds.size() + x.codimension(N);
}

BinaryForm restrict_to_line(const Hypersurface& d, const ProjectiveLine& line) {
    if (line.ambient_dim() != d.ambient_dim()) throw InputError("line and hypersurface live in different spaces");
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < line.a().size(); ++i) {
        images.push_back(Polynomial::constant(2, line.a()[i]) * Polynomial::variable(2, 0) +
                         Polynomial::constant(2, line.b()[i]) * Polynomial::variable(2, 1));
    }
    return substitute(d.poly(), images);
}

namespace {

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<std::pair<Integer, unsigned>> factors;
    for (Integer q = 2; q * q <= n; ++q) {
        unsigned k = 0;
        while (n % q == 0) {
            n /= q;
            ++k;
        }
        if (k) factors.emplace_back(q, k);
    }
    if (n > 1) factors.emplace_back(n, 1);
    std::vector<Integer> out{1};
    for (const auto& [q, k] : factors) {
        std::size_t base = out.size();
        Integer power = 1;
        for (unsigned j = 1; j <= k; ++j) {
            power *= q;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
        }
    }
    return out;
}

Rational horner(const std::vector<Rational>& coeffs, const Rational& t) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

}  // namespace

std::vector<std::pair<Rational, unsigned>> rational_roots(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) throw InputError("rational roots of the zero polynomial");
    std::vector<std::pair<Rational, unsigned>> roots;
    unsigned zero_mult = 0;
    while (coeffs.front() == 0) {
        coeffs.erase(coeffs.begin());
        ++zero_mult;
    }
    if (zero_mult) roots.emplace_back(0, zero_mult);
    if (coeffs.size() > 1) {
        Integer den = common_denominator(coeffs);
        Integer a0 = Rational(coeffs.front() * den).get_num();
        Integer an = Rational(coeffs.back() * den).get_num();
        std::vector<Integer> ps = divisors(a0);
        std::vector<Integer> qs = divisors(an);
        std::vector<Rational> candidates;
        for (const Integer& p : ps) {
            for (const Integer& q : qs) {
                Rational c(p, q);
                c.canonicalize();
                candidates.push_back(c);
                candidates.push_back(-c);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const Rational& c : candidates) {
            unsigned mult = 0;
            while (coeffs.size() > 1 && horner(coeffs, c) == 0) {
                coeffs = poly_divexact(coeffs, {-c, Rational(1)});
                ++mult;
            }
            if (mult) roots.emplace_back(c, mult);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

IntersectionProfile line_intersection_profile(const BinaryForm& form) {
    if (form.nvars() != 2) throw InputError("binary form must have two variables");
    if (form.is_zero()) throw InputError("intersection profile of the zero form (line lies in the hypersurface)");
    if (!form.is_homogeneous()) throw InputError("binary form is not homogeneous");
    const unsigned d = form.total_degree();
    unsigned v_mult = d;
    unsigned u_mult = d;
    for (const auto& [e, c] : form.terms()) {
        u_mult = std::min(u_mult, e[0]);
        v_mult = std::min(v_mult, e[1]);
    }
    IntersectionProfile out;
    // v | F  <=>  F(1, 0) = 0; u | F  <=>  F(0, 1) = 0.
    if (v_mult) out.roots.emplace_back(ProjectivePoint({1, 0}), v_mult);
    if (u_mult) out.roots.emplace_back(ProjectivePoint({0, 1}), u_mult);
    // The remaining factor, dehomogenized at v = 1 in t = u/v, has nonzero
    // constant and leading coefficients.
    std::vector<Rational> h(d - u_mult - v_mult + 1);
    for (const auto& [e, c] : form.terms()) h.at(e[0] - u_mult) += c;
    unsigned found = v_mult + u_mult;
    for (const auto& [t, mult] : rational_roots(h)) {
        out.roots.emplace_back(ProjectivePoint({t, 1}), mult);
        found += mult;
    }
    out.residual_degree = d - found;
    return out;
}

std::string IntersectionProfile::str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < roots.size(); ++i) {
        os << (i ? ", " : "") << roots[i].first.str() << " x" << roots[i].second;
    }
    os << "} residual degree " << residual_degree;
    return os.str();
}

namespace {

Polynomial var(std::size_t nvars, std::size_t i, unsigned k = 1) {
    return Polynomial::variable(nvars, i).pow(k);
}

std::vector<Hypersurface> sharpness_hypersurfaces(std::size_t n, unsigned d, long p) {
    const std::size_t nv = n + 1;
    std::vector<Hypersurface> ds;
    if (n == 1) {
        // x1 * prod_{j=1}^{d-1} (x1 - (1 + j p) x0): one zero at P, the others at unit radius.
        Polynomial q = var(nv, 1);
        for (unsigned j = 1; j < d; ++j) {
            q = q * (var(nv, 1) - Polynomial::constant(nv, Rational(1 + static_cast<long>(j) * p)) * var(nv, 0));
        }
        ds.emplace_back(q, d);
        return ds;
    }
    for (std::size_t i = 1; i + 1 <= n; ++i) {
        ds.emplace_back(var(nv, 1, d) + var(nv, 0, d - 1) * var(nv, i + 1), d);
    }
    // For d = 1 the quadric-style choice below would repeat D_1, so use x1.
    if (d == 1) ds.emplace_back(var(nv, 1), d);
    else ds.emplace_back(var(nv, 0, d - 1) * var(nv, 1) + var(nv, 2, d), d);
    return ds;
}

ProjectiveMap line_map(std::size_t n) {
    std::vector<EntireSeries> coords(n + 1);
    coords[0] = EntireSeries::monomial(1, 1);
    coords[1] = EntireSeries::constant(1);
    return ProjectiveMap(std::move(coords));
}

}  // namespace

SharpnessConfig sharpness_family(std::size_t n, unsigned d, const PrimeConfig& cfg) {
    if (n < 1 || d < 1) throw InputError("sharpness family needs n >= 1 and d >= 1");
    std::vector<Rational> origin(n + 1);
    origin[0] = 1;
    SharpnessConfig s{n, d, cfg.p(), sharpness_hypersurfaces(n, d, cfg.p()), line_map(n), ProjectivePoint(origin),
                      ProjectiveLine::coordinate_line(n)};

    auto fail = [&](const std::string& what) {
        throw CheckFailure("sharpness family (n=" + std::to_string(n) + ", d=" + std::to_string(d) + "): " + what);
    };
    for (const Hypersurface& h : s.hypersurfaces) {
        if (h.poly().eval(s.point.coords()) != 0) fail("P is not on " + h.poly().str());
    }
    if (!transversality_check(s.hypersurfaces, VarietySpec::projective_space(n), s.point)) {
        fail("hypersurfaces are not transverse at P");
    }
    const ProjectivePoint at_p({1, 0});
    for (std::size_t i = 0; i + 1 < n; ++i) {
        IntersectionProfile prof = line_intersection_profile(restrict_to_line(s.hypersurfaces[i], s.line));
        if (prof.roots.size() != 1 || !(prof.roots[0].first == at_p) || prof.roots[0].second != d) {
            fail("L meets D_" + std::to_string(i + 1) + " outside P: " + prof.str());
        }
    }
    IntersectionProfile last = line_intersection_profile(restrict_to_line(s.hypersurfaces.back(), s.line));
    auto simple_at_p = std::find_if(last.roots.begin(), last.roots.end(),
                                    [&](const auto& r) { return r.first == at_p && r.second == 1; });
    if (simple_at_p == last.roots.end()) fail("L does not meet D_n simply at P: " + last.str());
    return s;
}

}  // namespace pnev
