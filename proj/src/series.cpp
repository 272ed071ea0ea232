#include "pnev/series.hpp"

#include "pnev/errors.hpp"

#include <algorithm>
#include <sstream>

namespace pnev {

EntireSeries EntireSeries::polynomial(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    EntireSeries f;
    f.coeffs_ = std::move(coeffs);
    return f;
}

EntireSeries EntireSeries::truncated(std::vector<Rational> head, TailCertificate tail) {
    if (head.empty()) throw InputError("truncated series needs at least one known coefficient");
    EntireSeries f;
    f.coeffs_ = std::move(head);
    f.tail_ = std::move(tail);
    return f;
}

EntireSeries EntireSeries::monomial(std::size_t k, const Rational& c) {
    std::vector<Rational> coeffs(k + 1);
    coeffs[k] = c;
    return polynomial(std::move(coeffs));
}

std::size_t EntireSeries::truncation_order() const {
    return coeffs_.empty() ? 0 : coeffs_.size() - 1;
}

bool EntireSeries::head_is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& a) { return a == 0; });
}

std::size_t EntireSeries::order_at_zero() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return i;
    }
    throw InputError("zero series has no lowest coefficient");
}

Rational EntireSeries::coefficient(std::size_t i) const {
    if (i < coeffs_.size()) return coeffs_[i];
    if (tail_) throw WindowError("coefficient " + std::to_string(i) + " lies beyond the truncation order");
    return 0;
}

std::string EntireSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& a = coeffs_[i];
        if (a == 0) continue;
        if (first) {
            if (a < 0) os << '-';
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        Rational mag = abs(a);
        if (i == 0) {
            os << to_string(mag);
            continue;
        }
        if (mag != 1) os << to_string(mag) << '*';
        os << 'z';
        if (i > 1) os << '^' << i;
    }
    if (first) os << '0';
    if (tail_) {
        os << " + O(z^" << coeffs_.size() << ") {v_p(a_i) >= " << to_string(tail_->c) << "*i + "
           << to_string(tail_->b) << '}';
    }
    return os.str();
}

Rational NewtonPolygon::slope(std::size_t k) const {
    const Vertex& a = vertices.at(k);
    const Vertex& b = vertices.at(k + 1);
    return (b.valuation - a.valuation) / Rational(static_cast<long>(b.index - a.index));
}

std::string NewtonPolygon::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        os << (k ? ", " : "") << '(' << vertices[k].index << ", " << to_string(vertices[k].valuation) << ')';
    }
    os << ']';
    return os.str();
}

namespace {

void require_nonzero(const EntireSeries& f) {
    if (f.head_is_zero()) throw InputError("zero series: Gauss norm and Newton polygon are undefined");
}

// Smallest b with v_p(a_i) >= c*i + b for every index i, or nullopt for the
// zero polynomial. Precondition: c <= tail certificate slope, if any.
std::optional<Rational> uniform_bound(const EntireSeries& f, const Rational& c, const PrimeConfig& cfg) {
    std::optional<Rational> b;
    const auto& a = f.coefficients();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rational t = Rational(valuation(a[i], cfg.p())) - c * static_cast<long>(i);
        if (!b || t < *b) b = t;
    }
    if (const auto& tail = f.tail()) {
        Rational t = tail->b + (tail->c - c) * static_cast<long>(a.size());
        if (!b || t < *b) b = t;
    }
    return b;
}

std::optional<Rational> min_cert_slope(const EntireSeries& f, const EntireSeries& g) {
    std::optional<Rational> c;
    for (const EntireSeries* s : {&f, &g}) {
        if (s->tail() && (!c || s->tail()->c < *c)) c = s->tail()->c;
    }
    return c;
}

}  // namespace

Interval validity_window(const EntireSeries& f, const PrimeConfig& cfg) {
    if (f.is_polynomial()) return Interval::line();
    require_nonzero(f);
    const TailCertificate& tail = *f.tail();
    const auto& a = f.coefficients();
    const Rational next = static_cast<long>(a.size());  // T + 1

    // head(s) >= (T+1)(s - c) - b iff some known term does; term i does for
    // s <= r_i since its slope i is below T + 1.
    std::optional<Rational> reach;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rational log_ai = -valuation(a[i], cfg.p());
        Rational r = (log_ai + next * tail.c + tail.b) / (next - static_cast<long>(i));
        if (!reach || r > *reach) reach = r;
    }
    return Interval::at_most(std::min(*reach, tail.c));
}

PLFunction tropical_max_of_lines(std::vector<std::pair<Rational, Rational>> lines) {
    if (lines.empty()) throw InputError("max of an empty family of lines");
    std::sort(lines.begin(), lines.end());
    // Keep the largest intercept per slope.
    std::vector<std::pair<Rational, Rational>> dedup;
    for (auto& l : lines) {
        if (!dedup.empty() && dedup.back().first == l.first) dedup.back() = std::move(l);
        else dedup.push_back(std::move(l));
    }
    auto cross = [](const auto& l1, const auto& l2) -> Rational { return (l1.second - l2.second) / (l2.first - l1.first); };
    std::vector<std::pair<Rational, Rational>> hull;
    for (auto& l : dedup) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back())) {
            hull.pop_back();
        }
        hull.push_back(std::move(l));
    }
    std::vector<Rational> cuts;
    std::vector<Rational> slopes;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) cuts.push_back(cross(hull[k], hull[k + 1]));
    for (const auto& l : hull) slopes.push_back(l.first);
    Rational anchor = cuts.empty() ? Rational(0) : cuts.front();
    Rational value = hull.front().first * anchor + hull.front().second;
    return PLFunction::from_pieces(Interval::line(), std::move(cuts), std::move(slopes), anchor, value);
}

PLFunction gauss_norm(const EntireSeries& f, const PrimeConfig& cfg) {
    require_nonzero(f);
    std::vector<std::pair<Rational, Rational>> lines;
    const auto& a = f.coefficients();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        lines.emplace_back(static_cast<long>(i), log_abs(a[i], cfg).value());
    }
    PLFunction g = tropical_max_of_lines(std::move(lines));
    if (f.is_polynomial()) return g;
    return g.restrict_to(validity_window(f, cfg));
}

NewtonPolygon newton_polygon(const EntireSeries& f, const PrimeConfig& cfg) {
    require_nonzero(f);
    NewtonPolygon np;
    const auto& a = f.coefficients();
    // Andrew's monotone chain, lower hull only, collinear points dropped.
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        NewtonPolygon::Vertex v{i, Rational(valuation(a[i], cfg.p()))};
        while (np.vertices.size() >= 2) {
            const auto& o = np.vertices[np.vertices.size() - 2];
            const auto& m = np.vertices.back();
            // Pop m unless it lies strictly below the chord o -> v.
            Rational lhs = (m.valuation - o.valuation) * static_cast<long>(v.index - o.index);
            Rational rhs = (v.valuation - o.valuation) * static_cast<long>(m.index - o.index);
            if (lhs < rhs) break;
            np.vertices.pop_back();
        }
        np.vertices.push_back(std::move(v));
    }
    if (!f.is_polynomial()) np.certified_below = *validity_window(f, cfg).hi;
    return np;
}

std::size_t zero_count(const EntireSeries& f, const Rational& s, const PrimeConfig& cfg) {
    NewtonPolygon np = newton_polygon(f, cfg);
    if (np.certified_below && !(s < *np.certified_below)) {
        throw WindowError("zero_count: s = " + to_string(s) + " not below the certified bound " +
                          to_string(*np.certified_below));
    }
    std::size_t count = np.vertices.front().index;
    for (std::size_t k = 0; k < np.segment_count(); ++k) {
        if (np.slope(k) <= s) count = np.vertices[k + 1].index;
    }
    return count;
}

PLFunction counting_plf(const EntireSeries& f, const PrimeConfig& cfg) {
    NewtonPolygon np = newton_polygon(f, cfg);
    // Roots at the origin contribute s; a segment of slope sigma and width w
    // contributes w * max(0, s - sigma).
    const Rational ord = static_cast<long>(np.vertices.front().index);
    std::vector<Rational> cuts;
    std::vector<Rational> slopes{ord};
    for (std::size_t k = 0; k < np.segment_count(); ++k) {
        Rational width = static_cast<long>(np.vertices[k + 1].index - np.vertices[k].index);
        cuts.push_back(np.slope(k));
        slopes.push_back(slopes.back() + width);
    }
    Rational anchor = cuts.empty() ? Rational(0) : cuts.front();
    PLFunction n = PLFunction::from_pieces(Interval::line(), std::move(cuts), std::move(slopes), anchor, ord * anchor);
    if (f.is_polynomial()) return n;
    return n.restrict_to(validity_window(f, cfg));
}

EntireSeries series_scale(const EntireSeries& f, const Rational& c, const PrimeConfig& cfg) {
    if (c == 0) return EntireSeries();
    std::vector<Rational> coeffs = f.coefficients();
    for (Rational& a : coeffs) a *= c;
    if (f.is_polynomial()) return EntireSeries::polynomial(std::move(coeffs));
    TailCertificate t = *f.tail();
    t.b += valuation(c, cfg.p());
    return EntireSeries::truncated(std::move(coeffs), t);
}

EntireSeries series_add(const EntireSeries& f, const EntireSeries& g, const PrimeConfig& cfg) {
    std::optional<Rational> c = min_cert_slope(f, g);
    if (!c) {
        std::vector<Rational> sum(std::max(f.coefficients().size(), g.coefficients().size()));
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f.coefficient(i) + g.coefficient(i);
        return EntireSeries::polynomial(std::move(sum));
    }
    std::size_t order = std::numeric_limits<std::size_t>::max();
    for (const EntireSeries* s : {&f, &g}) {
        if (s->tail()) order = std::min(order, s->truncation_order());
    }
    std::vector<Rational> head(order + 1);
    for (std::size_t i = 0; i <= order; ++i) {
        if (i < f.coefficients().size()) head[i] += f.coefficients()[i];
        if (i < g.coefficients().size()) head[i] += g.coefficients()[i];
    }
    std::optional<Rational> bf = uniform_bound(f, *c, cfg);
    std::optional<Rational> bg = uniform_bound(g, *c, cfg);
    Rational b = bf && bg ? std::min(*bf, *bg) : (bf ? *bf : *bg);
    return EntireSeries::truncated(std::move(head), {*c, b});
}

EntireSeries series_mul(const EntireSeries& f, const EntireSeries& g, const PrimeConfig& cfg) {
    if (f.is_zero() || g.is_zero()) return EntireSeries();
    std::optional<Rational> c = min_cert_slope(f, g);
    const auto& a = f.coefficients();
    const auto& b = g.coefficients();
    if (!c) {
        std::vector<Rational> prod(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
        }
        return EntireSeries::polynomial(std::move(prod));
    }
    // Coefficient k is exact as long as it only involves known coefficients.
    std::size_t order = std::numeric_limits<std::size_t>::max();
    for (const EntireSeries* s : {&f, &g}) {
        if (s->tail()) order = std::min(order, s->truncation_order());
    }
    std::vector<Rational> head(order + 1);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) head[i + j] += a[i] * b[j];
    }
    Rational bound = *uniform_bound(f, *c, cfg) + *uniform_bound(g, *c, cfg);
    return EntireSeries::truncated(std::move(head), {*c, bound});
}

EntireSeries series_pow(const EntireSeries& f, unsigned k, const PrimeConfig& cfg) {
    EntireSeries out = EntireSeries::constant(1);
    EntireSeries base = f;
    while (k) {
        if (k & 1u) out = series_mul(out, base, cfg);
        k >>= 1u;
        if (k) base = series_mul(base, base, cfg);
    }
    return out;
}

}  // namespace pnev
