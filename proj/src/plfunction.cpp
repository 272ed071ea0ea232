#include "pnev/plfunction.hpp"

#include "pnev/errors.hpp"

#include <algorithm>
#include <sstream>

namespace pnev {

bool Interval::contains(const Interval& other) const {
    if (other.empty()) return true;
    if (lo && (!other.lo || *other.lo < *lo)) return false;
    if (hi && (!other.hi || *other.hi > *hi)) return false;
    return true;
}

std::string Interval::str() const {
    return (lo ? "[" + to_string(*lo) : std::string("(-inf")) + ", " +
           (hi ? to_string(*hi) + "]" : std::string("+inf)"));
}

Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo && b.lo) r.lo = std::max(*a.lo, *b.lo);
    else r.lo = a.lo ? a.lo : b.lo;
    if (a.hi && b.hi) r.hi = std::min(*a.hi, *b.hi);
    else r.hi = a.hi ? a.hi : b.hi;
    return r;
}

namespace {

// A sample point strictly inside the piece between two cuts (or on the piece,
// when the domain is a single point).
Rational sample_between(const std::optional<Rational>& left, const std::optional<Rational>& right) {
    if (left && right) return (*left + *right) / 2;
    if (left) return *left + 1;
    if (right) return *right - 1;
    return 0;
}

struct Piece {
    std::optional<Rational> left;
    std::optional<Rational> right;
    Rational sample;
};

std::vector<Piece> pieces_of(const Interval& domain, const std::vector<Rational>& cuts) {
    std::vector<Piece> out;
    if (domain.is_point()) {
        out.push_back({domain.lo, domain.hi, *domain.lo});
        return out;
    }
    std::optional<Rational> left = domain.lo;
    for (const Rational& c : cuts) {
        out.push_back({left, c, sample_between(left, c)});
        left = c;
    }
    out.push_back({left, domain.hi, sample_between(left, domain.hi)});
    return out;
}

bool strictly_inside(const Rational& t, const std::optional<Rational>& left,
                     const std::optional<Rational>& right) {
    return (!left || *left < t) && (!right || t < *right);
}

void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Rational> merged_cuts(std::span<const PLFunction> fs, const Interval& domain) {
    std::vector<Rational> cuts;
    for (const PLFunction& f : fs) {
        for (const Rational& b : f.breakpoints()) {
            if (strictly_inside(b, domain.lo, domain.hi)) cuts.push_back(b);
        }
    }
    sort_unique(cuts);
    return cuts;
}

Interval common_domain(std::span<const PLFunction> fs) {
    if (fs.empty()) throw InputError("empty list of piecewise-linear functions");
    Interval d = fs.front().domain();
    for (const PLFunction& f : fs.subspan(1)) d = intersect(d, f.domain());
    if (d.empty()) throw InputError("piecewise-linear functions have disjoint domains");
    return d;
}

enum class Extremum { max, min };

PLFunction envelope(std::span<const PLFunction> fs, Extremum kind) {
    const Interval domain = common_domain(fs);
    std::vector<Rational> cuts = merged_cuts(fs, domain);

    // Within one piece every input is affine; add all pairwise crossings.
    std::vector<Rational> refined = cuts;
    for (const Piece& piece : pieces_of(domain, cuts)) {
        std::vector<std::pair<Rational, Rational>> lines;  // slope, value at sample
        for (const PLFunction& f : fs) {
            lines.emplace_back(f.right_slope_at(piece.sample), f.eval(piece.sample));
        }
        for (std::size_t a = 0; a < lines.size(); ++a) {
            for (std::size_t b = a + 1; b < lines.size(); ++b) {
                if (lines[a].first == lines[b].first) continue;
                Rational t = piece.sample +
                             (lines[b].second - lines[a].second) / (lines[a].first - lines[b].first);
                if (strictly_inside(t, piece.left, piece.right)) refined.push_back(t);
            }
        }
    }
    sort_unique(refined);

    std::vector<Rational> slopes;
    Rational anchor_s;
    Rational anchor_v;
    bool first = true;
    for (const Piece& piece : pieces_of(domain, refined)) {
        std::size_t best = 0;
        Rational best_v = fs[0].eval(piece.sample);
        for (std::size_t k = 1; k < fs.size(); ++k) {
            Rational v = fs[k].eval(piece.sample);
            if (kind == Extremum::max ? v > best_v : v < best_v) {
                best = k;
                best_v = v;
            }
        }
        slopes.push_back(fs[best].right_slope_at(piece.sample));
        if (first) {
            anchor_s = piece.sample;
            anchor_v = best_v;
            first = false;
        }
    }
    return PLFunction::from_pieces(domain, std::move(refined), std::move(slopes), anchor_s, anchor_v);
}

}  // namespace

PLFunction PLFunction::affine(const Rational& slope, const Rational& intercept, const Interval& domain) {
    if (domain.empty()) throw InputError("empty domain");
    Rational anchor = domain.contains(Rational(0)) ? Rational(0) : (domain.lo ? *domain.lo : *domain.hi);
    return from_pieces(domain, {}, {slope}, anchor, intercept + slope * anchor);
}

PLFunction PLFunction::constant(const Rational& c, const Interval& domain) {
    return affine(0, c, domain);
}

PLFunction PLFunction::from_pieces(const Interval& domain, std::vector<Rational> cuts,
                                   std::vector<Rational> slopes, const Rational& anchor_s,
                                   const Rational& anchor_value) {
    if (domain.empty()) throw InputError("empty domain");
    if (slopes.size() != cuts.size() + 1) throw std::logic_error("from_pieces: slope count mismatch");
    if (!domain.contains(anchor_s)) throw std::logic_error("from_pieces: anchor outside domain");

    PLFunction f;
    f.domain_ = domain;
    f.slopes_.clear();
    if (domain.is_point()) {
        f.slopes_ = {Rational(0)};
        f.ref_value_ = anchor_value;
        return f;
    }

    // Values at every cut, propagated outward from the anchor's piece.
    const std::size_t k = cuts.size();
    std::size_t j0 = static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), anchor_s) - cuts.begin());
    std::vector<Rational> values(k);
    if (j0 < k) {
        values[j0] = anchor_value + slopes[j0] * (cuts[j0] - anchor_s);
        for (std::size_t j = j0 + 1; j < k; ++j) values[j] = values[j - 1] + slopes[j] * (cuts[j] - cuts[j - 1]);
    }
    if (j0 > 0) {
        values[j0 - 1] = anchor_value - slopes[j0] * (anchor_s - cuts[j0 - 1]);
        for (std::size_t j = j0 - 1; j-- > 0;) values[j] = values[j + 1] - slopes[j + 1] * (cuts[j + 1] - cuts[j]);
    }

    f.slopes_.push_back(slopes[0]);
    for (std::size_t j = 0; j < k; ++j) {
        if (slopes[j + 1] == f.slopes_.back()) continue;
        f.breaks_.push_back(cuts[j]);
        f.values_.push_back(values[j]);
        f.slopes_.push_back(slopes[j + 1]);
    }
    if (f.breaks_.empty()) {
        Rational ref = f.reference_point();
        f.ref_value_ = anchor_value + f.slopes_[0] * (ref - anchor_s);
    }
    return f;
}

Rational PLFunction::reference_point() const {
    if (!breaks_.empty()) return breaks_.front();
    if (domain_.contains(Rational(0))) return 0;
    return domain_.lo && *domain_.lo > 0 ? *domain_.lo : *domain_.hi;
}

std::size_t PLFunction::segment_index(const Rational& s) const {
    return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), s) - breaks_.begin());
}

Rational PLFunction::eval(const Rational& s) const {
    if (!domain_.contains(s)) {
        throw WindowError("s = " + to_string(s) + " outside domain " + domain_.str());
    }
    if (breaks_.empty()) return ref_value_ + slopes_[0] * (s - reference_point());
    std::size_t j = segment_index(s);
    if (j == 0) return values_[0] - slopes_[0] * (breaks_[0] - s);
    return values_[j - 1] + slopes_[j] * (s - breaks_[j - 1]);
}

Rational PLFunction::right_slope_at(const Rational& s) const {
    return slopes_[segment_index(s)];
}

Rational PLFunction::eventual_slope() const {
    if (domain_.bounded_above()) {
        throw InputError("eventual slope undefined: domain " + domain_.str() + " is bounded above");
    }
    return slopes_.back();
}

std::optional<Rational> PLFunction::constant_on(const Interval& window) const {
    if (window.empty() || !domain_.contains(window)) {
        throw WindowError("window " + window.str() + " not inside domain " + domain_.str());
    }
    Rational probe = window.lo ? *window.lo : (window.hi ? *window.hi : Rational(0));
    if (window.is_point()) return eval(probe);
    std::optional<Rational> left = domain_.lo;
    for (std::size_t j = 0; j < slopes_.size(); ++j) {
        std::optional<Rational> right = j < breaks_.size() ? std::optional<Rational>(breaks_[j]) : domain_.hi;
        bool meets = (!right || !window.lo || *window.lo < *right) && (!left || !window.hi || *left < *window.hi);
        if (meets && slopes_[j] != 0) return std::nullopt;
        left = right;
    }
    return eval(probe);
}

ExtLog PLFunction::infimum_on(const Interval& window) const {
    if (window.empty() || !domain_.contains(window)) {
        throw WindowError("window " + window.str() + " not inside domain " + domain_.str());
    }
    Interval w = window;
    PLFunction r = restrict_to(w);
    if (!w.hi && r.slopes_.back() < 0) return ExtLog::neg_inf();
    if (!w.lo && r.slopes_.front() > 0) return ExtLog::neg_inf();
    std::vector<Rational> candidates = r.breaks_;
    if (w.lo) candidates.push_back(*w.lo);
    if (w.hi) candidates.push_back(*w.hi);
    if (candidates.empty()) candidates.push_back(r.reference_point());
    Rational best = r.eval(candidates.front());
    for (const Rational& c : candidates) best = std::min(best, r.eval(c));
    return ExtLog(best);
}

bool PLFunction::is_convex() const {
    return std::is_sorted(slopes_.begin(), slopes_.end());
}

PLFunction PLFunction::restrict_to(const Interval& window) const {
    Interval d = intersect(domain_, window);
    if (d.empty()) throw WindowError("restriction to " + window.str() + " misses domain " + domain_.str());
    Rational anchor = d.contains(reference_point()) ? reference_point() : (d.lo ? *d.lo : *d.hi);
    std::vector<Rational> cuts;
    std::vector<Rational> slopes;
    for (std::size_t j = 0; j < breaks_.size(); ++j) {
        if (strictly_inside(breaks_[j], d.lo, d.hi)) cuts.push_back(breaks_[j]);
    }
    for (const Piece& piece : pieces_of(d, cuts)) slopes.push_back(right_slope_at(piece.sample));
    return from_pieces(d, std::move(cuts), std::move(slopes), anchor, eval(anchor));
}

PLFunction PLFunction::scaled(const Rational& k) const {
    PLFunction f = *this;
    if (k == 0) return constant(0, domain_);
    for (Rational& s : f.slopes_) s *= k;
    for (Rational& v : f.values_) v *= k;
    f.ref_value_ *= k;
    return f;
}

PLFunction PLFunction::shifted(const Rational& c) const {
    PLFunction f = *this;
    for (Rational& v : f.values_) v += c;
    f.ref_value_ += c;
    return f;
}

PLFunction operator+(const PLFunction& f, const PLFunction& g) {
    const PLFunction both[] = {f, g};
    const Interval domain = common_domain(both);
    std::vector<Rational> cuts = merged_cuts(both, domain);
    std::vector<Rational> slopes;
    std::vector<Piece> pieces = pieces_of(domain, cuts);
    for (const Piece& piece : pieces) {
        slopes.push_back(f.right_slope_at(piece.sample) + g.right_slope_at(piece.sample));
    }
    const Rational& a = pieces.front().sample;
    return PLFunction::from_pieces(domain, std::move(cuts), std::move(slopes), a, f.eval(a) + g.eval(a));
}

PLFunction operator-(const PLFunction& f, const PLFunction& g) {
    return f + g.scaled(-1);
}

bool operator==(const PLFunction& f, const PLFunction& g) {
    if (!(f.domain_ == g.domain_) || f.breaks_ != g.breaks_ || f.slopes_ != g.slopes_) return false;
    return f.eval(f.reference_point()) == g.eval(g.reference_point());
}

std::string PLFunction::str() const {
    std::ostringstream os;
    auto list = [&os](const std::vector<Rational>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
        os << ']';
    };
    os << "domain " << domain_.str() << "; breaks ";
    list(breaks_);
    os << "; slopes ";
    list(slopes_);
    Rational ref = reference_point();
    os << "; ref " << to_string(ref) << " -> " << to_string(eval(ref));
    return os.str();
}

PLFunction plf_add(const PLFunction& f, const PLFunction& g) { return f + g; }

PLFunction plf_max(std::span<const PLFunction> fs) { return envelope(fs, Extremum::max); }

PLFunction plf_max(std::initializer_list<PLFunction> fs) {
    return envelope(std::span<const PLFunction>(fs.begin(), fs.size()), Extremum::max);
}

PLFunction plf_min(std::span<const PLFunction> fs) { return envelope(fs, Extremum::min); }

Rational plf_eventual_slope(const PLFunction& f) { return f.eventual_slope(); }

}  // namespace pnev
