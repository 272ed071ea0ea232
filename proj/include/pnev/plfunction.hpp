#pragma once

#include "pnev/rational.hpp"
#include "pnev/valuation.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pnev {

// Closed interval of Q; an absent endpoint is infinite.
struct Interval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    static Interval line() { return {}; }
    static Interval at_least(Rational a) { return {std::move(a), std::nullopt}; }
    static Interval at_most(Rational b) { return {std::nullopt, std::move(b)}; }
    static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b)}; }

    bool empty() const { return lo && hi && *lo > *hi; }
    bool is_point() const { return lo && hi && *lo == *hi; }
    bool bounded_above() const { return hi.has_value(); }
    bool contains(const Rational& s) const { return (!lo || *lo <= s) && (!hi || s <= *hi); }
    bool contains(const Interval& other) const;

    friend bool operator==(const Interval&, const Interval&) = default;

    std::string str() const;
};

Interval intersect(const Interval& a, const Interval& b);

// Exact continuous piecewise-linear function of s = log_p r with rational
// breakpoints and slopes. Values are held in canonical form: adjacent
// segments always have distinct slopes, so structural equality is functional
// equality.
class PLFunction {
public:
    // The zero function on the whole line.
    PLFunction() : slopes_{Rational(0)} {}

    static PLFunction affine(const Rational& slope, const Rational& intercept,
                             const Interval& domain = Interval::line());
    static PLFunction constant(const Rational& c, const Interval& domain = Interval::line());

    // Builds from cut points strictly inside `domain` (sorted, distinct),
    // one slope per piece, and the value at one point of the domain.
    static PLFunction from_pieces(const Interval& domain, std::vector<Rational> cuts,
                                  std::vector<Rational> slopes, const Rational& anchor_s,
                                  const Rational& anchor_value);

    const Interval& domain() const { return domain_; }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    // One per segment; slopes().size() == breakpoints().size() + 1.
    const std::vector<Rational>& slopes() const { return slopes_; }

    // Reference point of the canonical dump: the first breakpoint if any,
    // otherwise 0 clamped into the domain.
    Rational reference_point() const;

    Rational operator()(const Rational& s) const { return eval(s); }
    Rational eval(const Rational& s) const;

    // Slope of the segment [b_j, b_{j+1}) containing s (right derivative).
    Rational right_slope_at(const Rational& s) const;
    Rational final_slope() const { return slopes_.back(); }
    Rational initial_slope() const { return slopes_.front(); }
    // Slope as s -> +inf. Throws InputError if the domain is bounded above.
    Rational eventual_slope() const;

    // Constant value on `window` if f is constant there, nullopt otherwise.
    // Throws WindowError if `window` is not inside the domain.
    std::optional<Rational> constant_on(const Interval& window) const;
    bool is_constant() const { return slopes_.size() == 1 && slopes_[0] == 0; }

    // Infimum over `window`; -inf when unbounded below there.
    ExtLog infimum_on(const Interval& window) const;

    bool is_convex() const;

    PLFunction restrict_to(const Interval& window) const;
    PLFunction scaled(const Rational& k) const;
    PLFunction shifted(const Rational& c) const;

    friend PLFunction operator+(const PLFunction& f, const PLFunction& g);
    friend PLFunction operator-(const PLFunction& f, const PLFunction& g);
    friend PLFunction operator-(const PLFunction& f) { return f.scaled(-1); }
    friend bool operator==(const PLFunction& f, const PLFunction& g);

    // Canonical exact dump, e.g.
    //   domain (-inf, +inf); breaks [0, 1]; slopes [0, 1, 2]; ref 0 -> 0
    std::string str() const;

private:
    std::size_t segment_index(const Rational& s) const;

    Interval domain_;
    std::vector<Rational> breaks_;
    std::vector<Rational> slopes_;
    std::vector<Rational> values_;  // at breaks_
    Rational ref_value_;            // used when breaks_ is empty
};

// Pointwise sum on the intersection of domains. Throws InputError if empty.
PLFunction plf_add(const PLFunction& f, const PLFunction& g);
// Pointwise maximum on the common domain. Throws InputError on an empty
// list or an empty common domain.
PLFunction plf_max(std::span<const PLFunction> fs);
PLFunction plf_max(std::initializer_list<PLFunction> fs);
PLFunction plf_min(std::span<const PLFunction> fs);
Rational plf_eventual_slope(const PLFunction& f);

}  // namespace pnev
