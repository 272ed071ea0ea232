#pragma once

#include "pnev/plfunction.hpp"
#include "pnev/rational.hpp"
#include "pnev/valuation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pnev {

// Asserts v_p(a_i) >= c*i + b for every index i beyond the truncation order.
struct TailCertificate {
    Rational c;
    Rational b;

    friend bool operator==(const TailCertificate&, const TailCertificate&) = default;
};

// An entire function sum a_i z^i on K, known through a_0..a_T. Without a tail
// certificate the series is exactly the polynomial a_0 + ... + a_T.
class EntireSeries {
public:
    EntireSeries() = default;  // the zero polynomial

    // Trailing zero coefficients are dropped.
    static EntireSeries polynomial(std::vector<Rational> coeffs);
    // `head` holds a_0..a_T exactly (T = head.size() - 1).
    static EntireSeries truncated(std::vector<Rational> head, TailCertificate tail);
    static EntireSeries monomial(std::size_t k, const Rational& c);
    static EntireSeries constant(const Rational& c) { return monomial(0, c); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const std::optional<TailCertificate>& tail() const { return tail_; }
    bool is_polynomial() const { return !tail_.has_value(); }

    // Index of the last known coefficient. For polynomials this is the degree
    // (0 for the zero polynomial).
    std::size_t truncation_order() const;
    // Every known coefficient vanishes. For polynomials: identically zero.
    bool head_is_zero() const;
    bool is_zero() const { return is_polynomial() && head_is_zero(); }
    // Polynomial of degree 0 (possibly zero).
    bool is_constant() const { return is_polynomial() && coeffs_.size() <= 1; }

    // Index of the first nonzero coefficient. Precondition: !head_is_zero().
    std::size_t order_at_zero() const;
    const Rational& lowest_coefficient() const { return coeffs_[order_at_zero()]; }
    // Rational coefficient a_i; indices past the polynomial degree are zero.
    // Throws WindowError past the truncation order of a certified series.
    Rational coefficient(std::size_t i) const;

    friend bool operator==(const EntireSeries&, const EntireSeries&) = default;

    // "1 + z + 3*z^2", with "+ O(z^5) {v_p(a_i) >= 5*i + 0}" appended when truncated.
    std::string str() const;

private:
    std::vector<Rational> coeffs_;
    std::optional<TailCertificate> tail_;
};

// Lower convex hull of {(i, v_p(a_i)) : a_i != 0} of the known coefficients.
struct NewtonPolygon {
    struct Vertex {
        std::size_t index;
        Rational valuation;
        friend bool operator==(const Vertex&, const Vertex&) = default;
    };
    std::vector<Vertex> vertices;
    // Segments with slope below this bound describe the true series (nullopt:
    // exact polynomial, every segment is certified).
    std::optional<Rational> certified_below;

    // Slope of segment k, between vertices k and k+1.
    Rational slope(std::size_t k) const;
    std::size_t segment_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    std::string str() const;
};

// Interval of s = log_p r on which the Gauss norm of the known head equals the
// Gauss norm of the full series: the whole line for polynomials, otherwise
// (-inf, w] with w <= c.
Interval validity_window(const EntireSeries& f, const PrimeConfig& cfg);

// s -> log_p |f|_{p^s} = max_i (log_p|a_i| + i*s) on the validity window.
PLFunction gauss_norm(const EntireSeries& f, const PrimeConfig& cfg);
NewtonPolygon newton_polygon(const EntireSeries& f, const PrimeConfig& cfg);
// Number of zeros, with multiplicity, in the closed disk |z| <= p^s.
std::size_t zero_count(const EntireSeries& f, const Rational& s, const PrimeConfig& cfg);
// N(s) = sum over zeros w with log_p|w| <= s of (s - log_p|w|); a zero at the
// origin contributes s.
PLFunction counting_plf(const EntireSeries& f, const PrimeConfig& cfg);

EntireSeries series_add(const EntireSeries& f, const EntireSeries& g, const PrimeConfig& cfg);
EntireSeries series_scale(const EntireSeries& f, const Rational& c, const PrimeConfig& cfg);
EntireSeries series_mul(const EntireSeries& f, const EntireSeries& g, const PrimeConfig& cfg);
EntireSeries series_pow(const EntireSeries& f, unsigned k, const PrimeConfig& cfg);

// Upper envelope of the lines s -> slope_i * s + intercept_i (max-plus sum
// of monomials). Precondition: non-empty.
PLFunction tropical_max_of_lines(std::vector<std::pair<Rational, Rational>> lines);

}  // namespace pnev
