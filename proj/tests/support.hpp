#pragma once

// Shared helpers for the unit and acceptance suites: literals, seeded random
// inputs and brute-force oracles that do not go through the library's hull code.

#include "pnev/nevanlinna.hpp"
#include "pnev/plfunction.hpp"
#include "pnev/polynomial.hpp"
#include "pnev/rational.hpp"
#include "pnev/series.hpp"
#include "pnev/valuation.hpp"

#include <random>
#include <string>
#include <vector>

namespace pnev::testing {

inline Rational q(const std::string& text) { return parse_rational(text); }

inline std::vector<Rational> qs(std::initializer_list<const char*> items) {
    std::vector<Rational> out;
    for (const char* s : items) out.push_back(parse_rational(s));
    return out;
}

inline Polynomial poly(const std::string& text, std::size_t nvars) { return Polynomial::parse(text, nvars); }

inline EntireSeries series(std::initializer_list<const char*> coeffs) { return EntireSeries::polynomial(qs(coeffs)); }

// v_p by repeated division, independent of the GMP-based implementation.
inline long naive_valuation(Rational x, long p) {
    long v = 0;
    Integer num = x.get_num(), den = x.get_den();
    if (num < 0) num = -num;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    return v;
}

// max_i (log|a_i| + i s) straight from the definition.
inline Rational naive_gauss(const std::vector<Rational>& a, const Rational& s, long p) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rational v = Rational(-naive_valuation(a[i], p)) + s * static_cast<long>(i);
        if (!best || v > *best) best = v;
    }
    return *best;
}

// Largest index attaining the Gauss maximum at s.
inline std::size_t naive_argmax(const std::vector<Rational>& a, const Rational& s, long p) {
    Rational g = naive_gauss(a, s, p);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && Rational(-naive_valuation(a[i], p)) + s * static_cast<long>(i) == g) idx = i;
    }
    return idx;
}

// Coefficients of prod_j (z - c_j), lowest degree first.
inline std::vector<Rational> poly_from_roots(const std::vector<Rational>& roots) {
    std::vector<Rational> c{Rational(1)};
    for (const Rational& r : roots) {
        std::vector<Rational> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

// log_p|c| for c != 0; roots at 0 count as -infinity (always inside).
inline std::size_t naive_root_count(const std::vector<Rational>& roots, const Rational& s, long p) {
    std::size_t n = 0;
    for (const Rational& r : roots) {
        if (r == 0 || Rational(-naive_valuation(r, p)) <= s) ++n;
    }
    return n;
}

// Grid over [lo, hi] with step 1/den, both ends included.
inline std::vector<Rational> grid(long lo, long hi, long den) {
    std::vector<Rational> out;
    for (long k = lo * den; k <= hi * den; ++k) out.push_back(make_rational(k, den));
    return out;
}

class Random {
public:
    explicit Random(unsigned seed) : gen_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
    bool coin() { return integer(0, 1) == 1; }
    // Numerator and denominator in [-bound, bound], denominator nonzero.
    Rational fraction(long bound) {
        long num = integer(-bound, bound);
        long den = 0;
        while (den == 0) den = integer(-bound, bound);
        return make_rational(num, den);
    }
    Rational nonzero_fraction(long bound) {
        Rational r = 0;
        while (r == 0) r = fraction(bound);
        return r;
    }
    long prime(std::initializer_list<long> choices) {
        return *(choices.begin() + integer(0, static_cast<long>(choices.size()) - 1));
    }
    // Random homogeneous polynomial of degree d in nvars variables.
    Polynomial homogeneous(std::size_t nvars, unsigned d, long bound, std::size_t max_terms = 4);
    std::mt19937& engine() { return gen_; }

private:
    std::mt19937 gen_;
};

inline Polynomial Random::homogeneous(std::size_t nvars, unsigned d, long bound, std::size_t max_terms) {
    Polynomial out(nvars);
    while (out.is_zero()) {
        std::size_t terms = static_cast<std::size_t>(integer(1, static_cast<long>(max_terms)));
        for (std::size_t t = 0; t < terms; ++t) {
            Exponent e(nvars, 0);
            for (unsigned k = 0; k < d; ++k) ++e[static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1))];
            out.add_term(e, fraction(bound));
        }
    }
    return out;
}

}  // namespace pnev::testing
