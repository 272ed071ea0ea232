#pragma once

#include "pnev/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pnev {

using Exponent = std::vector<unsigned>;

// Sparse multivariate polynomial over Q in variables x0 .. x{n-1}. Terms with
// zero coefficient are never stored.
class Polynomial {
public:
    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial monomial(std::size_t nvars, Exponent exps, const Rational& coef);

    // Accepts sums/products/powers of exact fractions and variables x0..x{n-1},
    // with parentheses, e.g. "x1^2 + x0*x2" or "x1*(x1 - 4*x0)". Throws
    // InputError naming the character position of the first problem.
    static Polynomial parse(std::string_view text, std::size_t nvars);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Largest total degree of a term; 0 for the zero polynomial.
    unsigned total_degree() const;
    bool is_homogeneous() const;
    Rational coefficient(const Exponent& e) const;

    Polynomial derivative(std::size_t i) const;
    Rational eval(std::span<const Rational> point) const;
    Polynomial pow(unsigned k) const;
    Polynomial scaled(const Rational& c) const;
    // Variable substitution x_i -> x_{perm[i]}.
    Polynomial permuted(std::span<const std::size_t> perm) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    void add_term(const Exponent& e, const Rational& c);

    // Canonical text form, terms in descending lexicographic exponent order:
    // "x0*x2 + x1^2", "3/4*x0 - x1", "0".
    std::string str() const;

private:
    std::size_t nvars_;
    std::map<Exponent, Rational> terms_;
};

}  // namespace pnev
