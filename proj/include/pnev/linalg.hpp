#pragma once

#include "pnev/rational.hpp"

#include <cstddef>
#include <vector>

namespace pnev {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Exact rank. Rows are cleared of denominators and reduced by Bareiss'
// fraction-free elimination over Z, so every intermediate entry is an
// integer minor of the input.
std::size_t rank(const RationalMatrix& rows);

// Univariate polynomials over Q as coefficient vectors, lowest degree first,
// without trailing zeros.
std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b);
// Exact division; throws std::logic_error if b does not divide a.
std::vector<Rational> poly_divexact(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace pnev
