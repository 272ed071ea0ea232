#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pnev {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a" or "a/b" (optional sign, decimal digits only). Rejects decimals,
// exponents and zero denominators with InputError.
Rational parse_rational(std::string_view text);

// Canonical exact form: "a" for integers, "a/b" otherwise (b > 0, gcd 1).
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q);

// Lowest common denominator of a non-empty range of rationals.
template <typename Range>
Integer common_denominator(const Range& values) {
    Integer l = 1;
    for (const Rational& v : values) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    return l;
}

}  // namespace pnev
