#include "pnev/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace pnev {

std::size_t rank(const RationalMatrix& rows) {
    if (rows.empty()) return 0;
    const std::size_t m = rows.size();
    const std::size_t n = rows.front().size();
    std::vector<std::vector<Integer>> a(m, std::vector<Integer>(n));
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("rank: ragged matrix");
        Integer den = common_denominator(rows[i]);
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = rows[i][j] * den;
            a[i][j] = scaled.get_num();
        }
    }

    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t pivot = r;
        while (pivot < m && a[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(a[pivot], a[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j) {
                Integer t = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(t);
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        ++r;
    }
    return r;
}

namespace {

void trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo b (b nonzero).
std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& b) {
    trim(a);
    while (a.size() >= b.size()) {
        Rational q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        trim(a);
    }
    return a;
}

}  // namespace

std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::vector<Rational> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (Rational& c : a) c /= lead;
    }
    return a;
}

std::vector<Rational> poly_divexact(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> rem = a;
    trim(rem);
    std::vector<Rational> div = b;
    trim(div);
    if (div.empty()) throw std::logic_error("division by the zero polynomial");
    if (rem.size() < div.size()) {
        if (rem.empty()) return {};
        throw std::logic_error("inexact polynomial division");
    }
    std::vector<Rational> q(rem.size() - div.size() + 1);
    while (rem.size() >= div.size()) {
        Rational c = rem.back() / div.back();
        std::size_t shift = rem.size() - div.size();
        q[shift] = c;
        for (std::size_t i = 0; i < div.size(); ++i) rem[shift + i] -= c * div[i];
        trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("inexact polynomial division");
    return q;
}

}  // namespace pnev
