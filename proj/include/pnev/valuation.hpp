#pragma once

#include "pnev/rational.hpp"

#include <compare>
#include <optional>
#include <string>

namespace pnev {

// The residue characteristic of the p-adic absolute value on Q. All logs in
// this library are taken base p.
class PrimeConfig {
public:
    // Throws InputError unless p is a prime >= 2.
    explicit PrimeConfig(long p);

    long p() const { return p_; }

private:
    long p_;
};

bool is_prime(long n);

// log_p |x|_p as an element of Q together with a bottom element -inf (x = 0).
class ExtLog {
public:
    static ExtLog neg_inf() { return ExtLog(); }
    ExtLog(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit lift from Q

    bool is_neg_inf() const { return !value_.has_value(); }
    // Precondition: !is_neg_inf().
    const Rational& value() const { return *value_; }

    friend ExtLog operator+(const ExtLog& a, const ExtLog& b) {
        if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
        return ExtLog(*a.value_ + *b.value_);
    }
    friend bool operator==(const ExtLog& a, const ExtLog& b) {
        if (a.is_neg_inf() || b.is_neg_inf()) return a.is_neg_inf() == b.is_neg_inf();
        return *a.value_ == *b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtLog& a, const ExtLog& b) {
        if (a.is_neg_inf() || b.is_neg_inf()) {
            return static_cast<int>(!a.is_neg_inf()) <=> static_cast<int>(!b.is_neg_inf());
        }
        int c = cmp(*a.value_, *b.value_);
        return c <=> 0;
    }

    std::string str() const { return is_neg_inf() ? "-inf" : to_string(*value_); }

private:
    ExtLog() = default;
    std::optional<Rational> value_;
};

inline ExtLog max(const ExtLog& a, const ExtLog& b) { return a < b ? b : a; }

// v_p of a nonzero integer or rational. Precondition: x != 0.
long valuation(const Integer& x, long p);
long valuation(const Rational& x, long p);

// log_p |x|_p = -v_p(x); -inf for x = 0.
ExtLog log_abs(const Rational& x, const PrimeConfig& cfg);

}  // namespace pnev
