#include "pnev/valuation.hpp"

#include "pnev/errors.hpp"

namespace pnev {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long k = 2; k * k <= n; ++k) {
        if (n % k == 0) return false;
    }
    return true;
}

PrimeConfig::PrimeConfig(long p) : p_(p) {
    if (!is_prime(p)) throw InputError("p must be prime (got " + std::to_string(p) + ")");
}

long valuation(const Integer& x, long p) {
    Integer r = abs(x);
    long v = 0;
    const Integer pp = p;
    while (mpz_divisible_p(r.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

long valuation(const Rational& x, long p) {
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

ExtLog log_abs(const Rational& x, const PrimeConfig& cfg) {
    if (x == 0) return ExtLog::neg_inf();
    return ExtLog(Rational(-valuation(x, cfg.p())));
}

}  // namespace pnev
