#include "pnev/polynomial.hpp"

#include "pnev/errors.hpp"

#include <cctype>
#include <sstream>

namespace pnev {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    return monomial(nvars, Exponent(nvars, 0), c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(nvars, std::move(e), 1);
}

Polynomial Polynomial::monomial(std::size_t nvars, Exponent exps, const Rational& coef) {
    if (exps.size() != nvars) throw InputError("exponent vector has wrong length");
    Polynomial p(nvars);
    p.add_term(exps, coef);
    return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned t = 0;
        for (unsigned k : e) t += k;
        d = std::max(d, t);
    }
    return d;
}

bool Polynomial::is_homogeneous() const {
    bool first = true;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned t = 0;
        for (unsigned k : e) t += k;
        if (first) {
            d = t;
            first = false;
        } else if (t != d) {
            return false;
        }
    }
    return true;
}

Rational Polynomial::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::derivative(std::size_t i) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponent d = e;
        --d[i];
        out.add_term(d, c * e[i]);
    }
    return out;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw InputError("point has wrong number of coordinates");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial out = constant(nvars_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1u) out = out * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out(nvars_);
    for (const auto& [e, v] : terms_) out.add_term(e, v * c);
    return out;
}

Polynomial Polynomial::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != nvars_) throw InputError("permutation has wrong length");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponent f(nvars_, 0);
        for (std::size_t i = 0; i < nvars_; ++i) f.at(perm[i]) = e[i];
        out.add_term(f, c);
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw InputError("polynomials in different numbers of variables");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw InputError("polynomials in different numbers of variables");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw InputError("polynomials in different numbers of variables");
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool constant_term = true;
        for (unsigned k : e) constant_term = constant_term && k == 0;
        bool wrote = false;
        if (mag != 1 || constant_term) {
            os << to_string(mag);
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << '*';
            os << 'x' << i;
            if (e[i] > 1) os << '^' << e[i];
            wrote = true;
        }
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError(what + " at position " + std::to_string(pos_) + " in polynomial \"" +
                         std::string(text_) + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    Polynomial unary() {
        if (accept('-')) return unary().scaled(-1);
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            skip_ws();
            std::string e = digits();
            if (e.empty() || e.size() > 4) fail("expected a small nonnegative integer exponent");
            return base.pow(static_cast<unsigned>(std::stoul(e)));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'x') {
            ++pos_;
            std::string idx = digits();
            if (idx.empty()) fail("expected variable index after 'x'");
            std::size_t i = std::stoul(idx);
            if (i >= nvars_) fail("variable x" + idx + " out of range for " + std::to_string(nvars_) + " variables");
            return Polynomial::variable(nvars_, i);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                std::string den = digits();
                if (den.empty()) fail("expected denominator");
                num += "/" + den;
            }
            if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
                fail("floating-point literals are not accepted");
            }
            return Polynomial::constant(nvars_, parse_rational(num));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t nvars) {
    return PolyParser(text, nvars).run();
}

}  // namespace pnev
