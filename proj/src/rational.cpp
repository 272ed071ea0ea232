#include "pnev/rational.hpp"

#include "pnev/errors.hpp"

#include <cctype>

namespace pnev {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view num = s;
    std::string_view den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        throw InputError("not an exact fraction: \"" + std::string(text) + "\"");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    Rational q(negative ? Integer(-n) : n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_str(10);
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

}  // namespace pnev
