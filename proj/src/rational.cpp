#include "lgcalc/rational.hpp"

#include <cctype>
#include <ostream>

namespace lg {

Rational Rational::from_string(const std::string& s) {
    // mpq_class's string constructor accepts whitespace and base prefixes we
    // don't want; validate the shape ourselves: -?digits(/digits)?
    auto fail = [&]() -> Rational { throw Error("rational: cannot parse \"" + s + "\""); };
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) return fail();
    if (i < s.size()) {
        if (s[i] != '/') return fail();
        ++i;
        std::size_t den_digits = 0;
        std::size_t den_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++den_digits;
        if (den_digits == 0 || i != s.size()) return fail();
        if (s.substr(den_start) == std::string(den_digits, '0')) return fail();  // "/0"
    }
    mpq_class q(s);
    q.canonicalize();
    return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_.get_str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace lg
