#include "ksym/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ksym {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("cannot convert non-finite double to rational");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    BigInt num = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0)
        r *= rational_pow(Rational(2), exp);
    else if (exp < 0)
        r /= rational_pow(Rational(2), -exp);
    return r;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw FormatError("empty number");
    // Plain fraction "a/b".
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in rational literal");
        return num / den;
    }
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    BigInt intpart = 0, fracpart = 0;
    long fracdigits = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        intpart = intpart * 10 + (text[pos] - '0');
        ++pos;
        any = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            fracpart = fracpart * 10 + (text[pos] - '0');
            ++fracdigits;
            ++pos;
            any = true;
        }
    }
    long expo = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool eneg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            eneg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size()) throw FormatError("malformed exponent in '" + text + "'");
        long ev = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ev = ev * 10 + (text[pos] - '0');
            ++pos;
        }
        expo = eneg ? -ev : ev;
    }
    if (!any || pos != text.size()) throw FormatError("malformed number '" + text + "'");
    Rational r(intpart);
    if (fracdigits > 0) r += Rational(fracpart) / rational_pow(Rational(10), fracdigits);
    if (expo > 0)
        r *= rational_pow(Rational(10), expo);
    else if (expo < 0)
        r /= rational_pow(Rational(10), -expo);
    return neg ? -r : r;
}

Rational rational_pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0 && e < 0) throw DomainError("0 raised to a negative power");
    Rational base = e < 0 ? Rational(1) / r : r;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace ksym
