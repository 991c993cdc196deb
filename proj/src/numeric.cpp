#include "regtri/numeric.hpp"

#include <cctype>
#include <sstream>

namespace regtri {

Int factorial(std::uint64_t k) {
    Int r = 1;
    for (std::uint64_t i = 2; i <= k; ++i) r *= i;
    return r;
}

Int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

Int double_factorial_odd(std::int64_t k) {
    if (k < -1 || k % 2 == 0)
        throw Error("double_factorial_odd: argument must be odd and >= -1");
    Int r = 1;
    for (std::int64_t i = k; i >= 3; i -= 2) r *= i;
    return r;
}

Int pow_int(const Int& base, std::uint64_t e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Int ceil_rational(const Rational& q) {
    Int num = numerator(q), den = denominator(q);
    Int quot = num / den, rem = num % den;
    if (rem != 0 && num > 0) ++quot;
    return quot;
}

Int floor_rational(const Rational& q) {
    Int num = numerator(q), den = denominator(q);
    Int quot = num / den, rem = num % den;
    if (rem != 0 && num < 0) --quot;
    return quot;
}

BigFloat to_bigfloat(const Int& v) { return BigFloat(v); }

BigFloat to_bigfloat(const Rational& q) {
    return BigFloat(numerator(q)) / BigFloat(denominator(q));
}

BigFloat log_int(const Int& v) {
    if (v <= 0) throw Error("log_int: argument must be positive");
    return log(BigFloat(v));
}

BigFloat log_rational(const Rational& q) {
    if (q <= 0) throw Error("log_rational: argument must be positive");
    return log_int(numerator(q)) - log_int(denominator(q));
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

namespace {

Rational parse_decimal(std::string_view s) {
    // [sign] digits [. digits] [e|E [sign] digits]
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    Int mantissa = 0;
    std::int64_t frac_digits = 0;
    bool any = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '.') {
            if (seen_dot) throw ParseError("bad rational: " + std::string(s));
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            mantissa = mantissa * 10 + (ch - '0');
            if (seen_dot) ++frac_digits;
            any = true;
        } else {
            break;
        }
    }
    if (!any) throw ParseError("bad rational: " + std::string(s));
    std::int64_t exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        if (i >= s.size()) throw ParseError("bad rational: " + std::string(s));
        std::int64_t e = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("bad rational: " + std::string(s));
            e = e * 10 + (s[i] - '0');
            if (e > 100000) throw ParseError("exponent out of range: " + std::string(s));
        }
        exp10 = eneg ? -e : e;
    } else if (i != s.size()) {
        throw ParseError("bad rational: " + std::string(s));
    }
    std::int64_t shift = exp10 - frac_digits;
    Rational r(mantissa);
    if (shift > 0)
        r *= Rational(pow_int(10, static_cast<std::uint64_t>(shift)));
    else if (shift < 0)
        r /= Rational(pow_int(10, static_cast<std::uint64_t>(-shift)));
    return neg ? -r : r;
}

} // namespace

Rational parse_rational(std::string_view s) {
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        Rational num = parse_decimal(s.substr(0, slash));
        Rational den = parse_decimal(s.substr(slash + 1));
        if (denominator(num) != 1 || denominator(den) != 1)
            throw ParseError("p/q form needs integer parts: " + std::string(s));
        if (den == 0) throw ParseError("zero denominator: " + std::string(s));
        return num / den;
    }
    return parse_decimal(s);
}

std::string bigfloat_str(const BigFloat& v) {
    std::ostringstream os;
    os.precision(25);
    os << std::scientific << v;
    return os.str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace regtri
