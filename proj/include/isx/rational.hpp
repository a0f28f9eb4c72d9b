#pragma once

// Exact rational scalar type and string conversions. All arithmetic in this
// library is exact; nothing here may ever touch floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace isx {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Canonical form: "p" for integers, "p/q" otherwise, q > 0, gcd(p,q) = 1.
inline std::string to_string(const Rational& r) {
    return r.str();
}

// Strict parser for the canonical form. Accepts an optional leading '-',
// decimal digits, and at most one '/'-separated positive denominator.
inline Rational parse_rational(const std::string& text) {
    const auto fail = [&](const char* why) {
        throw std::invalid_argument("bad rational '" + text + "': " + why);
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    const auto read_digits = [&]() -> Integer {
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected digits");
        Integer value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value *= 10;
            value += text[pos] - '0';
            ++pos;
        }
        return value;
    };
    Integer num = read_digits();
    Integer den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_digits();
        if (den == 0) fail("zero denominator");
    }
    if (pos != text.size()) fail("trailing characters");
    if (negative) num = -num;
    return Rational(num, den);
}

}  // namespace isx
