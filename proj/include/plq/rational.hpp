#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "plq/errors.hpp"

namespace plq {

/// Exact rational scalar used throughout the library.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw InvalidParameter("rational with zero denominator");
    return Rational(num, den);
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parse "a/b" or "a" with optional sign and surrounding whitespace.
inline Rational parse_rational(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos)
        throw ParseError("empty rational literal");
    std::string body = text.substr(begin, end - begin + 1);

    const std::string digits_or_sign = "+-0123456789/";
    for (char c : body)
        if (digits_or_sign.find(c) == std::string::npos)
            throw ParseError("bad character '" + std::string(1, c) + "' in rational literal '" + body + "'");

    std::size_t slash = body.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(body));
        Integer num(body.substr(0, slash));
        Integer den(body.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + body + "'");
        return Rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal '" + body + "'");
    }
}

/// Canonical text form: "a" for integers, "a/b" otherwise.
inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

} // namespace plq
