#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "oneform/errors.hpp"

namespace oneform {

// Exact arithmetic substrate. cpp_rational keeps gcd(|num|, den) = 1 and
// den >= 1 canonically, with 0 represented as 0/1.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int int_abs(const Int& n) { return n < 0 ? Int(-n) : n; }
inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

// cpp_rational's two-argument constructor rejects negative denominators;
// this normalizes the sign first.
inline Rat make_rat(Int n, Int d) {
    if (d == 0) throw DivisionByZeroFunction("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(n, d);
}

inline Rat rat_pow(const Rat& q, long long e) {
    if (e == 0) return Rat(1);
    if (q == 0) {
        if (e < 0) throw PoleEvaluation("0 raised to a negative power");
        return Rat(0);
    }
    Rat base = e < 0 ? make_rat(den(q), num(q)) : q;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                 : static_cast<unsigned long long>(e);
    Rat acc(1);
    while (k) {
        if (k & 1ull) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline std::string to_string(const Rat& q) { return q.str(); }

// Accepts "p", "-p", "p/q" with optional sign on the numerator.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty rational literal");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    bool seen_digit = false, seen_slash = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (seen_slash || !seen_digit) throw InvalidInput("bad rational literal: " + s);
            seen_slash = true;
            seen_digit = false;
        } else if (s[i] >= '0' && s[i] <= '9') {
            seen_digit = true;
        } else {
            throw InvalidInput("bad rational literal: " + s);
        }
    }
    if (!seen_digit) throw InvalidInput("bad rational literal: " + s);
    Rat q(s);
    return q;
}

inline long long to_long(const Int& n) {
    return n.convert_to<long long>();
}

} // namespace oneform
