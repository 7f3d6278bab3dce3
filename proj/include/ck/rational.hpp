#pragma once

// Exact integer and rational scalars shared by every module.

#include "ck/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ck {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// "n" or "n/d" in lowest terms, sign on the numerator.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

/// Parses "n", "-n", "n/d". Throws InvalidInput on malformed text or d == 0.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s) {
        s = trim(s);
        if (s.empty()) throw InvalidInput("empty integer in rational literal");
        std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
        if (start == s.size()) throw InvalidInput("sign without digits");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw InvalidInput("bad digit in rational literal: " + std::string(s));
        std::string digits(s.substr(s.front() == '+' ? 1 : 0));
        return BigInt(digits);
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in rational literal");
    return Rational(num, den);
}

/// Exponent of the prime p in the nonzero integer n.
inline int valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    if (n < 0) n = -n;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline int valuation(const Rational& q, const BigInt& p) {
    return valuation(numerator_of(q), p) - valuation(denominator_of(q), p);
}

inline BigInt ipow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Rational rpow(const Rational& base, int exp) {
    Rational r = 1;
    Rational b = exp >= 0 ? base : Rational(1) / base;
    unsigned e = exp >= 0 ? static_cast<unsigned>(exp) : static_cast<unsigned>(-exp);
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

/// Non-negative residue of n modulo m (m > 0).
inline BigInt mod_floor(const BigInt& n, const BigInt& m) {
    BigInt r = n % m;
    if (r < 0) r += m;
    return r;
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline BigInt inverse_mod(const BigInt& a, const BigInt& m) {
    BigInt old_r = mod_floor(a, m), cur_r = m, old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        BigInt q = old_r / cur_r;
        BigInt tmp = old_r - q * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
    }
    if (old_r != 1) throw std::domain_error("element is not invertible modulo " + m.str());
    return mod_floor(old_s, m);
}

/// Image of q in Z/m when the denominator is invertible modulo m.
inline BigInt rational_mod(const Rational& q, const BigInt& m) {
    return mod_floor(numerator_of(q) * inverse_mod(denominator_of(q), m), m);
}

}  // namespace ck
