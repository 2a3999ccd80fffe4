#pragma once

// Exact arithmetic building blocks: arbitrary-precision integers and
// rationals, dyadic rounding, and exact decimal conversion for dyadic
// rationals (used by the JSON report formats).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace salemlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline int sign_of(const BigInt& x) { return x.sign(); }
inline int sign_of(const BigRat& x) { return x.sign(); }

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

inline BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

/// Smallest k with 2^k >= x (x >= 1).
inline unsigned ceil_log2(const BigInt& x) {
    if (x <= 1) return 0;
    const BigInt y = x - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(y)) + 1;
}

inline BigInt numerator_of(const BigRat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const BigRat& x) { return boost::multiprecision::denominator(x); }

/// True iff x has a power-of-two denominator in lowest terms.
inline bool is_dyadic(const BigRat& x) {
    BigInt d = denominator_of(x);
    if (d == 1) return true;
    const unsigned b = static_cast<unsigned>(boost::multiprecision::lsb(d));
    return (d >> b) == 1;
}

/// Largest multiple of 2^-bits that is <= x.
inline BigRat dyadic_floor(const BigRat& x, unsigned bits) {
    const BigInt scale = pow2(bits);
    BigInt n = numerator_of(x) * scale;
    BigInt d = denominator_of(x);
    BigInt q = n / d;
    if (q * d != n && x < 0) --q;  // cpp_int division truncates toward zero
    return BigRat(q, scale);
}

/// Smallest multiple of 2^-bits that is >= x.
inline BigRat dyadic_ceil(const BigRat& x, unsigned bits) {
    return -dyadic_floor(-x, bits);
}

/// Exact decimal representation of a dyadic rational. Throws for
/// non-dyadic input; a/2^k always has a finite decimal expansion.
inline std::string decimal_string(const BigRat& x) {
    if (!is_dyadic(x)) throw std::invalid_argument("decimal_string: value is not dyadic");
    BigInt num = numerator_of(x);
    BigInt den = denominator_of(x);
    unsigned k = den == 1 ? 0 : static_cast<unsigned>(boost::multiprecision::lsb(den));
    // a/2^k = a*5^k / 10^k
    BigInt scaled = num;
    for (unsigned i = 0; i < k; ++i) scaled *= 5;
    const bool neg = scaled < 0;
    std::string digits = big_abs(scaled).str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    std::string out;
    if (neg) out.push_back('-');
    out += digits.substr(0, digits.size() - k);
    if (k > 0) {
        std::string frac = digits.substr(digits.size() - k);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) {
            out.push_back('.');
            out += frac;
        }
    }
    return out;
}

/// Parse a plain decimal string ("-12.0625") into an exact rational.
inline BigRat rational_from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("rational_from_decimal: empty string");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    BigInt num = 0;
    unsigned frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("rational_from_decimal: two dots");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw std::invalid_argument("rational_from_decimal: bad character");
        }
    }
    if (!seen_digit) throw std::invalid_argument("rational_from_decimal: no digits");
    BigInt den = 1;
    for (unsigned j = 0; j < frac_digits; ++j) den *= 10;
    BigRat r(num, den);
    return neg ? BigRat(-r) : r;
}

}  // namespace salemlab
