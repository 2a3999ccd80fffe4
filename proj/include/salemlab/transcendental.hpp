#pragma once

// Rigorous rational enclosures of natural logarithms, for geodesic
// lengths 2*log(tau). Everything is exact rational arithmetic with an
// explicit truncation-tail bound; outputs are rounded outward to dyadic
// endpoints.

#include "salemlab/interval.hpp"
#include "salemlab/numeric.hpp"

#include <stdexcept>
#include <utility>

namespace salemlab {

namespace detail {

/// Enclosure of atanh(t) for |t| <= 1/3 via the odd power series,
/// with tail bound |t|^(2K+1) / ((2K+1)(1-t^2)).
inline RationalInterval atanh_enclosure(const BigRat& t, unsigned bits) {
    if (t < BigRat(-1, 3) || t > BigRat(1, 3))
        throw std::invalid_argument("atanh_enclosure: |t| must be <= 1/3");
    const BigRat target(1, pow2(bits));
    const BigRat t2 = t * t;
    const BigRat geom = 1 / (1 - t2);
    BigRat sum = 0;
    BigRat power = t;  // t^(2k+1)
    unsigned k = 0;
    while (true) {
        sum += power / BigInt(2 * k + 1);
        power *= t2;
        ++k;
        BigRat tail = (power < 0 ? BigRat(-power) : power) * geom / BigInt(2 * k + 1);
        if (tail <= target) {
            if (t >= 0) return {sum, sum + tail};
            return {sum - tail, sum};
        }
    }
}

inline RationalInterval log2_enclosure(unsigned bits) {
    // log 2 = 2 atanh(1/3)
    RationalInterval a = atanh_enclosure(BigRat(1, 3), bits + 1);
    return {a.lo * 2, a.hi * 2};
}

}  // namespace detail

/// Enclosure of log(x) for rational x > 0, width <= 2^-bits. Endpoints
/// are exact rationals (not necessarily dyadic).
inline RationalInterval log_enclosure(const BigRat& x, unsigned bits) {
    if (x <= 0) throw std::domain_error("log_enclosure: x must be positive");
    // reduce x = 2^e * y with y in [3/4, 3/2)
    BigRat y = x;
    long long e = 0;
    while (y >= BigRat(3, 2)) {
        y /= 2;
        ++e;
    }
    while (y < BigRat(3, 4)) {
        y *= 2;
        --e;
    }
    const BigRat t = (y - 1) / (y + 1);  // |t| <= 1/5
    RationalInterval a = detail::atanh_enclosure(t, bits + 2);
    RationalInterval ln_y{a.lo * 2, a.hi * 2};
    if (e == 0) return ln_y;
    RationalInterval l2 = detail::log2_enclosure(bits + 2 + ceil_log2(BigInt(e < 0 ? -e : e) + 1));
    if (e > 0) return {ln_y.lo + l2.lo * e, ln_y.hi + l2.hi * e};
    return {ln_y.lo + l2.hi * e, ln_y.hi + l2.lo * e};
}

/// Dyadic enclosure of {2 log t : t in iv} of width <= 2^-bits.
/// Requires iv.lo >= 1 and width(iv) <= 2^-(bits+3); geodesic callers
/// refine tau first, which keeps the log's derivative factor <= 1.
inline RationalInterval two_log_interval(const RationalInterval& iv, unsigned bits) {
    if (iv.lo < 1) throw std::domain_error("two_log_interval: interval must lie in [1, inf)");
    if (iv.width() > BigRat(1, pow2(bits + 3)))
        throw std::invalid_argument("two_log_interval: input interval too wide");
    const RationalInterval lo_enc = log_enclosure(iv.lo, bits + 4);
    const RationalInterval hi_enc = iv.lo == iv.hi ? lo_enc : log_enclosure(iv.hi, bits + 4);
    RationalInterval raw{lo_enc.lo * 2, hi_enc.hi * 2};
    RationalInterval out = dyadic_outward(raw, bits + 2);
    // width: 2*(tau width) + 2*2^-(bits+4)*2 + 2*2^-(bits+2) < 2^-bits
    if (out.width() > BigRat(1, pow2(bits)))
        throw std::logic_error("two_log_interval: width bound violated");
    return out;
}

}  // namespace salemlab
