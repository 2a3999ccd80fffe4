#pragma once

// Exact rational intervals. Root enclosures keep dyadic endpoints so
// that widths halve cleanly and decimal output is exact.

#include "salemlab/numeric.hpp"

#include <stdexcept>

namespace salemlab {

struct RationalInterval {
    BigRat lo;
    BigRat hi;

    RationalInterval() = default;
    RationalInterval(BigRat l, BigRat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
    }

    BigRat width() const { return hi - lo; }
    BigRat midpoint() const { return (lo + hi) / 2; }
    bool contains(const BigRat& x) const { return lo <= x && x <= hi; }
    bool contains(const RationalInterval& other) const { return lo <= other.lo && other.hi <= hi; }

    friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Smallest interval with endpoints on the 2^-bits grid containing iv.
inline RationalInterval dyadic_outward(const RationalInterval& iv, unsigned bits) {
    return {dyadic_floor(iv.lo, bits), dyadic_ceil(iv.hi, bits)};
}

}  // namespace salemlab
