#pragma once

// Sturm sequences over exact rationals: root counting on intervals with
// (possibly infinite) endpoints, isolation by bisection, and refinement
// of isolating intervals to dyadic enclosures of prescribed width.

#include "salemlab/int_polynomial.hpp"
#include "salemlab/interval.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace salemlab {

struct EndpointIsRootError : std::invalid_argument {
    EndpointIsRootError() : std::invalid_argument("interval endpoint is a root") {}
};
struct NotIsolatingError : std::invalid_argument {
    NotIsolatingError() : std::invalid_argument("interval does not isolate a single simple root") {}
};

/// Finite rational point or +/- infinity, for root-counting bounds.
class Endpoint {
public:
    static Endpoint neg_infinity() { return Endpoint(-1); }
    static Endpoint pos_infinity() { return Endpoint(+1); }
    static Endpoint at(BigRat v) {
        Endpoint e(0);
        e.value_ = std::move(v);
        return e;
    }

    bool is_finite() const { return inf_ == 0; }
    bool is_pos_infinity() const { return inf_ > 0; }
    bool is_neg_infinity() const { return inf_ < 0; }
    const BigRat& value() const { return value_; }

    friend bool operator<(const Endpoint& a, const Endpoint& b) {
        if (a.inf_ != b.inf_) return a.inf_ < b.inf_;
        return a.is_finite() && a.value_ < b.value_;
    }

private:
    explicit Endpoint(int inf) : inf_(inf) {}
    int inf_ = 0;
    BigRat value_;
};

namespace detail {

/// -rem(a, b) over the rationals, scaled by a positive rational into a
/// primitive integer polynomial. Positive scaling preserves every sign
/// the Sturm argument relies on.
inline IntPolynomial negated_remainder_primitive(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigRat> rem;
    rem.reserve(a.coefficients().size());
    for (const auto& c : a.coefficients()) rem.emplace_back(c);
    const int db = b.degree();
    const BigRat lb{b.leading()};
    int dr = a.degree();
    while (dr >= db) {
        BigRat f = rem[static_cast<size_t>(dr)] / lb;
        for (int i = 0; i < db; ++i)
            rem[static_cast<size_t>(dr - db + i)] -= f * BigRat(b.coefficient(i));
        rem[static_cast<size_t>(dr)] = 0;
        --dr;
        while (dr >= 0 && rem[static_cast<size_t>(dr)] == 0) --dr;
    }
    if (dr < 0) return {};
    BigInt den = 1;
    for (int i = 0; i <= dr; ++i)
        den = boost::multiprecision::lcm(den, denominator_of(rem[static_cast<size_t>(i)]));
    std::vector<BigInt> v(static_cast<size_t>(dr) + 1);
    for (int i = 0; i <= dr; ++i) {
        const BigRat& c = rem[static_cast<size_t>(i)];
        v[static_cast<size_t>(i)] = -numerator_of(c) * (den / denominator_of(c));
    }
    IntPolynomial r(std::move(v));
    BigInt g = r.content();
    std::vector<BigInt> w(r.coefficients().size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = r.coefficient(static_cast<int>(i)) / g;
    return IntPolynomial(std::move(w));
}

}  // namespace detail

/// Sturm chain of a polynomial. Elements are kept as primitive integer
/// polynomials (each scaled by a positive rational, which preserves all
/// signs). Counting assumes the endpoints are not roots of the first
/// element.
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& q) {
        chain_.push_back(q.primitive_part());
        if (q.degree() >= 1) {
            chain_.push_back(q.derivative().primitive_part());
            while (chain_.back().degree() > 0) {
                IntPolynomial r =
                    detail::negated_remainder_primitive(chain_[chain_.size() - 2], chain_.back());
                if (r.is_zero()) break;
                chain_.push_back(std::move(r));
            }
        }
    }

    const IntPolynomial& polynomial() const { return chain_.front(); }

    int sign_variations(const Endpoint& e) const {
        int var = 0, last = 0;
        for (const auto& p : chain_) {
            int s;
            if (e.is_finite()) s = p.sign_at(e.value());
            else if (e.is_pos_infinity()) s = p.leading().sign();
            else s = p.degree() % 2 == 0 ? p.leading().sign() : -p.leading().sign();
            if (s == 0) continue;
            if (last != 0 && s != last) ++var;
            last = s;
        }
        return var;
    }

    /// Distinct real roots of the (squarefree part of the) polynomial in
    /// the open interval (a, b). Throws if a finite endpoint is a root.
    int count(const Endpoint& a, const Endpoint& b) const {
        if (!(a < b)) throw std::invalid_argument("SturmChain::count: need a < b");
        if (a.is_finite() && chain_.front().sign_at(a.value()) == 0) throw EndpointIsRootError();
        if (b.is_finite() && chain_.front().sign_at(b.value()) == 0) throw EndpointIsRootError();
        return sign_variations(a) - sign_variations(b);
    }

    int count_all() const { return count(Endpoint::neg_infinity(), Endpoint::pos_infinity()); }

private:
    std::vector<IntPolynomial> chain_;
};

/// Exact number of distinct real roots of q in (a, b).
inline int sturm_count(const IntPolynomial& q, const Endpoint& a, const Endpoint& b) {
    return SturmChain(q).count(a, b);
}
inline int sturm_count(const IntPolynomial& q, const BigRat& a, const BigRat& b) {
    return sturm_count(q, Endpoint::at(a), Endpoint::at(b));
}

/// Power-of-two bound B with all real roots of q strictly inside (-B, B).
inline BigRat cauchy_root_bound(const IntPolynomial& q) {
    if (q.degree() <= 0) return BigRat(2);
    BigInt maxc = 0;
    for (int i = 0; i < q.degree(); ++i) maxc = std::max(maxc, big_abs(q.coefficient(i)));
    const BigInt lead = big_abs(q.leading());
    BigInt t = maxc / lead + 2;  // > 1 + maxc/lead
    return BigRat(pow2(ceil_log2(t)));
}

namespace detail {

/// A split point for (lo, hi) that is not a root of q. Midpoints of
/// dyadic endpoints stay dyadic; when the midpoint happens to be a root
/// the point is nudged by quarters of the width until q is nonzero there.
inline BigRat nonroot_split(const IntPolynomial& q, const BigRat& lo, const BigRat& hi) {
    BigRat mid = (lo + hi) / 2;
    if (q.sign_at(mid) != 0) return mid;
    BigRat step = (hi - lo) / 4;
    while (true) {
        for (const BigRat& c : {BigRat(mid - step), BigRat(mid + step)}) {
            if (c > lo && c < hi && q.sign_at(c) != 0) return c;
        }
        step /= 2;
    }
}

}  // namespace detail

/// Pairwise-disjoint open intervals, each containing exactly one distinct
/// real root of q (Sturm count 1), covering all roots of q in (a, b).
/// q is reduced to its squarefree part first. Finite endpoints of (a, b)
/// must not be roots.
inline std::vector<RationalInterval> isolate_real_roots(const IntPolynomial& q, const Endpoint& a,
                                                        const Endpoint& b) {
    IntPolynomial sf = squarefree_part(q.primitive_part());
    SturmChain chain(sf);
    if (a.is_finite() && sf.sign_at(a.value()) == 0) throw EndpointIsRootError();
    if (b.is_finite() && sf.sign_at(b.value()) == 0) throw EndpointIsRootError();
    // replace infinite endpoints by the power-of-two root bound
    const BigRat bound = cauchy_root_bound(sf);
    BigRat lo = a.is_finite() ? a.value() : BigRat(-bound);
    BigRat hi = b.is_finite() ? b.value() : bound;
    if (lo >= hi) return {};
    std::vector<RationalInterval> out;
    std::vector<RationalInterval> work{RationalInterval(lo, hi)};
    while (!work.empty()) {
        RationalInterval iv = work.back();
        work.pop_back();
        const int c = chain.count(Endpoint::at(iv.lo), Endpoint::at(iv.hi));
        if (c == 0) continue;
        // keep splitting below width 1 so enclosures hug their root
        if (c == 1 && iv.width() <= 1) {
            out.push_back(iv);
            continue;
        }
        const BigRat m = detail::nonroot_split(sf, iv.lo, iv.hi);
        work.emplace_back(iv.lo, m);
        work.emplace_back(m, iv.hi);
    }
    std::sort(out.begin(), out.end(),
              [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    return out;
}

inline std::vector<RationalInterval> isolate_real_roots(const IntPolynomial& q) {
    return isolate_real_roots(q, Endpoint::neg_infinity(), Endpoint::pos_infinity());
}

/// Shrink an isolating interval for a simple root of p to width <= 2^-bits
/// with dyadic endpoints. The result is contained in the input and still
/// isolates the same root. Throws NotIsolatingError when the input does
/// not bracket exactly one simple root.
inline RationalInterval refine_root(const IntPolynomial& p, const RationalInterval& iv,
                                    unsigned bits) {
    if (p.is_zero()) throw NotIsolatingError();
    BigRat lo = iv.lo, hi = iv.hi;
    int slo = p.sign_at(lo), shi = p.sign_at(hi);
    if (lo == hi) {
        if (slo != 0) throw NotIsolatingError();
        return iv;  // exact rational root supplied as a point interval
    }
    if (slo == 0 || shi == 0 || slo == shi) throw NotIsolatingError();
    const SturmChain chain(squarefree_part(p.primitive_part()));
    if (chain.count(Endpoint::at(lo), Endpoint::at(hi)) != 1) throw NotIsolatingError();
    const BigRat target = BigRat(1, pow2(bits));
    // Bisect to half the target width, then snap to the dyadic grid.
    while (hi - lo > target / 2) {
        const BigRat m = (lo + hi) / 2;
        const int sm = p.sign_at(m);
        if (sm == 0) {  // rational root hit exactly
            lo = hi = m;
            break;
        }
        if (sm == slo) lo = m;
        else hi = m;
    }
    if (is_dyadic(lo) && is_dyadic(hi) && hi - lo <= target) return {lo, hi};
    // Outward dyadic rounding; widen the grid until the snapped interval
    // still isolates exactly one root (the Sturm recount guards against
    // another root entering through the widened endpoints).
    for (unsigned g = bits + 2;; ++g) {
        BigRat dlo = dyadic_floor(lo, g), dhi = dyadic_ceil(hi, g);
        if (dhi - dlo > target) continue;
        if (dlo == dhi) return {dlo, dhi};
        const int a = p.sign_at(dlo), b = p.sign_at(dhi);
        if (a != 0 && b != 0 && a != b &&
            chain.count(Endpoint::at(dlo), Endpoint::at(dhi)) == 1)
            return {dlo, dhi};
        if (g > bits + 64) throw NotIsolatingError();  // cannot happen for simple roots
    }
}

}  // namespace salemlab
