#pragma once

// Exact monic/integer polynomial arithmetic: evaluation, gcd over the
// rationals, resultants and discriminants, reciprocity, the cyclotomic
// factor sweep, and the trace transform x -> x + 1/x and its inverse.
// No floating point anywhere in this header.

#include "salemlab/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace salemlab {

struct NotMonicError : std::invalid_argument {
    NotMonicError() : std::invalid_argument("polynomial is not monic") {}
};
struct OddDegreeError : std::invalid_argument {
    OddDegreeError() : std::invalid_argument("polynomial has odd degree") {}
};
struct NotReciprocalError : std::invalid_argument {
    NotReciprocalError() : std::invalid_argument("polynomial is not reciprocal") {}
};

/// Dense integer polynomial, constant term first. The zero polynomial
/// has an empty coefficient vector and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<long long> c) {
        coeffs_.assign(c.begin(), c.end());
        trim();
    }
    explicit IntPolynomial(std::vector<BigInt> c) : coeffs_(std::move(c)) { trim(); }

    static IntPolynomial monomial(int deg, BigInt c = 1) {
        std::vector<BigInt> v(static_cast<size_t>(deg) + 1, BigInt(0));
        v.back() = std::move(c);
        return IntPolynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }

    BigInt coefficient(int i) const {
        if (i < 0 || i > degree()) return 0;
        return coeffs_[static_cast<size_t>(i)];
    }
    const BigInt& leading() const {
        static const BigInt zero = 0;
        return coeffs_.empty() ? zero : coeffs_.back();
    }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    BigInt operator()(const BigInt& x) const {
        BigInt r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }
    BigRat operator()(const BigRat& x) const {
        BigRat r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + BigRat(*it);
        return r;
    }

    /// Sign of P(num/den)*den^deg, den > 0 -- integer-only sign at a rational point.
    int sign_at(const BigInt& num, const BigInt& den) const {
        if (coeffs_.empty()) return 0;
        BigInt r = 0;
        BigInt dp = 1;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            r = r * num + *it * dp;
            dp *= den;
        }
        return r.sign();
    }
    int sign_at(const BigRat& x) const { return sign_at(numerator_of(x), denominator_of(x)); }

    IntPolynomial derivative() const {
        if (degree() <= 0) return {};
        std::vector<BigInt> d(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * BigInt(i);
        return IntPolynomial(std::move(d));
    }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
        return g;
    }
    /// Content removed, leading coefficient made positive.
    IntPolynomial primitive_part() const {
        if (is_zero()) return {};
        BigInt g = content();
        if (leading() < 0) g = -g;
        std::vector<BigInt> v(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] / g;
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
        return IntPolynomial(std::move(v));
    }
    IntPolynomial operator-() const {
        std::vector<BigInt> v(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const BigInt& c) {
        std::vector<BigInt> v(a.coeffs_.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeffs_[i] * c;
        return IntPolynomial(std::move(v));
    }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

    /// Exact quotient by a monic divisor; throws if the division leaves a remainder.
    IntPolynomial divide_exact_monic(const IntPolynomial& d) const {
        if (!d.is_monic()) throw NotMonicError();
        if (is_zero()) return {};
        if (degree() < d.degree()) throw std::invalid_argument("divide_exact_monic: not divisible");
        std::vector<BigInt> rem = coeffs_;
        std::vector<BigInt> q(static_cast<size_t>(degree() - d.degree()) + 1, BigInt(0));
        for (int k = degree() - d.degree(); k >= 0; --k) {
            BigInt f = rem[static_cast<size_t>(k + d.degree())];
            q[static_cast<size_t>(k)] = f;
            if (f == 0) continue;
            for (int i = 0; i <= d.degree(); ++i)
                rem[static_cast<size_t>(k + i)] -= f * d.coefficient(i);
        }
        for (const auto& r : rem)
            if (r != 0) throw std::invalid_argument("divide_exact_monic: not divisible");
        return IntPolynomial(std::move(q));
    }

    /// Canonical text form: comma-separated coefficients, constant term first.
    std::string to_coeff_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s.push_back(',');
            s += coeffs_[i].str();
        }
        return s;
    }

    std::string to_string(char var = 'x') const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs_[static_cast<size_t>(i)];
            if (c == 0) continue;
            if (!s.empty()) s += c > 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            BigInt a = big_abs(c);
            if (i == 0 || a != 1) s += a.str();
            if (i > 0) {
                s.push_back(var);
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    std::vector<BigInt> coeffs_;
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
};

/// Parse the canonical comma form "1,1,0,-1,..." (constant term first).
inline IntPolynomial parse_coeff_list(std::string_view s) {
    std::vector<BigInt> v;
    std::string tok;
    auto flush = [&] {
        // tolerate unicode minus from copy-pasted text
        std::string t;
        for (char c : tok)
            if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
        if (t.empty()) throw std::invalid_argument("parse_coeff_list: empty coefficient");
        v.emplace_back(t);
        tok.clear();
    };
    for (char c : s) {
        if (c == ',') flush();
        else tok.push_back(c);
    }
    flush();
    return IntPolynomial(std::move(v));
}

/// Convenience parser for "x^4 - x^3 - x^2 - x + 1" style input.
/// The variable may be any single letter; '*' between coefficient and
/// variable is optional. The comma form is canonical.
inline IntPolynomial parse_human_polynomial(std::string_view s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') t.push_back(c);
    if (t.empty()) throw std::invalid_argument("parse_human_polynomial: empty input");
    std::vector<BigInt> coeffs;
    auto add_term = [&](const BigInt& c, int e) {
        if (e >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<size_t>(e) + 1, BigInt(0));
        coeffs[static_cast<size_t>(e)] += c;
    };
    size_t i = 0;
    while (i < t.size()) {
        int sign = 1;
        while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
            if (t[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= t.size()) throw std::invalid_argument("parse_human_polynomial: dangling sign");
        std::string digits;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) digits.push_back(t[i++]);
        BigInt c = digits.empty() ? BigInt(1) : BigInt(digits);
        int e = 0;
        if (i < t.size() && std::isalpha(static_cast<unsigned char>(t[i]))) {
            ++i;
            e = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                std::string ed;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ed.push_back(t[i++]);
                if (ed.empty()) throw std::invalid_argument("parse_human_polynomial: missing exponent");
                e = std::stoi(ed);
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("parse_human_polynomial: bare sign");
        }
        add_term(sign > 0 ? c : BigInt(-c), e);
    }
    return IntPolynomial(std::move(coeffs));
}

/// Accepts either the canonical comma form or the human-readable form.
inline IntPolynomial parse_polynomial(std::string_view s) {
    for (char c : s)
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_human_polynomial(s);
    if (s.find(',') != std::string_view::npos) return parse_coeff_list(s);
    return parse_human_polynomial(s);  // single constant
}

/// Coefficient palindrome test; encodes tau * (1/tau) = 1 for Salem
/// candidates. Nonzero input required.
inline bool is_reciprocal(const IntPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("is_reciprocal: zero polynomial");
    const auto& c = p.coefficients();
    size_t n = c.size();
    for (size_t i = 0; i < n / 2 + 1; ++i)
        if (c[i] != c[n - 1 - i]) return false;
    return true;
}

// ---- gcd over the rationals (primitive integer representatives) ----

namespace detail {

/// Remainder of a*lc(b)^k by b computed fraction-free (pseudo-remainder),
/// then reduced to its primitive part. Sign conventions do not matter for
/// gcd purposes.
inline IntPolynomial pseudo_rem_primitive(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial r = a;
    const int db = b.degree();
    const BigInt lb = b.leading();
    while (!r.is_zero() && r.degree() >= db) {
        const int k = r.degree() - db;
        const BigInt lr = r.leading();
        r = r * lb - b * IntPolynomial::monomial(k, lr);
    }
    return r.primitive_part();
}

}  // namespace detail

/// gcd of two integer polynomials over Q, returned as the primitive
/// integer polynomial with positive leading coefficient (constant 1 when
/// coprime).
inline IntPolynomial polynomial_gcd(IntPolynomial a, IntPolynomial b) {
    a = a.primitive_part();
    b = b.primitive_part();
    while (!b.is_zero()) {
        IntPolynomial r = detail::pseudo_rem_primitive(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.primitive_part();
}

/// P divided by gcd(P, P'); the product of the distinct irreducible factors.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    if (p.degree() <= 0) return p;
    IntPolynomial g = polynomial_gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    // For monic p the gcd is monic up to sign, so exact division applies
    // after normalizing; for general p fall back to primitive division.
    if (g.is_monic()) return p.divide_exact_monic(g);
    // g has positive leading coefficient; p = g*h over Q with h rational.
    // Clear denominators via the primitive part of lc(g)^deg * p / g.
    IntPolynomial scaled = p;
    IntPolynomial q;
    {
        // long division of scaled by g over the rationals, exactness known
        std::vector<BigRat> rem;
        for (const auto& c : scaled.coefficients()) rem.emplace_back(c);
        std::vector<BigRat> quo(static_cast<size_t>(scaled.degree() - g.degree()) + 1);
        const BigRat lg{g.leading()};
        for (int k = scaled.degree() - g.degree(); k >= 0; --k) {
            BigRat f = rem[static_cast<size_t>(k + g.degree())] / lg;
            quo[static_cast<size_t>(k)] = f;
            for (int i = 0; i <= g.degree(); ++i)
                rem[static_cast<size_t>(k + i)] -= f * BigRat(g.coefficient(i));
        }
        BigInt den = 1;
        for (const auto& c : quo) den = boost::multiprecision::lcm(den, denominator_of(c));
        std::vector<BigInt> iq(quo.size());
        for (size_t i = 0; i < quo.size(); ++i)
            iq[i] = numerator_of(quo[i]) * (den / denominator_of(quo[i]));
        q = IntPolynomial(std::move(iq)).primitive_part();
    }
    return q;
}

/// Euler totient values 1..limit by sieve.
inline std::vector<int> totient_table(int limit) {
    std::vector<int> phi(static_cast<size_t>(limit) + 1);
    for (int i = 0; i <= limit; ++i) phi[static_cast<size_t>(i)] = i;
    for (int i = 2; i <= limit; ++i) {
        if (phi[static_cast<size_t>(i)] == i) {  // prime
            for (int j = i; j <= limit; j += i)
                phi[static_cast<size_t>(j)] -= phi[static_cast<size_t>(j)] / i;
        }
    }
    return phi;
}

/// True iff gcd(P, x^m - 1) is nonconstant for some m with phi(m) <= deg P.
/// The sweep bound 2*(deg P)^2 is complete since phi(m) >= sqrt(m/2).
inline bool has_cyclotomic_factor(const IntPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("has_cyclotomic_factor: zero polynomial");
    const int d = p.degree();
    if (d == 0) return false;
    const int limit = 2 * d * d;
    const auto phi = totient_table(limit);
    for (int m = 1; m <= limit; ++m) {
        if (phi[static_cast<size_t>(m)] > d) continue;
        IntPolynomial xm1 = IntPolynomial::monomial(m) - IntPolynomial{1};
        if (polynomial_gcd(p, xm1).degree() > 0) return true;
    }
    return false;
}

// ---- trace transform ----

/// For monic reciprocal P of degree 2n, the unique monic Q of degree n
/// with P(x) = x^n Q(x + 1/x). Uses x^k + x^-k = T_k(s), T_0 = 2,
/// T_1 = s, T_{k+1} = s T_k - T_{k-1}.
inline IntPolynomial trace_transform(const IntPolynomial& p) {
    if (!p.is_monic()) throw NotMonicError();
    if (p.degree() % 2 != 0 || p.degree() == 0) throw OddDegreeError();
    if (!is_reciprocal(p)) throw NotReciprocalError();
    const int n = p.degree() / 2;
    std::vector<IntPolynomial> T;
    T.reserve(static_cast<size_t>(n) + 1);
    T.push_back(IntPolynomial{2});
    T.push_back(IntPolynomial{0, 1});
    for (int k = 2; k <= n; ++k)
        T.push_back(T[static_cast<size_t>(k - 1)] * IntPolynomial{0, 1} - T[static_cast<size_t>(k - 2)]);
    IntPolynomial q = IntPolynomial{} + IntPolynomial(std::vector<BigInt>{p.coefficient(n)});
    for (int k = 1; k <= n; ++k) q = q + T[static_cast<size_t>(k)] * p.coefficient(n + k);
    return q;
}

/// P(x) = x^n Q(x + 1/x) expanded: sum q_k x^{n-k} (x^2+1)^k.
inline IntPolynomial inverse_trace_transform(const IntPolynomial& q) {
    if (!q.is_monic()) throw NotMonicError();
    const int n = q.degree();
    const IntPolynomial x2p1{1, 0, 1};
    IntPolynomial p;
    IntPolynomial pw{1};  // (x^2+1)^k
    for (int k = 0; k <= n; ++k) {
        p = p + IntPolynomial::monomial(n - k, q.coefficient(k)) * pw;
        if (k < n) pw = pw * x2p1;
    }
    return p;
}

// ---- resultant / discriminant ----

/// Resultant via fraction-free Bareiss elimination on the Sylvester matrix.
inline BigInt resultant(const IntPolynomial& a, const IntPolynomial& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0) return boost::multiprecision::pow(a.leading(), static_cast<unsigned>(n));
    if (n == 0) return boost::multiprecision::pow(b.leading(), static_cast<unsigned>(m));
    const int sz = m + n;
    std::vector<std::vector<BigInt>> M(static_cast<size_t>(sz), std::vector<BigInt>(static_cast<size_t>(sz), BigInt(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) M[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = a.coefficient(m - j);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) M[static_cast<size_t>(n + r)][static_cast<size_t>(r + j)] = b.coefficient(n - j);
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < sz - 1; ++k) {
        if (M[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int piv = -1;
            for (int r = k + 1; r < sz; ++r)
                if (M[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) { piv = r; break; }
            if (piv < 0) return 0;
            std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(piv)]);
            sign = -sign;
        }
        for (int r = k + 1; r < sz; ++r) {
            for (int c = k + 1; c < sz; ++c) {
                M[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    (M[static_cast<size_t>(k)][static_cast<size_t>(k)] * M[static_cast<size_t>(r)][static_cast<size_t>(c)] -
                     M[static_cast<size_t>(r)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(c)]) /
                    prev;
            }
            M[static_cast<size_t>(r)][static_cast<size_t>(k)] = 0;
        }
        prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    BigInt det = M[static_cast<size_t>(sz - 1)][static_cast<size_t>(sz - 1)];
    return sign > 0 ? det : BigInt(-det);
}

/// Discriminant of a monic polynomial: (-1)^{n(n-1)/2} Res(Q, Q').
inline BigInt discriminant(const IntPolynomial& q) {
    if (!q.is_monic()) throw NotMonicError();
    const int n = q.degree();
    if (n <= 0) throw std::invalid_argument("discriminant: degree must be >= 1");
    if (n == 1) return 1;
    BigInt r = resultant(q, q.derivative());
    return (static_cast<unsigned>(n) * static_cast<unsigned>(n - 1) / 2) % 2 == 0 ? r : BigInt(-r);
}

}  // namespace salemlab
