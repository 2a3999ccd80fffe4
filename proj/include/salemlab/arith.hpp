#pragma once

// Arithmetic data attached to a Salem certificate: the totally real
// trace field k0 = Q(tau + 1/tau), and the ramification set for the
// quaternion algebra over k0 -- all archimedean places except the
// defining one, plus (for even degree) one finite prime where the
// quadratic extension k0(tau)/k0 is inert. Since tau^2 - s0*tau + 1 = 0,
// k0(tau) = k0(sqrt(s0^2 - 4)), so a degree-one prime (p, a) with
// Q(a) = 0 mod p is inert iff a^2 - 4 is a quadratic non-residue mod p.

#include "salemlab/salem.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace salemlab {

struct NotFoundError : std::runtime_error {
    explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

/// Legendre symbol by modular exponentiation n^((p-1)/2) mod p. p must
/// be an odd prime < 2^31.
inline int legendre(const BigInt& n, std::int64_t p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre: p must be an odd prime");
    std::int64_t a = static_cast<std::int64_t>(n % p);
    if (a < 0) a += p;
    if (a == 0) return 0;
    std::int64_t r = 1, base = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

inline int legendre(std::int64_t n, std::int64_t p) { return legendre(BigInt(n), p); }

/// Odd primes up to bound, ascending. The bound is capped below 2^31 so
/// downstream int64 modular products cannot overflow.
inline std::vector<std::int64_t> odd_primes_upto(std::int64_t bound) {
    if (bound >= (std::int64_t{1} << 31))
        throw std::invalid_argument("odd_primes_upto: bound must be below 2^31");
    std::vector<std::int64_t> out;
    if (bound < 3) return out;
    std::vector<bool> comp(static_cast<size_t>(bound) + 1, false);
    for (std::int64_t i = 2; i * i <= bound; ++i)
        if (!comp[static_cast<size_t>(i)])
            for (std::int64_t j = i * i; j <= bound; j += i) comp[static_cast<size_t>(j)] = true;
    for (std::int64_t p = 3; p <= bound; p += 2)
        if (!comp[static_cast<size_t>(p)]) out.push_back(p);
    return out;
}

/// Trace field k0 described by the certificate's trace polynomial,
/// with its degree, total reality (Sturm-verified) and exact
/// discriminant via the resultant of Q and Q'.
struct TraceFieldData {
    IntPolynomial q;
    int degree = 0;
    bool totally_real = false;
    RationalInterval s0_interval;
    BigInt disc;
};

inline TraceFieldData trace_field(const SalemCertificate& cert) {
    TraceFieldData tf;
    tf.q = cert.q;
    tf.degree = cert.q.degree();
    tf.totally_real = SturmChain(cert.q).count_all() == tf.degree;
    tf.s0_interval = cert.s0_interval;
    tf.disc = discriminant(cert.q);
    return tf;
}

struct PrimeWitness {
    std::int64_t p = 0;
    std::int64_t a = 0;
    friend bool operator==(const PrimeWitness& x, const PrimeWitness& y) {
        return x.p == y.p && x.a == y.a;
    }
};

namespace detail {

inline std::int64_t mod_reduce(const BigInt& n, std::int64_t p) {
    std::int64_t r = static_cast<std::int64_t>(n % p);
    return r < 0 ? r + p : r;
}

/// Q(a) mod p by Horner over int64 (p < 2^31 keeps products in range).
inline std::int64_t eval_mod(const IntPolynomial& q, std::int64_t a, std::int64_t p) {
    std::int64_t r = 0;
    for (int i = q.degree(); i >= 0; --i) r = (r * a + mod_reduce(q.coefficient(i), p)) % p;
    return r;
}

/// Smallest (p, a) lexicographic with p odd <= bound, p not dividing
/// disc Q, Q(a) = 0 mod p, and the supplied residue test on a.
template <typename ResidueTest>
std::optional<PrimeWitness> scan_degree_one_primes(const TraceFieldData& tf, std::int64_t bound,
                                                   ResidueTest&& accept) {
    for (std::int64_t p : odd_primes_upto(bound)) {
        if (tf.disc % p == 0) continue;  // avoid order-index primes
        for (std::int64_t a = 0; a < p; ++a) {
            if (eval_mod(tf.q, a, p) != 0) continue;
            if (accept(p, a)) return PrimeWitness{p, a};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Smallest degree-one prime (p, a) inert in k0(tau)/k0: a^2 - 4 a
/// non-residue mod p. Requires even field degree (odd-degree fields
/// need no finite ramification).
inline std::optional<PrimeWitness> find_inert_prime(const TraceFieldData& tf, std::int64_t bound) {
    if (tf.degree % 2 != 0)
        throw std::invalid_argument("find_inert_prime: field degree must be even");
    if (bound < 3) return std::nullopt;
    return detail::scan_degree_one_primes(
        tf, bound, [](std::int64_t p, std::int64_t a) { return legendre(a * a - 4, p) == -1; });
}

/// Smallest degree-one prime (p, a) split for the quadratic datum
/// delta(s0): legendre(delta(a), p) = +1. delta is supplied as a
/// polynomial in s0.
inline std::optional<PrimeWitness> find_split_prime(const TraceFieldData& tf,
                                                    const IntPolynomial& delta,
                                                    std::int64_t bound) {
    if (delta.is_zero()) return std::nullopt;  // symbol is 0 everywhere
    if (bound < 3) return std::nullopt;
    return detail::scan_degree_one_primes(tf, bound, [&delta](std::int64_t p, std::int64_t a) {
        return legendre(BigInt(detail::eval_mod(delta, a, p)), p) == 1;
    });
}

/// Ramification set plan: degree-1 archimedean places, plus one inert
/// finite prime exactly when the field degree is even, keeping the
/// total count even.
struct RamificationPlan {
    int archimedean_count = 0;
    std::optional<PrimeWitness> finite_prime;
    std::optional<std::int64_t> delta_residue;  // (a^2 - 4) mod p when present
    bool parity_ok = false;
};

inline RamificationPlan ramification_plan(const SalemCertificate& cert, std::int64_t bound = 10000) {
    const TraceFieldData tf = trace_field(cert);
    RamificationPlan plan;
    plan.archimedean_count = tf.degree - 1;
    if (tf.degree % 2 == 0) {
        auto w = find_inert_prime(tf, bound);
        if (!w)
            throw NotFoundError("ramification_plan: no inert degree-one prime below bound " +
                                std::to_string(bound));
        plan.finite_prime = *w;
        std::int64_t d = (w->a * w->a - 4) % w->p;
        if (d < 0) d += w->p;
        plan.delta_residue = d;
    }
    plan.parity_ok = (plan.archimedean_count + (plan.finite_prime ? 1 : 0)) % 2 == 0;
    return plan;
}

// ---- JSON ----

inline nlohmann::ordered_json to_json(const RamificationPlan& plan) {
    nlohmann::ordered_json j;
    j["archimedean_count"] = std::to_string(plan.archimedean_count);
    if (plan.finite_prime) {
        j["finite_prime"] = {{"p", std::to_string(plan.finite_prime->p)},
                             {"a", std::to_string(plan.finite_prime->a)}};
        j["delta_residue"] = std::to_string(*plan.delta_residue);
    } else {
        j["finite_prime"] = nullptr;
        j["delta_residue"] = nullptr;
    }
    j["parity_ok"] = plan.parity_ok;
    return j;
}

inline RamificationPlan ramification_plan_from_json(const nlohmann::json& j) {
    RamificationPlan plan;
    plan.archimedean_count = std::stoi(j.at("archimedean_count").get<std::string>());
    if (!j.at("finite_prime").is_null()) {
        PrimeWitness w;
        w.p = std::stoll(j.at("finite_prime").at("p").get<std::string>());
        w.a = std::stoll(j.at("finite_prime").at("a").get<std::string>());
        plan.finite_prime = w;
        plan.delta_residue = std::stoll(j.at("delta_residue").get<std::string>());
    }
    plan.parity_ok = j.at("parity_ok").get<bool>();
    return plan;
}

inline bool operator==(const RamificationPlan& a, const RamificationPlan& b) {
    return a.archimedean_count == b.archimedean_count && a.finite_prime == b.finite_prime &&
           a.delta_residue == b.delta_residue && a.parity_ok == b.parity_ok;
}

}  // namespace salemlab
