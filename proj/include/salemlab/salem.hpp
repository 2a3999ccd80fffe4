#pragma once

// Salem number certification with exact arithmetic. A monic reciprocal
// P of degree 2n is the minimal polynomial of a Salem number iff its
// trace polynomial Q (P(x) = x^n Q(x+1/x)) has exactly one real root in
// (2, inf) and n-1 in (-2, 2), P is squarefree and P has no cyclotomic
// factor. Minimality then follows from Kronecker's theorem: a monic
// integer polynomial with all roots on the unit circle is a product of
// cyclotomics, so the no-cyclotomic-factor gate certifies irreducibility
// for the Salem root pattern.

#include "salemlab/int_polynomial.hpp"
#include "salemlab/interval.hpp"
#include "salemlab/sturm.hpp"
#include "salemlab/transcendental.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

namespace salemlab {

enum class NotSalemReason {
    NotMonic,
    OddDegree,
    DegreeTooSmall,
    NotReciprocal,
    HasCyclotomicFactor,
    RepeatedFactor,
    ComplexTraceRoot,
    NoRootBeyondTwo,
    MultipleRootsBeyondTwo,
    TraceRootAtBoundary,
    NoCircleConjugate,
};

inline const char* to_string(NotSalemReason r) {
    switch (r) {
        case NotSalemReason::NotMonic: return "NotMonic";
        case NotSalemReason::OddDegree: return "OddDegree";
        case NotSalemReason::DegreeTooSmall: return "DegreeTooSmall";
        case NotSalemReason::NotReciprocal: return "NotReciprocal";
        case NotSalemReason::HasCyclotomicFactor: return "HasCyclotomicFactor";
        case NotSalemReason::RepeatedFactor: return "RepeatedFactor";
        case NotSalemReason::ComplexTraceRoot: return "ComplexTraceRoot";
        case NotSalemReason::NoRootBeyondTwo: return "NoRootBeyondTwo";
        case NotSalemReason::MultipleRootsBeyondTwo: return "MultipleRootsBeyondTwo";
        case NotSalemReason::TraceRootAtBoundary: return "TraceRootAtBoundary";
        case NotSalemReason::NoCircleConjugate: return "NoCircleConjugate";
    }
    return "?";
}

/// Verified Salem evidence: the polynomial pair, dyadic enclosures of
/// tau > 1 and of the field generator s0 = tau + 1/tau > 2, and the
/// count of trace roots in (-2, 2).
struct SalemCertificate {
    IntPolynomial p;              // minimal polynomial of tau, degree 2n
    IntPolynomial q;              // trace polynomial, degree n
    RationalInterval tau_interval;  // width <= 2^-53, dyadic endpoints
    RationalInterval s0_interval;   // tau + 1/tau in interval arithmetic, dyadic
    int circle_root_count = 0;      // = n - 1

    friend bool operator==(const SalemCertificate& a, const SalemCertificate& b) {
        return a.p == b.p && a.q == b.q && a.tau_interval == b.tau_interval &&
               a.s0_interval == b.s0_interval && a.circle_root_count == b.circle_root_count;
    }
};

using CertifyResult = std::variant<SalemCertificate, NotSalemReason>;

inline bool is_salem(const CertifyResult& r) { return std::holds_alternative<SalemCertificate>(r); }
inline const SalemCertificate& certificate(const CertifyResult& r) {
    return std::get<SalemCertificate>(r);
}
inline NotSalemReason reason(const CertifyResult& r) { return std::get<NotSalemReason>(r); }

inline constexpr unsigned kDefaultTauBits = 53;

namespace detail {

/// s0 enclosure from a tau enclosure in [1, inf): interval-arithmetic
/// image of t + 1/t, rounded outward to dyadic endpoints.
inline RationalInterval s0_from_tau(const RationalInterval& tau) {
    RationalInterval raw{tau.lo + 1 / tau.hi, tau.hi + 1 / tau.lo};
    return dyadic_outward(raw, kDefaultTauBits + 4);
}

}  // namespace detail

/// Run the fixed check pipeline; on failure the reason names the first
/// violated condition. Pipeline: monic, degree even >= 4, reciprocal,
/// squarefree, no cyclotomic factor, trace polynomial all-real, exactly
/// one trace root beyond 2, none at +-2, remaining n-1 in (-2, 2).
inline CertifyResult certify_salem(const IntPolynomial& p) {
    if (!p.is_monic()) return NotSalemReason::NotMonic;
    if (p.degree() % 2 != 0) return NotSalemReason::OddDegree;
    if (p.degree() < 4) return NotSalemReason::DegreeTooSmall;
    if (!is_reciprocal(p)) return NotSalemReason::NotReciprocal;
    if (polynomial_gcd(p, p.derivative()).degree() > 0) return NotSalemReason::RepeatedFactor;
    if (has_cyclotomic_factor(p)) return NotSalemReason::HasCyclotomicFactor;

    const int n = p.degree() / 2;
    const IntPolynomial q = trace_transform(p);
    const SturmChain chain(q);
    if (chain.count_all() != n) return NotSalemReason::ComplexTraceRoot;
    // Q(2) = P(1) and Q(-2) = (-1)^n P(-1); the cyclotomic gate already
    // excludes both, so this boundary check cannot fire. It runs before
    // the counts so the Sturm endpoints are never roots.
    if (q.sign_at(BigRat(2)) == 0 || q.sign_at(BigRat(-2)) == 0)
        return NotSalemReason::TraceRootAtBoundary;
    const int beyond = chain.count(Endpoint::at(BigRat(2)), Endpoint::pos_infinity());
    if (beyond == 0) return NotSalemReason::NoRootBeyondTwo;
    if (beyond > 1) return NotSalemReason::MultipleRootsBeyondTwo;
    if (chain.count(Endpoint::at(BigRat(-2)), Endpoint::at(BigRat(2))) != n - 1)
        return NotSalemReason::NoCircleConjugate;

    // tau is the unique root of P in (1, inf); P(1) != 0 after the
    // cyclotomic gate, so 1 is a safe Sturm endpoint.
    auto enclosures = isolate_real_roots(p, Endpoint::at(BigRat(1)), Endpoint::pos_infinity());
    if (enclosures.size() != 1)
        throw std::logic_error("certify_salem: expected exactly one root beyond 1");
    SalemCertificate cert;
    cert.p = p;
    cert.q = q;
    cert.tau_interval = refine_root(p, enclosures.front(), kDefaultTauBits);
    // Residual consistency at the midpoint: |P(m)| < |P'(m)| * width.
    // Holds for any simple root once the enclosure is this tight; refine
    // further if a pathological case ever trips it.
    for (unsigned bits = kDefaultTauBits; bits <= 4 * kDefaultTauBits; bits *= 2) {
        const BigRat m = cert.tau_interval.midpoint();
        BigRat pm = p(m);
        BigRat dm = p.derivative()(m);
        if (pm < 0) pm = -pm;
        if (dm < 0) dm = -dm;
        if (cert.tau_interval.width() == 0 || pm < dm * cert.tau_interval.width()) break;
        cert.tau_interval = refine_root(p, cert.tau_interval, bits * 2);
    }
    cert.s0_interval = detail::s0_from_tau(cert.tau_interval);
    cert.circle_root_count = n - 1;
    return cert;
}

/// Dyadic enclosure of tau of width <= 2^-bits, nested inside the
/// certificate's enclosure as bits grows.
inline RationalInterval tau_approx(const SalemCertificate& cert, unsigned bits) {
    return refine_root(cert.p, cert.tau_interval, bits);
}

/// Dyadic enclosure of the geodesic length 2 log(tau), width <= 2^-bits.
inline RationalInterval geodesic_length(const SalemCertificate& cert, unsigned bits) {
    return two_log_interval(tau_approx(cert, bits + 4), bits);
}

/// Every monic trace polynomial Q of degree n with non-leading
/// coefficients in [-H, H] whose inverse trace transform certifies as
/// Salem, in lexicographic order of Q's coefficient vector (constant
/// term first). The coefficient box may be scanned by several workers;
/// the merged output is identical to the serial scan.
inline std::vector<SalemCertificate> enumerate_salem(int n, int height, int jobs = 1) {
    if (n < 2) throw std::invalid_argument("enumerate_salem: need n >= 2");
    if (height < 1) throw std::invalid_argument("enumerate_salem: need height >= 1");
    const int range = 2 * height + 1;

    auto scan_first_coeff = [n, height](int a0, std::vector<SalemCertificate>& out) {
        std::vector<BigInt> coeffs(static_cast<size_t>(n) + 1, BigInt(0));
        coeffs.back() = 1;
        coeffs[0] = a0;
        std::vector<int> idx(static_cast<size_t>(n - 1), -height);  // a_1..a_{n-1}
        while (true) {
            for (int i = 1; i < n; ++i) coeffs[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)];
            IntPolynomial q(coeffs);
            // Exactly one simple root beyond 2 forces Q(2) < 0 for monic Q;
            // candidates failing this are provably not Salem. The root
            // pattern of Q is then checked before the (costlier) full
            // pipeline -- the conjunction is order-free, so the emitted
            // set is unchanged.
            if (q(BigInt(2)) < 0 && q(BigInt(-2)) != 0) {
                const int n_deg = q.degree();
                const SturmChain qc(q);
                if (qc.count_all() == n_deg &&
                    qc.count(Endpoint::at(BigRat(2)), Endpoint::pos_infinity()) == 1 &&
                    qc.count(Endpoint::at(BigRat(-2)), Endpoint::at(BigRat(2))) == n_deg - 1) {
                    CertifyResult r = certify_salem(inverse_trace_transform(q));
                    if (is_salem(r)) out.push_back(certificate(r));
                }
            }
            int k = n - 2;
            while (k >= 0 && idx[static_cast<size_t>(k)] == height) {
                idx[static_cast<size_t>(k)] = -height;
                --k;
            }
            if (k < 0) break;
            ++idx[static_cast<size_t>(k)];
        }
    };

    std::vector<std::vector<SalemCertificate>> partial(static_cast<size_t>(range));
    if (jobs <= 1) {
        for (int a0 = -height; a0 <= height; ++a0)
            scan_first_coeff(a0, partial[static_cast<size_t>(a0 + height)]);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (int i = next.fetch_add(1); i < range; i = next.fetch_add(1))
                    scan_first_coeff(i - height, partial[static_cast<size_t>(i)]);
            });
        }
        for (auto& w : workers) w.join();
    }
    std::vector<SalemCertificate> out;
    for (auto& part : partial)
        for (auto& cert : part) out.push_back(std::move(cert));
    // a_1..a_{n-1} vary fastest inside each a_0 block in lexicographic
    // suffix order, and blocks are concatenated in a_0 order, so the
    // result is already lexicographic; sort anyway to pin the contract.
    std::sort(out.begin(), out.end(), [](const SalemCertificate& a, const SalemCertificate& b) {
        return a.q.coefficients() < b.q.coefficients();
    });
    return out;
}

/// True iff tau(a) < tau(b); overlapping enclosures are refined until
/// disjoint (distinct minimal polynomials have distinct tau).
inline bool tau_less(const SalemCertificate& a, const SalemCertificate& b) {
    RationalInterval ia = a.tau_interval, ib = b.tau_interval;
    for (unsigned bits = 128; bits <= 1024; bits *= 2) {
        if (ia.hi < ib.lo) return true;
        if (ib.hi < ia.lo) return false;
        ia = refine_root(a.p, ia, bits);
        ib = refine_root(b.p, ib, bits);
    }
    if (ia.hi < ib.lo) return true;
    if (ib.hi < ia.lo) return false;
    throw std::logic_error("tau_less: enclosures failed to separate");
}

/// Certificate with minimal tau among the enumeration output, or empty.
inline std::optional<SalemCertificate> smallest_salem(int n, int height, int jobs = 1) {
    auto all = enumerate_salem(n, height, jobs);
    if (all.empty()) return std::nullopt;
    const SalemCertificate* best = &all.front();
    for (const auto& cert : all)
        if (&cert != best && cert.p != best->p && tau_less(cert, *best)) best = &cert;
    return *best;
}

// ---- JSON report ----

inline std::vector<std::string> coeff_strings(const IntPolynomial& p) {
    std::vector<std::string> v;
    v.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) v.push_back(c.str());
    return v;
}

inline IntPolynomial polynomial_from_strings(const std::vector<std::string>& v) {
    std::vector<BigInt> c;
    c.reserve(v.size());
    for (const auto& s : v) c.emplace_back(s);
    return IntPolynomial(std::move(c));
}

struct CertificateReport {
    SalemCertificate cert;
    RationalInterval geodesic;

    friend bool operator==(const CertificateReport& a, const CertificateReport& b) {
        return a.cert == b.cert && a.geodesic == b.geodesic;
    }
};

inline CertificateReport make_certificate_report(const SalemCertificate& cert,
                                                 unsigned geodesic_bits = kDefaultTauBits) {
    return {cert, geodesic_length(cert, geodesic_bits)};
}

inline nlohmann::ordered_json to_json(const CertificateReport& r) {
    nlohmann::ordered_json j;
    j["p"] = coeff_strings(r.cert.p);
    j["q"] = coeff_strings(r.cert.q);
    j["tau_lo"] = decimal_string(r.cert.tau_interval.lo);
    j["tau_hi"] = decimal_string(r.cert.tau_interval.hi);
    j["s0_lo"] = decimal_string(r.cert.s0_interval.lo);
    j["s0_hi"] = decimal_string(r.cert.s0_interval.hi);
    j["geodesic_lo"] = decimal_string(r.geodesic.lo);
    j["geodesic_hi"] = decimal_string(r.geodesic.hi);
    return j;
}

inline CertificateReport certificate_report_from_json(const nlohmann::json& j) {
    CertificateReport r;
    r.cert.p = polynomial_from_strings(j.at("p").get<std::vector<std::string>>());
    r.cert.q = polynomial_from_strings(j.at("q").get<std::vector<std::string>>());
    r.cert.tau_interval = {rational_from_decimal(j.at("tau_lo").get<std::string>()),
                           rational_from_decimal(j.at("tau_hi").get<std::string>())};
    r.cert.s0_interval = {rational_from_decimal(j.at("s0_lo").get<std::string>()),
                          rational_from_decimal(j.at("s0_hi").get<std::string>())};
    r.geodesic = {rational_from_decimal(j.at("geodesic_lo").get<std::string>()),
                  rational_from_decimal(j.at("geodesic_hi").get<std::string>())};
    r.cert.circle_root_count = r.cert.q.degree() - 1;
    return r;
}

}  // namespace salemlab
