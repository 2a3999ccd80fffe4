#include "salemlab/salem.hpp"

#include "oracle_roots.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace salemlab;

namespace {

const IntPolynomial kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
const std::vector<long long> kLehmerC{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
const IntPolynomial kDegree4{1, -1, -1, -1, 1};
const std::vector<long long> kDegree4C{1, -1, -1, -1, 1};

double mid(const RationalInterval& iv) { return static_cast<double>(iv.midpoint()); }

// exact rational -> oracle float (dyadic denominators are powers of two,
// so both conversions are exact at oracle precision)
oracle::Real to_oracle(const BigRat& x) {
    return oracle::Real(numerator_of(x).str()) / oracle::Real(denominator_of(x).str());
}

bool contains_oracle(const RationalInterval& iv, const oracle::Real& x) {
    return to_oracle(iv.lo) <= x && x <= to_oracle(iv.hi);
}

}  // namespace

TEST_CASE("certify: Lehmer polynomial is Salem with the oracle's tau") {
    const CertifyResult r = certify_salem(kLehmer);
    REQUIRE(is_salem(r));
    const SalemCertificate& cert = certificate(r);
    CHECK(cert.q == IntPolynomial{3, 4, -5, -5, 1, 1});
    CHECK(cert.circle_root_count == 4);
    CHECK(cert.tau_interval.width() <= BigRat(1, pow2(53)));

    const oracle::Real tau = oracle::real_root_above_one(kLehmerC);
    CHECK(contains_oracle(cert.tau_interval, tau));
    CHECK(std::abs(mid(cert.tau_interval) - 1.1762808182599175) < 1e-12);

    // oracle sees the Salem pattern: 1 out, 1 in, 8 on the circle
    const auto cls = oracle::classify(kLehmerC);
    CHECK(cls.outside == 1);
    CHECK(cls.inside == 1);
    CHECK(cls.on_circle == 8);
    CHECK_FALSE(cls.has_root_of_unity);
}

TEST_CASE("certify: degree-4 example") {
    const CertifyResult r = certify_salem(kDegree4);
    REQUIRE(is_salem(r));
    const SalemCertificate& cert = certificate(r);
    CHECK(cert.q == IntPolynomial{-3, -1, 1});
    CHECK(contains_oracle(cert.tau_interval, oracle::real_root_above_one(kDegree4C)));
    // s0 = (1 + sqrt 13)/2
    CHECK(std::abs(mid(cert.s0_interval) - 2.302775637731995) < 1e-12);
}

TEST_CASE("certify: rejection reasons in pipeline order") {
    auto reason_of = [](const IntPolynomial& p) { return reason(certify_salem(p)); };
    CHECK(reason_of(IntPolynomial{}) == NotSalemReason::NotMonic);
    CHECK(reason_of(IntPolynomial{1, 2, 3}) == NotSalemReason::NotMonic);
    CHECK(reason_of(IntPolynomial{1, 1, 1, 1}) == NotSalemReason::OddDegree);
    CHECK(reason_of(IntPolynomial{1, -3, 1}) == NotSalemReason::DegreeTooSmall);
    CHECK(reason_of(IntPolynomial{2, 1, 1, 1, 1}) == NotSalemReason::NotReciprocal);
    // Phi_3 squared: the squarefree gate fires before the cyclotomic one
    CHECK(reason_of(IntPolynomial{1, 2, 3, 2, 1}) == NotSalemReason::RepeatedFactor);
    CHECK(reason_of(IntPolynomial{1, 1, 1, 1, 1}) == NotSalemReason::HasCyclotomicFactor);
    // x^4 + 3x^2 + 1: trace polynomial s^2 + 1 has no real roots
    CHECK(reason_of(IntPolynomial{1, 0, 3, 0, 1}) == NotSalemReason::ComplexTraceRoot);
    // mirrored Salem: tau < -1, no trace root beyond +2
    CHECK(reason_of(IntPolynomial{1, 1, -1, 1, 1}) == NotSalemReason::NoRootBeyondTwo);
    // trace polynomial (s-3)(s-4): two roots beyond 2
    CHECK(reason_of(inverse_trace_transform(IntPolynomial{12, -7, 1})) ==
          NotSalemReason::MultipleRootsBeyondTwo);
    // trace polynomial s^2 - 9: second root at -3, not a circle pair
    CHECK(reason_of(inverse_trace_transform(IntPolynomial{-9, 0, 1})) ==
          NotSalemReason::NoCircleConjugate);
}

TEST_CASE("certificate invariants: residual consistency and s0 linkage") {
    for (const IntPolynomial& p : {kLehmer, kDegree4}) {
        const SalemCertificate cert = certificate(certify_salem(p));
        const BigRat m = cert.tau_interval.midpoint();
        BigRat pm = cert.p(m);
        BigRat dm = cert.p.derivative()(m);
        if (pm < 0) pm = -pm;
        if (dm < 0) dm = -dm;
        CHECK(pm < dm * cert.tau_interval.width());
        // s0 interval contains tau + 1/tau in interval arithmetic
        CHECK(cert.s0_interval.lo <= cert.tau_interval.lo + 1 / cert.tau_interval.hi);
        CHECK(cert.s0_interval.hi >= cert.tau_interval.hi + 1 / cert.tau_interval.lo);
        // and encloses the unique root of Q beyond 2
        CHECK(sturm_count(cert.q, cert.s0_interval.lo, cert.s0_interval.hi) == 1);
    }
}

TEST_CASE("tau_approx: width and nesting") {
    const SalemCertificate cert = certificate(certify_salem(kLehmer));
    const RationalInterval a10 = tau_approx(cert, 10);
    const RationalInterval a40 = tau_approx(cert, 40);
    const RationalInterval a80 = tau_approx(cert, 80);
    CHECK(a10.width() <= BigRat(1, pow2(10)));
    CHECK(a40.width() <= BigRat(1, pow2(40)));
    CHECK(a80.width() <= BigRat(1, pow2(80)));
    CHECK(a10.contains(a40));
    CHECK(a40.contains(a80));
    CHECK(contains_oracle(a40, oracle::real_root_above_one(kLehmerC)));
}

TEST_CASE("geodesic length agrees with the oracle's 2 log tau") {
    const SalemCertificate lehmer = certificate(certify_salem(kLehmer));
    const RationalInterval geo = geodesic_length(lehmer, 53);
    CHECK(geo.width() <= BigRat(1, pow2(53)));
    const oracle::Real expected = 2 * log(oracle::real_root_above_one(kLehmerC));
    CHECK(contains_oracle(geo, expected));
    CHECK(std::abs(mid(geo) - 0.32471522401547628) < 1e-9);

    const SalemCertificate deg4 = certificate(certify_salem(kDegree4));
    const RationalInterval geo4 = geodesic_length(deg4, 53);
    CHECK(contains_oracle(geo4, 2 * log(oracle::real_root_above_one(kDegree4C))));
    CHECK(std::abs(mid(geo4) - 1.0870701449957391) < 1e-9);

    // twice-the-log scaling: compare against a single-log enclosure of
    // the same tau interval
    const RationalInterval tau = tau_approx(deg4, 60);
    const RationalInterval half{log_enclosure(tau.lo, 60).lo, log_enclosure(tau.hi, 60).hi};
    CHECK(geo4.lo <= half.lo * 2 + BigRat(1, pow2(50)));
    CHECK(geo4.hi >= half.hi * 2 - BigRat(1, pow2(50)));
}

TEST_CASE("enumerate: small boxes against exhaustive facts") {
    // (2, 1): Q(2) = 4 + 2a + b >= 1 for |a|,|b| <= 1, so no Salem exists
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) CHECK(4 + 2 * a + b > 0);
    CHECK(enumerate_salem(2, 1).empty());

    const auto e23 = enumerate_salem(2, 3);
    CHECK(e23.size() == 7);
    bool found = false;
    for (const auto& c : e23) found |= c.q == IntPolynomial{-3, -1, 1};
    CHECK(found);
    // lexicographic order of the coefficient vector
    for (size_t i = 1; i < e23.size(); ++i)
        CHECK(e23[i - 1].q.coefficients() < e23[i].q.coefficients());

    // every emitted certificate passes the oracle's root classification
    for (const auto& c : e23) {
        std::vector<long long> pc;
        for (const auto& x : c.p.coefficients()) pc.push_back(x.convert_to<long long>());
        CHECK(oracle::is_salem(pc));
    }
}

TEST_CASE("enumerate: height-2 quintic box is empty, Lehmer appears at height 5") {
    // trace_transform(Lehmer) has height 5, so the height-2 box cannot
    // contain it -- and in fact contains no Salem trace polynomial at all
    CHECK(enumerate_salem(5, 2).empty());
    const auto e55 = enumerate_salem(5, 5, 4);
    CHECK(e55.size() == 66);
    bool lehmer_found = false;
    for (const auto& c : e55) lehmer_found |= c.p == kLehmer;
    CHECK(lehmer_found);
}

TEST_CASE("enumerate: partitioned scan equals the serial scan") {
    const auto serial = enumerate_salem(3, 2, 1);
    const auto parallel = enumerate_salem(3, 2, 3);
    REQUIRE(serial.size() == parallel.size());
    CHECK(serial.size() == 2);
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].p == parallel[i].p);
        CHECK(serial[i].tau_interval == parallel[i].tau_interval);
    }
}

TEST_CASE("smallest_salem ground truth") {
    const auto best25 = smallest_salem(2, 5);
    REQUIRE(best25.has_value());
    CHECK(best25->q == IntPolynomial{-3, -1, 1});
    CHECK(contains_oracle(best25->tau_interval, oracle::real_root_above_one(kDegree4C)));

    CHECK_FALSE(smallest_salem(2, 1).has_value());

    const auto best55 = smallest_salem(5, 5, 4);
    REQUIRE(best55.has_value());
    CHECK(best55->p == kLehmer);
}

TEST_CASE("certificate JSON report round trip") {
    for (const IntPolynomial& p : {kDegree4, kLehmer}) {
        const CertificateReport rep = make_certificate_report(certificate(certify_salem(p)));
        const auto j = to_json(rep);
        const CertificateReport back = certificate_report_from_json(j);
        CHECK(back == rep);
        CHECK(to_json(back) == j);
    }
}
