#include "salemlab/spectral.hpp"

#include "salemlab/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace salemlab;
using Catch::Approx;

namespace {

WeightedGraph complete_graph(int n, double w = 1.0) {
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
    return WeightedGraph::make(n, std::move(edges));
}

std::vector<double> sorted_eigs(const Eigen::MatrixXd& m) {
    const Spectrum s = symmetric_spectrum(m);
    return {s.values.data(), s.values.data() + s.values.size()};
}

WeightedGraph random_graph(std::mt19937& gen, int n, double p = 0.5) {
    std::uniform_real_distribution<double> unif(0, 1);
    while (true) {
        std::vector<WeightedEdge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (unif(gen) < p) edges.push_back({u, v, 1.0});
        if (edges.empty()) continue;
        WeightedGraph g = WeightedGraph::make(n, std::move(edges), false);
        if (g.is_connected()) return g;
    }
}

}  // namespace

TEST_CASE("normalized laplacian closed-form spectra") {
    const auto c4 = sorted_eigs(normalized_laplacian(cycle_graph(4)));
    CHECK(c4[0] == Approx(0.0).margin(1e-12));
    CHECK(c4[1] == Approx(1.0).margin(1e-12));
    CHECK(c4[2] == Approx(1.0).margin(1e-12));
    CHECK(c4[3] == Approx(2.0).margin(1e-12));

    const auto k3 = sorted_eigs(normalized_laplacian(complete_graph(3)));
    CHECK(k3[0] == Approx(0.0).margin(1e-12));
    CHECK(k3[1] == Approx(1.5).margin(1e-12));
    CHECK(k3[2] == Approx(1.5).margin(1e-12));

    const WeightedGraph k2 = WeightedGraph::make(2, {{0, 1, 1.0}});
    const auto e2 = sorted_eigs(normalized_laplacian(k2));
    CHECK(e2[0] == Approx(0.0).margin(1e-12));
    CHECK(e2[1] == Approx(2.0).margin(1e-12));
}

TEST_CASE("lambda1 values and the disconnected flag") {
    CHECK(lambda1(cycle_graph(4)) == Approx(1.0).margin(1e-12));
    CHECK(lambda1(cycle_graph(8)) ==
          Approx(1 - std::cos(2 * std::numbers::pi / 8)).margin(1e-12));
    CHECK(lambda1(WeightedGraph::make(2, {{0, 1, 1.0}})) == Approx(2.0).margin(1e-12));
    const WeightedGraph split = WeightedGraph::make(4, {{0, 1, 1.0}, {2, 3, 1.0}}, false);
    CHECK_THROWS_AS(lambda1(split), DisconnectedError);
}

TEST_CASE("eigenvector of the zero eigenvalue is D^(1/2) 1") {
    std::mt19937 gen(5);
    const WeightedGraph g = random_graph(gen, 7);
    const Spectrum s = symmetric_spectrum(normalized_laplacian(g));
    CHECK(s.values(0) == Approx(0.0).margin(1e-10));
    CHECK(s.values(s.values.size() - 1) <= 2.0 + 1e-10);
    Eigen::VectorXd expect(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) expect(v) = std::sqrt(g.degree(v));
    expect.normalize();
    CHECK(std::abs(std::abs(expect.dot(s.vectors.col(0))) - 1.0) < 1e-9);
}

TEST_CASE("cheeger_exact closed forms") {
    const CheegerCut c4 = cheeger_exact(cycle_graph(4));
    CHECK(c4.ratio == Approx(0.5).margin(1e-15));

    const CheegerCut k2 = cheeger_exact(WeightedGraph::make(2, {{0, 1, 1.0}}));
    CHECK(k2.ratio == Approx(1.0).margin(1e-15));

    const WeightedGraph pinched = pinched_pair(3, 1, 0.01);
    const CheegerCut pc = cheeger_exact(pinched);
    CHECK(pc.ratio == Approx(0.01 / 6.01).epsilon(1e-12));
    // witness is one of the triangles
    int count = 0;
    for (int v = 0; v < 3; ++v)
        if (pc.side[static_cast<size_t>(v)] == pc.side[0]) ++count;
    CHECK(count == 3);

    std::vector<WeightedEdge> chain;
    for (int i = 0; i + 1 < 25; ++i) chain.push_back({i, i + 1, 1.0});
    CHECK_THROWS_AS(cheeger_exact(WeightedGraph::make(25, std::move(chain))), TooLargeError);
}

TEST_CASE("cheeger_sweep against the exact constant") {
    const WeightedGraph c4 = cycle_graph(4);
    const CheegerCut sweep = cheeger_sweep(c4, fiedler_vector(c4));
    CHECK(sweep.ratio == Approx(0.5).margin(1e-12));

    CHECK_THROWS_AS(cheeger_sweep(c4, std::vector<double>(4, 1.0)), DegenerateOrderError);

    const WeightedGraph pinched = pinched_pair(3, 1, 0.01);
    const double exact = cheeger_exact(pinched).ratio;
    const double upper = cheeger_sweep(pinched, fiedler_vector(pinched)).ratio;
    CHECK(upper >= exact - 1e-12);
    CHECK(upper == Approx(exact).margin(1e-12));  // Fiedler cut finds the pinch

    // sweep never beats the exhaustive optimum
    std::mt19937 gen(11);
    for (int t = 0; t < 40; ++t) {
        const WeightedGraph g = random_graph(gen, 4 + static_cast<int>(gen() % 5));
        CHECK(cheeger_sweep(g, fiedler_vector(g)).ratio >= cheeger_exact(g).ratio - 1e-12);
    }
}

TEST_CASE("sobolev ratio examples") {
    // indicator of two adjacent vertices on C4: cut 2, vol S 4
    const WeightedGraph c4 = cycle_graph(4);
    CHECK(sobolev_ratio(c4, {1, 1, 0, 0}) == Approx(0.5).margin(1e-15));

    const WeightedGraph c8 = cycle_graph(8);
    CHECK(sobolev_ratio(c8, fiedler_vector(c8)) >= cheeger_exact(c8).ratio - 1e-12);
    CHECK(cheeger_exact(c8).ratio == Approx(0.25).margin(1e-15));

    const WeightedGraph k2 = WeightedGraph::make(2, {{0, 1, 1.0}});
    CHECK(sobolev_ratio(k2, {1, -1}) == Approx(1.0).margin(1e-15));
    CHECK_THROWS_AS(sobolev_ratio(k2, {3, 3}), ConstantFunctionError);
}

TEST_CASE("sobolev ratio dominates the Cheeger constant") {
    std::mt19937 gen(21);
    std::normal_distribution<double> gauss(0, 1);
    for (int t = 0; t < 10; ++t) {
        const WeightedGraph g = random_graph(gen, 5 + static_cast<int>(gen() % 4));
        const CheegerCut exact = cheeger_exact(g);
        for (int k = 0; k < 1000; ++k) {
            std::vector<double> f(static_cast<size_t>(g.vertex_count()));
            for (auto& x : f) x = gauss(gen);
            CHECK(sobolev_ratio(g, f) >= exact.ratio - 1e-9);
        }
        // the exact witness indicator achieves h
        std::vector<double> ind(static_cast<size_t>(g.vertex_count()), 0.0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (exact.side[static_cast<size_t>(v)]) ind[static_cast<size_t>(v)] = 1.0;
        CHECK(sobolev_ratio(g, ind) == Approx(exact.ratio).margin(1e-12));
    }
}

TEST_CASE("discrete co-area identity") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> unif(0, 1);
    for (int t = 0; t < 50; ++t) {
        const WeightedGraph g = random_graph(gen, 6);
        std::vector<double> f(static_cast<size_t>(g.vertex_count()));
        for (auto& x : f) x = unif(gen);
        double grad1 = 0;
        for (const auto& e : g.edges())
            grad1 += e.w * std::abs(f[static_cast<size_t>(e.u)] - f[static_cast<size_t>(e.v)]);
        // integrate cut({f > t}) over t: piecewise constant between the
        // sorted distinct values of f
        std::vector<double> vals = f;
        std::sort(vals.begin(), vals.end());
        double integral = 0;
        for (size_t k = 0; k + 1 < vals.size(); ++k) {
            if (vals[k + 1] == vals[k]) continue;
            std::vector<bool> side(static_cast<size_t>(g.vertex_count()));
            for (int v = 0; v < g.vertex_count(); ++v)
                side[static_cast<size_t>(v)] = f[static_cast<size_t>(v)] > vals[k];
            integral += g.cut_weight(side) * (vals[k + 1] - vals[k]);
        }
        CHECK(grad1 == Approx(integral).margin(1e-10));
    }
}

TEST_CASE("cheeger constant is invariant under global weight scaling") {
    std::mt19937 gen(41);
    const WeightedGraph g = random_graph(gen, 7);
    std::vector<WeightedEdge> scaled = g.edges();
    for (auto& e : scaled) e.w *= 3.7;
    const WeightedGraph gs = WeightedGraph::make(g.vertex_count(), std::move(scaled));
    CHECK(cheeger_exact(gs).ratio == Approx(cheeger_exact(g).ratio).epsilon(1e-12));
}

TEST_CASE("generators") {
    const WeightedGraph c6 = cycle_graph(6);
    CHECK(c6.vertex_count() == 6);
    CHECK(c6.edge_count() == 6);
    CHECK(lambda1(c6) == Approx(0.5).margin(1e-12));

    const WeightedGraph t33 = torus_grid(3, 3);
    CHECK(t33.vertex_count() == 9);
    CHECK(t33.edge_count() == 18);
    CHECK(lambda1(t33) == Approx(0.75).margin(1e-12));

    // wraparound edges that coincide with direct ones are added once
    const WeightedGraph t22 = torus_grid(2, 2);
    CHECK(t22.vertex_count() == 4);
    CHECK(t22.edge_count() == 4);
    CHECK(lambda1(t22) == Approx(1.0).margin(1e-12));

    const WeightedGraph pinched = pinched_pair(3, 1, 0.01);
    CHECK(pinched.vertex_count() == 6);
    CHECK(pinched.edge_count() == 7);

    for (int m : {2, 3, 5}) {
        const WeightedGraph cover = cyclic_cover(cycle_graph(3), {0}, m);
        CHECK(cover.vertex_count() == 3 * m);
        CHECK(cover.edge_count() == 3 * m);
        CHECK(cover.is_connected());
        CHECK(lambda1(cover) == Approx(lambda1(cycle_graph(3 * m))).margin(1e-11));
    }

    CHECK_THROWS_AS(cycle_graph(2), std::invalid_argument);
    CHECK_THROWS_AS(pinched_pair(3, 4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_cover(cycle_graph(3), {7}, 2), std::invalid_argument);
}

TEST_CASE("spectral report invariants") {
    std::mt19937 gen(51);
    for (int t = 0; t < 20; ++t) {
        const WeightedGraph g = random_graph(gen, 5 + static_cast<int>(gen() % 4));
        const SpectralReport r = spectral_report(g);
        CHECK(r.lambda1 >= -1e-12);
        CHECK(r.lambda1 <= 2 + 1e-12);
        CHECK(r.eig_residual <= kResidualTolerance);
        REQUIRE(r.h_exact.has_value());
        CHECK(r.h_lower <= *r.h_exact + 1e-12);
        CHECK(*r.h_exact <= r.h_upper + 1e-12);
        CHECK(r.sobolev_best >= *r.h_exact - 1e-9);
        // Cheeger-Buser sandwich for the normalized laplacian
        const double h = *r.h_exact;
        CHECK(r.lambda1 >= h * h / 2 - 1e-12);
        CHECK(r.lambda1 <= 2 * h + 1e-12);
    }
}

TEST_CASE("dense eigensolver size limit") {
    std::vector<WeightedEdge> chain;
    for (int i = 0; i + 1 < 2049; ++i) chain.push_back({i, i + 1, 1.0});
    const WeightedGraph big = WeightedGraph::make(2049, std::move(chain));
    CHECK_THROWS_AS(normalized_laplacian(big), TooLargeError);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(WeightedGraph::make(3, {{0, 1, 1.0}, {1, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::make(3, {{0, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::make(3, {{0, 1, -2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::make(3, {{0, 5, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::make(3, {{0, 1, 1.0}}), DisconnectedError);
    CHECK_NOTHROW(WeightedGraph::make(3, {{0, 1, 1.0}}, false));
}
