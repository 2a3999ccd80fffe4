#pragma once

// Spectral side of the discrete model: normalized and signed
// Laplacians, the deterministic dense eigensolver contract, exact and
// sweep-cut Cheeger constants, and the L1 Sobolev ratio whose minimizer
// is a degree-weighted median.

#include "salemlab/graph.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace salemlab {

struct TooLargeError : std::invalid_argument {
    explicit TooLargeError(const std::string& what) : std::invalid_argument(what) {}
};
struct DegenerateOrderError : std::invalid_argument {
    DegenerateOrderError() : std::invalid_argument("order vector is constant") {}
};
struct ConstantFunctionError : std::invalid_argument {
    ConstantFunctionError() : std::invalid_argument("function is constant") {}
};

inline constexpr int kMaxDenseVertices = 2048;
inline constexpr double kResidualTolerance = 1e-10;

/// L = I - D^(-1/2) W D^(-1/2); eigenvalues in [0, 2], smallest 0 with
/// eigenvector D^(1/2) 1 when connected.
inline Eigen::MatrixXd normalized_laplacian(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n > kMaxDenseVertices) throw TooLargeError("normalized_laplacian: beyond dense size limit");
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    for (const auto& e : g.edges()) {
        const double x = e.w / std::sqrt(g.degree(e.u) * g.degree(e.v));
        L(e.u, e.v) -= x;
        L(e.v, e.u) -= x;
    }
    return L;
}

/// Signed variant: W^sigma(u,v) = sigma(uv) * w(uv), same degrees. Odd
/// functions on the double cover are exactly the eigenfunctions of this
/// operator, so spec(cover) = spec(L) + spec(L^sigma) as multisets.
inline Eigen::MatrixXd signed_laplacian(const WeightedGraph& g, const Signing& s) {
    if (static_cast<int>(s.sigma.size()) != g.edge_count())
        throw std::invalid_argument("signed_laplacian: signing size mismatch");
    const int n = g.vertex_count();
    if (n > kMaxDenseVertices) throw TooLargeError("signed_laplacian: beyond dense size limit");
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[static_cast<size_t>(i)];
        const double x = s.sigma[static_cast<size_t>(i)] * e.w / std::sqrt(g.degree(e.u) * g.degree(e.v));
        L(e.u, e.v) -= x;
        L(e.v, e.u) -= x;
    }
    return L;
}

struct Spectrum {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, sign-normalized
    double max_residual = 0;  // max over pairs of ||Lx - vx|| / ||L||
};

/// Deterministic dense symmetric solve with the residual contract
/// ||Lx - vx|| <= 1e-10 ||L|| enforced for every returned pair.
/// Eigenvectors are normalized so the first coordinate of magnitude
/// > 1e-12 is positive, which pins the choice within eigenvalue ties.
inline Spectrum symmetric_spectrum(const Eigen::MatrixXd& L) {
    if (L.rows() > kMaxDenseVertices) throw TooLargeError("symmetric_spectrum: beyond dense size limit");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric_spectrum: eigensolver failed");
    Spectrum s;
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    const double norm = std::max(std::abs(s.values(0)), std::abs(s.values(s.values.size() - 1)));
    for (int k = 0; k < s.values.size(); ++k) {
        for (int i = 0; i < s.vectors.rows(); ++i) {
            if (std::abs(s.vectors(i, k)) > 1e-12) {
                if (s.vectors(i, k) < 0) s.vectors.col(k) = -s.vectors.col(k);
                break;
            }
        }
        const double res = (L * s.vectors.col(k) - s.values(k) * s.vectors.col(k)).norm();
        s.max_residual = std::max(s.max_residual, norm > 0 ? res / norm : res);
    }
    if (s.max_residual > kResidualTolerance)
        throw std::runtime_error("symmetric_spectrum: residual contract violated");
    return s;
}

/// Second-smallest normalized-Laplacian eigenvalue. Flags disconnected
/// graphs instead of silently returning 0.
inline double lambda1(const WeightedGraph& g) {
    if (!g.is_connected()) throw DisconnectedError();
    if (g.vertex_count() < 2) throw std::invalid_argument("lambda1: need at least two vertices");
    return symmetric_spectrum(normalized_laplacian(g)).values(1);
}

/// Fiedler-style order vector: the function D^(-1/2) y for the second
/// eigenvector y of L.
inline std::vector<double> fiedler_vector(const WeightedGraph& g) {
    if (!g.is_connected()) throw DisconnectedError();
    const Spectrum s = symmetric_spectrum(normalized_laplacian(g));
    std::vector<double> f(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) f[static_cast<size_t>(v)] = s.vectors(v, 1) / std::sqrt(g.degree(v));
    return f;
}

struct CheegerCut {
    double ratio = 0;
    std::vector<bool> side;  // witness subset S (true = in S)
};

/// Exact Cheeger constant h = min cut(S)/min(vol S, vol S^c) by Gray-code
/// enumeration of subsets containing vertex 0. Exponential; limited to
/// 24 vertices.
inline CheegerCut cheeger_exact(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n > 24) throw TooLargeError("cheeger_exact: exhaustive search limited to 24 vertices");
    if (n < 2) throw std::invalid_argument("cheeger_exact: need at least two vertices");
    if (!g.is_connected()) throw DisconnectedError();
    const double total = g.volume();
    // incremental cut updates need incident weights per vertex
    std::vector<std::vector<std::pair<int, double>>> inc(static_cast<size_t>(n));
    for (const auto& e : g.edges()) {
        inc[static_cast<size_t>(e.u)].push_back({e.v, e.w});
        inc[static_cast<size_t>(e.v)].push_back({e.u, e.w});
    }
    std::vector<bool> side(static_cast<size_t>(n), false);
    side[0] = true;
    double cut = 0;
    for (auto [v, w] : inc[0]) {
        (void)v;
        cut += w;
    }
    double vol = g.degree(0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> best_side = side;
    auto consider = [&] {
        const double other = total - vol;
        if (other <= 0) return;  // S = V
        const double r = cut / std::min(vol, other);
        if (r < best) {
            best = r;
            best_side = side;
        }
    };
    consider();
    const std::uint64_t count = 1ull << (n - 1);
    for (std::uint64_t k = 1; k < count; ++k) {
        // Gray code: flip vertex (ctz(k) + 1)
        const int v = __builtin_ctzll(k) + 1;
        const bool entering = !side[static_cast<size_t>(v)];
        side[static_cast<size_t>(v)] = entering;
        for (auto [u, w] : inc[static_cast<size_t>(v)]) cut += side[static_cast<size_t>(u)] == entering ? -w : w;
        vol += entering ? g.degree(v) : -g.degree(v);
        consider();
    }
    return {best, best_side};
}

/// Minimum ratio over the n-1 threshold cuts of the order vector
/// (ties broken by vertex index). Upper bound for cheeger_exact.
inline CheegerCut cheeger_sweep(const WeightedGraph& g, const std::vector<double>& order) {
    const int n = g.vertex_count();
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("cheeger_sweep: order vector size mismatch");
    const auto [mn, mx] = std::minmax_element(order.begin(), order.end());
    if (*mn == *mx) throw DegenerateOrderError();
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&order](int a, int b) {
        return std::pair(order[static_cast<size_t>(a)], a) < std::pair(order[static_cast<size_t>(b)], b);
    });
    std::vector<std::vector<std::pair<int, double>>> inc(static_cast<size_t>(n));
    for (const auto& e : g.edges()) {
        inc[static_cast<size_t>(e.u)].push_back({e.v, e.w});
        inc[static_cast<size_t>(e.v)].push_back({e.u, e.w});
    }
    const double total = g.volume();
    std::vector<bool> side(static_cast<size_t>(n), false);
    double cut = 0, vol = 0;
    double best = std::numeric_limits<double>::infinity();
    int best_prefix = 0;
    for (int k = 0; k < n - 1; ++k) {
        const int v = perm[static_cast<size_t>(k)];
        side[static_cast<size_t>(v)] = true;
        for (auto [u, w] : inc[static_cast<size_t>(v)]) cut += side[static_cast<size_t>(u)] ? -w : w;
        vol += g.degree(v);
        const double r = cut / std::min(vol, total - vol);
        if (r < best) {
            best = r;
            best_prefix = k + 1;
        }
    }
    std::vector<bool> witness(static_cast<size_t>(n), false);
    for (int k = 0; k < best_prefix; ++k) witness[static_cast<size_t>(perm[static_cast<size_t>(k)])] = true;
    return {best, witness};
}

/// ||grad f||_1 / min_alpha ||f - alpha||_1 with edge-weighted gradient
/// and degree-weighted L1 norm; the minimizing alpha is a
/// degree-weighted median of f.
inline double sobolev_ratio(const WeightedGraph& g, const std::vector<double>& f) {
    const int n = g.vertex_count();
    if (static_cast<int>(f.size()) != n)
        throw std::invalid_argument("sobolev_ratio: function size mismatch");
    double grad1 = 0;
    for (const auto& e : g.edges()) grad1 += e.w * std::abs(f[static_cast<size_t>(e.u)] - f[static_cast<size_t>(e.v)]);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&f](int a, int b) { return f[static_cast<size_t>(a)] < f[static_cast<size_t>(b)]; });
    const double half = g.volume() / 2;
    double acc = 0;
    double alpha = f[static_cast<size_t>(perm.back())];
    for (int k = 0; k < n; ++k) {
        acc += g.degree(perm[static_cast<size_t>(k)]);
        if (acc >= half) {
            alpha = f[static_cast<size_t>(perm[static_cast<size_t>(k)])];
            break;
        }
    }
    double denom = 0;
    for (int v = 0; v < n; ++v) denom += g.degree(v) * std::abs(f[static_cast<size_t>(v)] - alpha);
    if (denom == 0) throw ConstantFunctionError();
    return grad1 / denom;
}

struct SpectralReport {
    double lambda1 = 0;
    double h_lower = 0;             // lambda1 / 2, from lambda1 <= 2h
    double h_upper = 0;             // sweep cut of the Fiedler vector
    std::optional<double> h_exact;  // exhaustive, when <= 24 vertices
    double sobolev_best = 0;
    double eig_residual = 0;
};

inline nlohmann::ordered_json to_json(const SpectralReport& r) {
    nlohmann::ordered_json j;
    j["lambda1"] = r.lambda1;
    j["h_lower"] = r.h_lower;
    j["h_upper"] = r.h_upper;
    j["h_exact"] = r.h_exact ? nlohmann::ordered_json(*r.h_exact) : nlohmann::ordered_json(nullptr);
    j["sobolev_best"] = r.sobolev_best;
    j["eig_residual"] = r.eig_residual;
    return j;
}

inline SpectralReport spectral_report_from_json(const nlohmann::json& j) {
    SpectralReport r;
    r.lambda1 = j.at("lambda1").get<double>();
    r.h_lower = j.at("h_lower").get<double>();
    r.h_upper = j.at("h_upper").get<double>();
    if (!j.at("h_exact").is_null()) r.h_exact = j.at("h_exact").get<double>();
    r.sobolev_best = j.at("sobolev_best").get<double>();
    r.eig_residual = j.at("eig_residual").get<double>();
    return r;
}

inline bool operator==(const SpectralReport& a, const SpectralReport& b) {
    return a.lambda1 == b.lambda1 && a.h_lower == b.h_lower && a.h_upper == b.h_upper &&
           a.h_exact == b.h_exact && a.sobolev_best == b.sobolev_best &&
           a.eig_residual == b.eig_residual;
}

inline SpectralReport spectral_report(const WeightedGraph& g) {
    if (!g.is_connected()) throw DisconnectedError();
    const Spectrum s = symmetric_spectrum(normalized_laplacian(g));
    SpectralReport r;
    r.lambda1 = s.values(1);
    r.eig_residual = s.max_residual;
    r.h_lower = r.lambda1 / 2;
    std::vector<double> fied = fiedler_vector(g);
    const CheegerCut sweep = cheeger_sweep(g, fied);
    r.h_upper = sweep.ratio;
    r.sobolev_best = sobolev_ratio(g, fied);
    if (g.vertex_count() <= 24) {
        const CheegerCut exact = cheeger_exact(g);
        r.h_exact = exact.ratio;
        std::vector<double> indicator(static_cast<size_t>(g.vertex_count()), 0.0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (exact.side[static_cast<size_t>(v)]) indicator[static_cast<size_t>(v)] = 1.0;
        r.sobolev_best = std::min(r.sobolev_best, sobolev_ratio(g, indicator));
    }
    return r;
}

}  // namespace salemlab
