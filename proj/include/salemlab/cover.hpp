#pragma once

// Double covers from edge signings. Vertices are V x {0,1} with (u,i)
// encoded as u + i*n; a positive edge lifts to two within-sheet copies,
// a negative edge to the two sheet-crossing copies. The deck involution
// (u,i) -> (u,1-i) is a weight-preserving automorphism, and the cover
// is connected iff the signing has a cycle with sign product -1.

#include "salemlab/graph.hpp"

#include <stdexcept>
#include <vector>

namespace salemlab {

struct TrivialCoverError : std::invalid_argument {
    TrivialCoverError()
        : std::invalid_argument("signing is switching-trivial; double cover is disconnected") {}
};

/// The double cover of g defined by the signing. With
/// require_connected, a switching-trivial signing is rejected.
inline WeightedGraph double_cover(const WeightedGraph& g, const Signing& s,
                                  bool require_connected = false) {
    if (static_cast<int>(s.sigma.size()) != g.edge_count())
        throw std::invalid_argument("double_cover: signing size mismatch");
    if (require_connected && !s.nontrivial_cohomology(g)) throw TrivialCoverError();
    const int n = g.vertex_count();
    std::vector<WeightedEdge> edges;
    edges.reserve(2 * g.edges().size());
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[static_cast<size_t>(i)];
        if (s.sigma[static_cast<size_t>(i)] > 0) {
            edges.push_back({e.u, e.v, e.w});
            edges.push_back({e.u + n, e.v + n, e.w});
        } else {
            edges.push_back({e.u, e.v + n, e.w});
            edges.push_back({e.v, e.u + n, e.w});
        }
    }
    return WeightedGraph::make(2 * n, std::move(edges), /*require_connected=*/false);
}

/// The deck transformation of the double cover as a vertex permutation.
inline std::vector<int> deck_involution(const WeightedGraph& base) {
    const int n = base.vertex_count();
    std::vector<int> perm(static_cast<size_t>(2 * n));
    for (int u = 0; u < n; ++u) {
        perm[static_cast<size_t>(u)] = u + n;
        perm[static_cast<size_t>(u + n)] = u;
    }
    return perm;
}

/// Relabel vertices by a permutation (used to check deck invariance).
inline WeightedGraph relabel(const WeightedGraph& g, const std::vector<int>& perm) {
    std::vector<WeightedEdge> edges;
    edges.reserve(g.edges().size());
    for (const auto& e : g.edges())
        edges.push_back({perm[static_cast<size_t>(e.u)], perm[static_cast<size_t>(e.v)], e.w});
    return WeightedGraph::make(g.vertex_count(), std::move(edges), /*require_connected=*/false);
}

}  // namespace salemlab
