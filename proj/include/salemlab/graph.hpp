#pragma once

// Weighted graphs as discrete manifold models, +-1 edge signings
// defining double covers, and the model generators (cycles, torus
// grids, pinched pairs, cyclic covers).
//
// Text format: first line "n m", then m lines "u v w [s]" with 0-based
// vertices, positive real weight, optional sign +-1.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace salemlab {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

struct DisconnectedError : std::invalid_argument {
    DisconnectedError() : std::invalid_argument("graph is not connected") {}
};

/// Simple undirected graph with positive edge weights; vol(S) is the
/// sum of weighted degrees over S, cut(S) the crossing weight.
class WeightedGraph {
public:
    static WeightedGraph make(int n, std::vector<WeightedEdge> edges,
                              bool require_connected = true) {
        if (n <= 0) throw std::invalid_argument("WeightedGraph: need at least one vertex");
        std::set<std::pair<int, int>> seen;
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0 || e.v >= n) throw std::invalid_argument("WeightedGraph: vertex out of range");
            if (e.u == e.v) throw std::invalid_argument("WeightedGraph: loops not allowed");
            if (!(e.w > 0)) throw std::invalid_argument("WeightedGraph: weights must be positive");
            if (!seen.insert({e.u, e.v}).second)
                throw std::invalid_argument("WeightedGraph: duplicate edge");
        }
        std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        WeightedGraph g;
        g.n_ = n;
        g.edges_ = std::move(edges);
        g.degree_.assign(static_cast<size_t>(n), 0.0);
        for (const auto& e : g.edges_) {
            g.degree_[static_cast<size_t>(e.u)] += e.w;
            g.degree_[static_cast<size_t>(e.v)] += e.w;
        }
        if (require_connected && !g.is_connected()) throw DisconnectedError();
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    const std::vector<double>& degrees() const { return degree_; }
    double degree(int v) const { return degree_[static_cast<size_t>(v)]; }

    double volume() const {
        double s = 0;
        for (double d : degree_) s += d;
        return s;
    }
    double volume(const std::vector<bool>& side) const {
        double s = 0;
        for (int v = 0; v < n_; ++v)
            if (side[static_cast<size_t>(v)]) s += degree_[static_cast<size_t>(v)];
        return s;
    }
    double cut_weight(const std::vector<bool>& side) const {
        double s = 0;
        for (const auto& e : edges_)
            if (side[static_cast<size_t>(e.u)] != side[static_cast<size_t>(e.v)]) s += e.w;
        return s;
    }

    bool is_connected() const {
        if (n_ == 0) return false;
        std::vector<std::vector<int>> adj(static_cast<size_t>(n_));
        for (const auto& e : edges_) {
            adj[static_cast<size_t>(e.u)].push_back(e.v);
            adj[static_cast<size_t>(e.v)].push_back(e.u);
        }
        std::vector<bool> seen(static_cast<size_t>(n_), false);
        std::vector<int> stack{0};
        seen[0] = true;
        int found = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[static_cast<size_t>(u)]) {
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = true;
                    ++found;
                    stack.push_back(v);
                }
            }
        }
        return found == n_;
    }

private:
    int n_ = 0;
    std::vector<WeightedEdge> edges_;
    std::vector<double> degree_;
};

/// +-1 label per edge. A signing is switching-trivial ("balanced") iff
/// every cycle has sign product +1, detected with a spanning-tree
/// potential; the double cover is connected iff the signing is not.
struct Signing {
    std::vector<std::int8_t> sigma;

    bool nontrivial_cohomology(const WeightedGraph& g) const {
        if (static_cast<int>(sigma.size()) != g.edge_count())
            throw std::invalid_argument("Signing: size does not match edge count");
        const int n = g.vertex_count();
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(n));
        for (int i = 0; i < g.edge_count(); ++i) {
            const auto& e = g.edges()[static_cast<size_t>(i)];
            adj[static_cast<size_t>(e.u)].push_back({e.v, i});
            adj[static_cast<size_t>(e.v)].push_back({e.u, i});
        }
        std::vector<int> theta(static_cast<size_t>(n), 0);
        theta[0] = 1;
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, i] : adj[static_cast<size_t>(u)]) {
                if (theta[static_cast<size_t>(v)] == 0) {
                    theta[static_cast<size_t>(v)] = theta[static_cast<size_t>(u)] * sigma[static_cast<size_t>(i)];
                    stack.push_back(v);
                }
            }
        }
        for (int i = 0; i < g.edge_count(); ++i) {
            const auto& e = g.edges()[static_cast<size_t>(i)];
            if (theta[static_cast<size_t>(e.u)] * theta[static_cast<size_t>(e.v)] !=
                sigma[static_cast<size_t>(i)])
                return true;  // some cycle has product -1
        }
        return false;
    }
};

// ---- generators ----

inline WeightedGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
    return WeightedGraph::make(n, std::move(edges));
}

/// a x b grid with wraparound. A wrap edge that coincides with the
/// direct edge (dimension of size 2) is added once.
inline WeightedGraph torus_grid(int a, int b) {
    if (a < 2 || b < 2) throw std::invalid_argument("torus_grid: need a, b >= 2");
    std::set<std::pair<int, int>> seen;
    std::vector<WeightedEdge> edges;
    auto id = [b](int i, int j) { return i * b + j; };
    auto add = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        if (u != v && seen.insert({u, v}).second) edges.push_back({u, v, 1.0});
    };
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            add(id(i, j), id((i + 1) % a, j));
            add(id(i, j), id(i, (j + 1) % b));
        }
    return WeightedGraph::make(a * b, std::move(edges));
}

/// Two disjoint K_n's bridged by k edges of weight eps (vertex i of the
/// first copy to vertex i of the second, i < k <= n).
inline WeightedGraph pinched_pair(int n, int k, double eps) {
    if (n < 2 || k < 1 || k > n || !(eps > 0))
        throw std::invalid_argument("pinched_pair: need n >= 2, 1 <= k <= n, eps > 0");
    std::vector<WeightedEdge> edges;
    for (int off : {0, n})
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.push_back({off + i, off + j, 1.0});
    for (int i = 0; i < k; ++i) edges.push_back({i, n + i, eps});
    return WeightedGraph::make(2 * n, std::move(edges));
}

/// m-fold cover of g in which the designated edges (by index, oriented
/// u -> v with u < v) shift the layer by +1 mod m and all other edges
/// stay within their layer.
inline WeightedGraph cyclic_cover(const WeightedGraph& g, const std::vector<int>& shift_edges,
                                  int m) {
    if (m < 2) throw std::invalid_argument("cyclic_cover: need m >= 2");
    std::vector<bool> shifts(static_cast<size_t>(g.edge_count()), false);
    for (int i : shift_edges) {
        if (i < 0 || i >= g.edge_count())
            throw std::invalid_argument("cyclic_cover: edge index out of range");
        shifts[static_cast<size_t>(i)] = true;
    }
    const int n = g.vertex_count();
    std::vector<WeightedEdge> edges;
    for (int layer = 0; layer < m; ++layer) {
        for (int i = 0; i < g.edge_count(); ++i) {
            const auto& e = g.edges()[static_cast<size_t>(i)];
            const int to_layer = shifts[static_cast<size_t>(i)] ? (layer + 1) % m : layer;
            edges.push_back({e.u + layer * n, e.v + to_layer * n, e.w});
        }
    }
    return WeightedGraph::make(m * n, std::move(edges), /*require_connected=*/false);
}

// ---- text format ----

struct GraphFile {
    WeightedGraph graph;
    std::optional<Signing> signing;
};

inline GraphFile parse_graph(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("graph format: missing 'n m' header");
    std::vector<WeightedEdge> edges;
    std::vector<std::int8_t> signs;
    std::string line;
    std::getline(in, line);  // rest of header line
    int read = 0;
    while (read < m && std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        WeightedEdge e;
        if (!(ls >> e.u >> e.v >> e.w)) throw std::invalid_argument("graph format: bad edge line");
        int s;
        if (ls >> s) {
            if (s != 1 && s != -1) throw std::invalid_argument("graph format: sign must be +-1");
            signs.push_back(static_cast<std::int8_t>(s));
        }
        edges.push_back(e);
        ++read;
    }
    if (read != m) throw std::invalid_argument("graph format: fewer edge lines than declared");
    if (!signs.empty() && static_cast<int>(signs.size()) != m)
        throw std::invalid_argument("graph format: signs must be given on all edges or none");
    // make() keeps edges sorted by endpoints; sort signs along with the
    // edges here so indices agree afterwards.
    if (!signs.empty()) {
        std::vector<int> order(edges.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        for (auto& e : edges)
            if (e.u > e.v) std::swap(e.u, e.v);
        std::sort(order.begin(), order.end(), [&edges](int a, int b) {
            const auto& x = edges[static_cast<size_t>(a)];
            const auto& y = edges[static_cast<size_t>(b)];
            return std::pair(x.u, x.v) < std::pair(y.u, y.v);
        });
        std::vector<std::int8_t> sorted_signs(signs.size());
        for (size_t i = 0; i < order.size(); ++i)
            sorted_signs[i] = signs[static_cast<size_t>(order[i])];
        signs = std::move(sorted_signs);
    }
    GraphFile gf{WeightedGraph::make(n, std::move(edges), /*require_connected=*/false), std::nullopt};
    if (!signs.empty()) gf.signing = Signing{std::move(signs)};
    return gf;
}

inline void write_graph(std::ostream& out, const WeightedGraph& g,
                        const Signing* signing = nullptr) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    char buf[64];
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[static_cast<size_t>(i)];
        std::snprintf(buf, sizeof buf, "%.17g", e.w);
        out << e.u << ' ' << e.v << ' ' << buf;
        if (signing) out << ' ' << static_cast<int>(signing->sigma[static_cast<size_t>(i)]);
        out << '\n';
    }
}

}  // namespace salemlab
