#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "paramreport/errors.hpp"
#include "paramreport/vertex_set.hpp"

namespace paramreport {

using Edge = std::pair<int, int>;

/// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency.
class Graph {
public:
    Graph() = default;

    /// Builds a simple graph; self-loops and repeated edges are dropped.
    static Graph from_edges(int n, std::span<const Edge> edges) {
        Graph g;
        g.adj_.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw PreconditionError("edge endpoint out of range");
            if (u == v) continue;
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& list : g.adj_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            g.m_ += list.size();
        }
        g.m_ /= 2;
        return g;
    }
    static Graph from_edges(int n, std::initializer_list<Edge> edges) {
        std::vector<Edge> e(edges);
        return from_edges(n, std::span<const Edge>(e));
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t m() const { return m_; }
    bool empty() const { return adj_.empty(); }

    std::span<const int> neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(int u, int v) const {
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        int other = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), other);
    }

    /// Sorted edge list with u < v.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (int u = 0; u < n(); ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    VertexSet neighbor_set(int v) const { return VertexSet::of(adj_.size(), adj_[v]); }
    VertexSet closed_neighbor_set(int v) const {
        auto s = neighbor_set(v);
        s.insert(v);
        return s;
    }

    /// Subgraph induced by `vertices`; new id i corresponds to vertices[i].
    Graph induced(std::span<const int> vertices) const {
        std::vector<int> pos(adj_.size(), -1);
        for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
        Graph h;
        h.adj_.assign(vertices.size(), {});
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (int w : adj_[vertices[i]])
                if (pos[w] >= 0) h.adj_[i].push_back(pos[w]);
            std::sort(h.adj_[i].begin(), h.adj_[i].end());
            h.m_ += h.adj_[i].size();
        }
        h.m_ /= 2;
        return h;
    }
    Graph induced(const VertexSet& s) const {
        auto v = s.to_vector();
        return induced(std::span<const int>(v));
    }

    /// G - X.
    Graph without(const VertexSet& removed) const {
        std::vector<int> keep;
        for (int v = 0; v < n(); ++v)
            if (!removed.contains(v)) keep.push_back(v);
        return induced(std::span<const int>(keep));
    }

    Graph complement() const {
        std::vector<Edge> e;
        for (int u = 0; u < n(); ++u) {
            std::size_t k = 0;
            for (int v = u + 1; v < n(); ++v) {
                while (k < adj_[u].size() && adj_[u][k] < v) ++k;
                if (k < adj_[u].size() && adj_[u][k] == v) continue;
                e.emplace_back(u, v);
            }
        }
        return from_edges(n(), std::span<const Edge>(e));
    }

    bool is_clique(std::span<const int> vertices) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (!adjacent(vertices[i], vertices[j])) return false;
        return true;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<int>> adj_;
    std::size_t m_ = 0;
};

/// Named small graphs used by tests, examples and the quotient-lift module.
namespace make {

inline Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::span<const Edge>(e));
}
inline Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, std::span<const Edge>(e));
}
inline Graph complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, std::span<const Edge>(e));
}
inline Graph edgeless(int n) { return Graph::from_edges(n, std::span<const Edge>()); }
/// K_{a,b}: vertices 0..a-1 on one side.
inline Graph complete_bipartite(int a, int b) {
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph::from_edges(a + b, std::span<const Edge>(e));
}
/// Star K_{1,leaves} with centre 0.
inline Graph star(int leaves) { return complete_bipartite(1, leaves); }

/// Disjoint union, vertices of b shifted by a.n().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    auto e = a.edges();
    for (auto [u, v] : b.edges()) e.emplace_back(u + a.n(), v + a.n());
    return Graph::from_edges(a.n() + b.n(), std::span<const Edge>(e));
}

}  // namespace make

/// Connected components of G[alive], each sorted; components ordered by their
/// smallest vertex.
inline std::vector<std::vector<int>> components_within(const Graph& g, const VertexSet& alive) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (seen[s] || !alive.contains(s)) continue;
        std::vector<int> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w] && alive.contains(w)) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    return components_within(g, VertexSet::full(static_cast<std::size_t>(g.n())));
}

inline bool is_connected_within(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    return components_within(g, s).size() == 1;
}

/// Size of a largest component of G - removed (cc(G - X)).
inline int largest_component_size(const Graph& g, const VertexSet& removed) {
    auto alive = VertexSet::full(static_cast<std::size_t>(g.n())) - removed;
    std::size_t best = 0;
    for (auto& c : components_within(g, alive)) best = std::max(best, c.size());
    return static_cast<int>(best);
}

}  // namespace paramreport
