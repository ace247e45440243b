#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "paramreport/graph.hpp"

namespace paramreport {

inline int max_degree(const Graph& g) {
    int d = 0;
    for (int v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
    return d;
}

inline int h_index(const Graph& g) {
    std::vector<int> deg;
    for (int v = 0; v < g.n(); ++v) deg.push_back(g.degree(v));
    std::sort(deg.rbegin(), deg.rend());
    int h = 0;
    while (h < static_cast<int>(deg.size()) && deg[h] >= h + 1) ++h;
    return h;
}

struct Degeneracy {
    int value = 0;
    std::vector<int> order;  ///< peeling order, first removed first
};

/// Repeated minimum-degree removal, smallest id first among ties.
inline Degeneracy degeneracy(const Graph& g) {
    Degeneracy out;
    std::vector<int> deg(static_cast<std::size_t>(g.n()));
    std::set<std::pair<int, int>> queue;
    for (int v = 0; v < g.n(); ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], v);
    }
    std::vector<char> gone(static_cast<std::size_t>(g.n()), 0);
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        out.value = std::max(out.value, d);
        out.order.push_back(v);
        gone[v] = 1;
        for (int w : g.neighbors(v)) {
            if (gone[w]) continue;
            queue.erase({deg[w], w});
            queue.emplace(--deg[w], w);
        }
    }
    return out;
}

/// Vertices surviving iterated removal of degree < k vertices.
inline std::vector<int> k_core(const Graph& g, int k) {
    std::vector<int> deg(static_cast<std::size_t>(g.n()));
    std::vector<char> gone(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> stack;
    for (int v = 0; v < g.n(); ++v) {
        deg[v] = g.degree(v);
        if (deg[v] < k) {
            gone[v] = 1;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (!gone[w] && --deg[w] < k) {
                gone[w] = 1;
                stack.push_back(w);
            }
    }
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (!gone[v]) out.push_back(v);
    return out;
}

inline int k_core_size(const Graph& g, int k) { return static_cast<int>(k_core(g, k).size()); }

namespace detail {

/// cl(v) for every alive v, computed inside G[alive].
inline std::vector<int> closure_values(const Graph& g, const std::vector<char>& alive) {
    const int n = g.n();
    std::vector<int> cl(static_cast<std::size_t>(n), 0), common(static_cast<std::size_t>(n), 0);
    std::vector<int> touched;
    std::vector<char> nbr(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (int w : g.neighbors(v)) nbr[w] = 1;
        for (int w : g.neighbors(v)) {
            if (!alive[w]) continue;
            for (int u : g.neighbors(w)) {
                if (!alive[u] || u == v) continue;
                if (common[u]++ == 0) touched.push_back(u);
            }
        }
        int best = 0;
        for (int u : touched) {
            if (!nbr[u]) best = std::max(best, common[u]);
            common[u] = 0;
        }
        touched.clear();
        for (int w : g.neighbors(v)) nbr[w] = 0;
        cl[v] = best;
    }
    return cl;
}

/// Does iterated removal of vertices with cl < gamma empty the graph?
inline bool weakly_closed(const Graph& g, int gamma) {
    std::vector<char> alive(static_cast<std::size_t>(g.n()), 1);
    int left = g.n();
    while (left > 0) {
        auto cl = closure_values(g, alive);
        int removed = 0;
        for (int v = 0; v < g.n(); ++v)
            if (alive[v] && cl[v] < gamma) {
                alive[v] = 0;
                ++removed;
            }
        if (removed == 0) return false;
        left -= removed;
    }
    return true;
}

}  // namespace detail

/// Closure number of a single vertex inside G.
inline int vertex_closure(const Graph& g, int v) {
    std::vector<char> alive(static_cast<std::size_t>(g.n()), 1);
    return detail::closure_values(g, alive)[v];
}

inline int closure_number(const Graph& g) {
    if (g.n() == 0) return 0;
    std::vector<char> alive(static_cast<std::size_t>(g.n()), 1);
    auto cl = detail::closure_values(g, alive);
    return 1 + *std::max_element(cl.begin(), cl.end());
}

inline int weak_closure_number(const Graph& g) {
    if (g.n() == 0) return 0;
    int lo = 1, hi = std::min(degeneracy(g).value + 1, closure_number(g));
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (detail::weakly_closed(g, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

struct DegreeReport {
    int max_degree = 0;
    int h_index = 0;
    int degeneracy = 0;
    int core2 = 0;
    int core3 = 0;
    int closure = 0;
    int weak_closure = 0;
};

inline DegreeReport degree_report(const Graph& g) {
    return {max_degree(g), h_index(g),         degeneracy(g).value,   k_core_size(g, 2),
            k_core_size(g, 3), closure_number(g), weak_closure_number(g)};
}

}  // namespace paramreport
