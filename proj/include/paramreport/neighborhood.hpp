#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "paramreport/graph.hpp"

namespace paramreport {

struct TwinPartition {
    std::vector<std::vector<int>> classes;  ///< sorted, ordered by smallest member
    std::vector<int> class_of;

    int size() const { return static_cast<int>(classes.size()); }
};

/// Maximal twin classes. A class of size >= 2 consists either of pairwise
/// non-adjacent vertices with equal N(v) or of a clique with equal N[v].
inline TwinPartition twin_classes(const Graph& g) {
    const int n = g.n();
    std::map<std::vector<int>, std::vector<int>> open, closed;
    for (int v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        open[std::vector<int>(nb.begin(), nb.end())].push_back(v);
    }
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    TwinPartition tp;
    for (auto& [key, members] : open)
        if (members.size() >= 2) {
            for (int v : members) placed[v] = 1;
            tp.classes.push_back(members);
        }
    for (int v = 0; v < n; ++v) {
        if (placed[v]) continue;
        auto nb = g.neighbors(v);
        std::vector<int> key(nb.begin(), nb.end());
        key.insert(std::lower_bound(key.begin(), key.end(), v), v);
        closed[key].push_back(v);
    }
    for (auto& [key, members] : closed) tp.classes.push_back(members);
    std::sort(tp.classes.begin(), tp.classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    tp.class_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < tp.size(); ++i)
        for (int v : tp.classes[i]) tp.class_of[v] = i;
    return tp;
}

inline int neighborhood_diversity(const Graph& g) { return twin_classes(g).size(); }

/// G_nd: the subgraph induced by the smallest vertex of every twin class.
/// Vertex i of the result stands for class i.
inline Graph twin_quotient(const Graph& g, const TwinPartition& tp) {
    std::vector<int> reps;
    for (auto& c : tp.classes) reps.push_back(c.front());
    return g.induced(std::span<const int>(reps));
}
inline Graph twin_quotient(const Graph& g) { return twin_quotient(g, twin_classes(g)); }

inline constexpr const char* kDilworthDefinition = "vicinal preorder: u <= w iff N(u) is a subset of N[w]";

/// u <= w in the vicinal preorder.
inline bool vicinal_leq(const Graph& g, int u, int w) {
    if (u == w) return true;
    auto a = g.neighbors(u);
    auto b = g.neighbors(w);
    std::size_t j = 0;
    for (int x : a) {
        if (x == w) continue;
        while (j < b.size() && b[j] < x) ++j;
        if (j == b.size() || b[j] != x) return false;
    }
    return true;
}

namespace detail {

inline bool kuhn_augment(int a, const std::vector<std::vector<int>>& adj, std::vector<int>& match_right,
                         std::vector<char>& seen) {
    for (int b : adj[a]) {
        if (seen[b]) continue;
        seen[b] = 1;
        if (match_right[b] < 0 || kuhn_augment(match_right[b], adj, match_right, seen)) {
            match_right[b] = a;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Width of the vicinal preorder: equivalence classes minus a maximum matching
/// on the strict order between classes.
inline int dilworth_number(const Graph& g) {
    const int n = g.n();
    if (n == 0) return 0;
    // Comparable pairs: w must lie in N[a] for every a in N(u), so candidates
    // come from the closed neighbourhoods of one neighbour.
    std::vector<std::vector<int>> up(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        if (g.degree(u) == 0) {
            for (int w = 0; w < n; ++w)
                if (w != u) up[u].push_back(w);
            continue;
        }
        int a = g.neighbors(u).front();
        std::vector<int> cand(g.neighbors(a).begin(), g.neighbors(a).end());
        cand.push_back(a);
        for (int w : cand)
            if (w != u && vicinal_leq(g, u, w)) up[u].push_back(w);
    }
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    int classes = 0;
    for (int u = 0; u < n; ++u) {
        if (cls[u] >= 0) continue;
        cls[u] = classes;
        for (int w : up[u])
            if (cls[w] < 0 && vicinal_leq(g, w, u)) cls[w] = classes;
        ++classes;
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(classes));
    for (int u = 0; u < n; ++u)
        for (int w : up[u])
            if (cls[w] != cls[u]) adj[cls[u]].push_back(cls[w]);
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    std::vector<int> match_right(static_cast<std::size_t>(classes), -1);
    int matching = 0;
    for (int a = 0; a < classes; ++a) {
        std::vector<char> seen(static_cast<std::size_t>(classes), 0);
        if (detail::kuhn_augment(a, adj, match_right, seen)) ++matching;
    }
    return classes - matching;
}

}  // namespace paramreport
