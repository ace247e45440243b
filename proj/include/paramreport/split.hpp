#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/errors.hpp"
#include "paramreport/graph.hpp"

namespace paramreport {

struct Split {
    std::vector<int> v1;  ///< sorted
    std::vector<int> v2;  ///< sorted
};

/// Whether (side, V - side) is a split: both sides have >= 2 vertices and the
/// crossing edges form a complete bipartite graph between the frontiers.
inline bool is_split(const Graph& g, const VertexSet& side) {
    const int n = g.n();
    int a = static_cast<int>(side.size());
    if (a < 2 || n - a < 2) return false;
    std::vector<int> f1, f2;
    for (int v = 0; v < n; ++v) {
        bool crosses = false;
        for (int w : g.neighbors(v))
            if (side.contains(w) != side.contains(v)) {
                crosses = true;
                break;
            }
        if (crosses) (side.contains(v) ? f1 : f2).push_back(v);
    }
    for (int x : f1)
        for (int y : f2)
            if (!g.adjacent(x, y)) return false;
    return true;
}

namespace detail {

/// Least S containing the seeds, avoiding u, such that every outside vertex
/// other than u sees either nothing of S or exactly N(u) ∩ S. Returns S, or
/// an empty vector once |S| exceeds `cap`.
inline std::vector<int> split_closure(const Graph& g, int u, const std::vector<int>& seeds, int cap) {
    const int n = g.n();
    std::vector<char> in(static_cast<std::size_t>(n), 0), nu(static_cast<std::size_t>(n), 0);
    std::vector<int> cnt(static_cast<std::size_t>(n), 0), cu(static_cast<std::size_t>(n), 0);
    for (int w : g.neighbors(u)) nu[w] = 1;
    std::vector<int> s, pending;
    std::vector<char> queued(static_cast<std::size_t>(n), 0);
    int a = 0;
    auto violates = [&](int w) { return cnt[w] > 0 && !(cnt[w] == a && cu[w] == a); };
    auto add = [&](int x) {
        in[x] = 1;
        s.push_back(x);
        if (nu[x]) ++a;
        for (int y : g.neighbors(x)) {
            ++cnt[y];
            if (nu[x]) ++cu[y];
        }
    };
    auto rescan = [&](bool all, int x) {
        if (all) {
            for (int w = 0; w < n; ++w)
                if (!in[w] && w != u && !queued[w] && violates(w)) {
                    queued[w] = 1;
                    pending.push_back(w);
                }
        } else {
            for (int w : g.neighbors(x))
                if (!in[w] && w != u && !queued[w] && violates(w)) {
                    queued[w] = 1;
                    pending.push_back(w);
                }
        }
    };
    for (int x : seeds)
        if (!in[x]) add(x);
    rescan(true, -1);
    while (!pending.empty()) {
        int w = pending.back();
        pending.pop_back();
        queued[w] = 0;
        if (in[w] || !violates(w)) continue;
        add(w);
        if (static_cast<int>(s.size()) > cap) return {};
        rescan(nu[w] != 0, w);
    }
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace detail

/// A split (V1, V2) with u in V1 and v in V2, if one exists.
inline std::optional<Split> find_split_crossing(const Graph& g, int u, int v) {
    const int n = g.n();
    if (n < 4) throw PreconditionError("a split needs at least 4 vertices");
    if (!g.adjacent(u, v)) throw PreconditionError("{u,v} is not an edge");
    auto accept = [&](const std::vector<int>& s) -> std::optional<Split> {
        int k = static_cast<int>(s.size());
        if (k < 2 || k > n - 2) return std::nullopt;
        Split sp;
        sp.v2 = s;
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int x : s) in[x] = 1;
        for (int x = 0; x < n; ++x)
            if (!in[x]) sp.v1.push_back(x);
        return sp;
    };
    if (auto sp = accept(detail::split_closure(g, u, {v}, n - 2))) return sp;
    for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        if (auto sp = accept(detail::split_closure(g, u, {v, w}, n - 2))) return sp;
    }
    return std::nullopt;
}

/// Pieces are graphs over labels: labels < n are original vertices, larger
/// labels are markers. A marker occurs in exactly two pieces.
struct SplitPiece {
    Graph graph;
    std::vector<int> labels;
};

struct SplitDecomposition {
    int n = 0;
    std::vector<SplitPiece> pieces;
    std::vector<std::pair<int, int>> tree_edges;  ///< piece indices sharing a marker
    std::vector<int> edge_marker;                 ///< marker label per tree edge
    bool complete = true;                         ///< false if the budget ran out
};

namespace detail {

struct SplitBuilder {
    const Budget& budget;
    SplitDecomposition sd;
    int next_marker;

    void decompose(Graph h, std::vector<int> labels, std::set<std::pair<int, int>> skip,
                   std::vector<std::pair<int, int>>& marker_owner) {
        const int k = h.n();
        if (k >= 4 && sd.complete) {
            for (auto [a, b] : h.edges()) {
                std::pair<int, int> key{std::min(labels[a], labels[b]), std::max(labels[a], labels[b])};
                bool is_marker_edge = labels[a] >= sd.n || labels[b] >= sd.n;
                if (!is_marker_edge && skip.count(key)) continue;
                if (budget.expired()) {
                    sd.complete = false;
                    break;
                }
                auto sp = find_split_crossing(h, a, b);
                if (!sp) {
                    skip.insert(key);
                    continue;
                }
                int marker = next_marker++;
                auto sides = std::array<std::vector<int>*, 2>{&sp->v1, &sp->v2};
                std::vector<char> in1(static_cast<std::size_t>(k), 0);
                for (int x : sp->v1) in1[x] = 1;
                for (auto* side : sides) {
                    std::vector<int> part = *side;
                    Graph sub = h.induced(std::span<const int>(part));
                    std::vector<Edge> e = sub.edges();
                    int mid = static_cast<int>(part.size());
                    for (int i = 0; i < mid; ++i) {
                        bool frontier = false;
                        for (int w : h.neighbors(part[i]))
                            if (in1[w] != in1[part[i]]) frontier = true;
                        if (frontier) e.emplace_back(i, mid);
                    }
                    std::vector<int> sub_labels;
                    for (int x : part) sub_labels.push_back(labels[x]);
                    sub_labels.push_back(marker);
                    std::set<std::pair<int, int>> sub_skip;
                    for (auto [p, q] : sub.edges()) {
                        std::pair<int, int> kk{std::min(sub_labels[p], sub_labels[q]),
                                               std::max(sub_labels[p], sub_labels[q])};
                        if (skip.count(kk)) sub_skip.insert(kk);
                    }
                    decompose(Graph::from_edges(mid + 1, std::span<const Edge>(e)), std::move(sub_labels),
                              std::move(sub_skip), marker_owner);
                }
                return;
            }
        }
        int idx = static_cast<int>(sd.pieces.size());
        for (int lab : labels)
            if (lab >= sd.n) marker_owner.emplace_back(lab, idx);
        sd.pieces.push_back({std::move(h), std::move(labels)});
    }
};

}  // namespace detail

/// Total split decomposition of each connected component (pieces are prime).
inline SplitDecomposition split_decomposition(const Graph& g, const Budget& budget = Budget()) {
    detail::SplitBuilder b{budget, {}, g.n()};
    b.sd.n = g.n();
    std::vector<std::pair<int, int>> owner;
    for (auto& comp : connected_components(g)) {
        Graph h = g.induced(std::span<const int>(comp));
        b.decompose(std::move(h), comp, {}, owner);
    }
    std::sort(owner.begin(), owner.end());
    for (std::size_t i = 0; i + 1 < owner.size(); i += 2) {
        b.sd.tree_edges.emplace_back(owner[i].second, owner[i + 1].second);
        b.sd.edge_marker.push_back(owner[i].first);
    }
    return b.sd;
}

/// max(min(n,3), largest piece); pieces of <= 3 vertices are prime, and a
/// disconnected graph on >= 4 vertices always has a 3-vertex piece.
inline int split_width(const SplitDecomposition& sd) {
    int w = std::min(sd.n, 3);
    for (auto& p : sd.pieces) w = std::max(w, p.graph.n());
    return w;
}

inline int split_width(const Graph& g, const Budget& budget = Budget()) {
    return split_width(split_decomposition(g, budget));
}

/// Glues pieces back along their shared markers. Each marker has one copy
/// per piece; gluing joins the neighbours of the two copies.
inline Graph recompose(const SplitDecomposition& sd) {
    const int n = sd.n;
    std::map<std::pair<int, int>, int> copy_of;  // (piece, marker) -> node id
    int next = n;
    for (std::size_t t = 0; t < sd.tree_edges.size(); ++t) {
        copy_of[{sd.tree_edges[t].first, sd.edge_marker[t]}] = next++;
        copy_of[{sd.tree_edges[t].second, sd.edge_marker[t]}] = next++;
    }
    std::vector<std::set<int>> adj(static_cast<std::size_t>(next));
    for (int p = 0; p < static_cast<int>(sd.pieces.size()); ++p) {
        const auto& pc = sd.pieces[p];
        auto id = [&](int i) { return pc.labels[i] < n ? pc.labels[i] : copy_of.at({p, pc.labels[i]}); };
        for (auto [a, b] : pc.graph.edges()) {
            adj[id(a)].insert(id(b));
            adj[id(b)].insert(id(a));
        }
    }
    for (std::size_t t = 0; t < sd.tree_edges.size(); ++t) {
        int x = copy_of[{sd.tree_edges[t].first, sd.edge_marker[t]}];
        int y = copy_of[{sd.tree_edges[t].second, sd.edge_marker[t]}];
        auto nx = adj[x], ny = adj[y];
        for (int a : nx) adj[a].erase(x);
        for (int b : ny) adj[b].erase(y);
        adj[x].clear();
        adj[y].clear();
        for (int a : nx)
            for (int b : ny) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
    }
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b : adj[a])
            if (b < n && a < b) edges.emplace_back(a, b);
    return Graph::from_edges(n, std::span<const Edge>(edges));
}

}  // namespace paramreport
