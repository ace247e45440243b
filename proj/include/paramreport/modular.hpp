#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "paramreport/errors.hpp"
#include "paramreport/graph.hpp"

namespace paramreport {

enum class MDKind { leaf, parallel, series, prime };

inline const char* to_string(MDKind k) {
    switch (k) {
        case MDKind::leaf: return "leaf";
        case MDKind::parallel: return "parallel";
        case MDKind::series: return "series";
        case MDKind::prime: return "prime";
    }
    return "?";
}

struct MDNode {
    MDKind kind = MDKind::leaf;
    int vertex = -1;                ///< leaves only
    std::vector<int> children;      ///< node indices
    std::vector<int> vertices;      ///< V_x, sorted
    Graph quotient;                 ///< on children, in child order
};

struct ModularDecomposition {
    std::vector<MDNode> nodes;
    int root = -1;
    int n = 0;

    const MDNode& node(int i) const { return nodes[i]; }
};

namespace detail {

/// Co-components of G[xs] in O(n + m) using an unvisited list.
inline std::vector<std::vector<int>> co_components(const Graph& g, const std::vector<int>& xs) {
    std::vector<int> unvisited(xs.rbegin(), xs.rend());
    std::vector<char> mark(static_cast<std::size_t>(g.n()), 0);
    std::vector<std::vector<int>> out;
    while (!unvisited.empty()) {
        std::vector<int> comp{unvisited.back()};
        unvisited.pop_back();
        for (std::size_t i = 0; i < comp.size(); ++i) {
            int u = comp[i];
            for (int w : g.neighbors(u)) mark[w] = 1;
            std::vector<int> keep;
            for (int w : unvisited) (mark[w] ? keep : comp).push_back(w);
            for (int w : g.neighbors(u)) mark[w] = 0;
            unvisited.swap(keep);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

/// Maximal modules of G[xs] not containing pivot, by splitter refinement on a
/// contiguous array layout. Local ids index xs.
inline std::vector<std::vector<int>> maximal_modules_avoiding(const Graph& h, int pivot) {
    const int k = h.n();
    std::vector<int> elems, pos(static_cast<std::size_t>(k)), part_of(static_cast<std::size_t>(k), -1);
    std::vector<int> begin, end;
    for (int x = 0; x < k; ++x)
        if (x != pivot) {
            pos[x] = static_cast<int>(elems.size());
            elems.push_back(x);
            part_of[x] = 0;
        }
    begin.push_back(0);
    end.push_back(static_cast<int>(elems.size()));

    std::vector<int> queue{pivot};
    std::vector<char> queued(static_cast<std::size_t>(k), 0);
    queued[pivot] = 1;
    std::vector<int> touched_parts;
    std::vector<int> hits(1, 0);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int z = queue[qi];
        queued[z] = 0;
        // Move z's neighbours to the back of their part ranges.
        for (int w : h.neighbors(z)) {
            int p = part_of[w];
            if (p < 0 || p == part_of[z]) continue;
            if (hits[p]++ == 0) touched_parts.push_back(p);
            int last = end[p] - hits[p];
            int y = elems[last];
            std::swap(elems[pos[w]], elems[last]);
            pos[y] = pos[w];
            pos[w] = last;
        }
        for (int p : touched_parts) {
            int cnt = hits[p];
            hits[p] = 0;
            if (cnt == end[p] - begin[p]) continue;
            int np = static_cast<int>(begin.size());
            begin.push_back(end[p] - cnt);
            end.push_back(end[p]);
            end[p] -= cnt;
            hits.push_back(0);
            for (int i = begin[np]; i < end[np]; ++i) part_of[elems[i]] = np;
            for (int i = begin[p]; i < end[np]; ++i) {
                int y = elems[i];
                if (!queued[y]) {
                    queued[y] = 1;
                    queue.push_back(y);
                }
            }
        }
        touched_parts.clear();
    }
    std::vector<std::vector<int>> parts;
    for (std::size_t p = 0; p < begin.size(); ++p) {
        std::vector<int> part(elems.begin() + begin[p], elems.begin() + end[p]);
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    return parts;
}

/// Whether the smallest module of h containing {a, b} is all of V(h).
inline bool module_closure_is_everything(const Graph& h, int a, int b) {
    const int k = h.n();
    // state: 0 outside & non-adjacent to all of S, 1 outside & adjacent to all,
    // 2 splitter pending, 3 in S
    std::vector<unsigned char> state(static_cast<std::size_t>(k), 0);
    std::vector<int> full, pending;
    std::vector<char> nb(static_cast<std::size_t>(k), 0);
    int size = 0;
    auto add = [&](int z) {
        state[z] = 3;
        ++size;
        for (int w : h.neighbors(z)) nb[w] = 1;
        if (size == 1) {
            for (int w : h.neighbors(z))
                if (state[w] == 0) {
                    state[w] = 1;
                    full.push_back(w);
                }
        } else {
            for (int w : h.neighbors(z))
                if (state[w] == 0) {
                    state[w] = 2;
                    pending.push_back(w);
                }
            std::vector<int> keep;
            for (int w : full) {
                if (state[w] != 1) continue;
                if (nb[w])
                    keep.push_back(w);
                else {
                    state[w] = 2;
                    pending.push_back(w);
                }
            }
            full.swap(keep);
        }
        for (int w : h.neighbors(z)) nb[w] = 0;
    };
    add(a);
    if (state[b] != 3) add(b);
    while (!pending.empty()) {
        int z = pending.back();
        pending.pop_back();
        if (state[z] != 2) continue;
        add(z);
        if (size == k) return true;
    }
    return size == k;
}

struct MDBuilder {
    const Graph& g;
    ModularDecomposition md;

    int leaf(int v) {
        MDNode nd;
        nd.kind = MDKind::leaf;
        nd.vertex = v;
        nd.vertices = {v};
        nd.quotient = Graph::from_edges(1, std::span<const Edge>());
        md.nodes.push_back(std::move(nd));
        return static_cast<int>(md.nodes.size()) - 1;
    }

    int build(const std::vector<int>& xs) {
        if (xs.size() == 1) return leaf(xs[0]);
        auto alive = VertexSet::of(static_cast<std::size_t>(g.n()), xs);
        std::vector<std::vector<int>> groups = components_within(g, alive);
        MDKind kind = MDKind::parallel;
        if (groups.size() == 1) {
            groups = co_components(g, xs);
            kind = MDKind::series;
        }
        if (groups.size() == 1) {
            kind = MDKind::prime;
            groups = prime_children(xs);
        }
        std::vector<int> reps;
        for (auto& gr : groups) reps.push_back(gr.front());
        MDNode nd;
        nd.kind = kind;
        nd.vertices = xs;
        nd.quotient = g.induced(std::span<const int>(reps));
        int id = static_cast<int>(md.nodes.size());
        md.nodes.push_back(std::move(nd));
        std::vector<int> kids;
        for (auto& gr : groups) kids.push_back(build(gr));
        md.nodes[id].children = std::move(kids);
        return id;
    }

    /// Maximal strong modules of a node whose graph and complement are both
    /// connected, ordered by smallest vertex.
    std::vector<std::vector<int>> prime_children(const std::vector<int>& xs) {
        Graph h = g.induced(std::span<const int>(xs));
        const int pivot = 0;
        auto parts = maximal_modules_avoiding(h, pivot);
        std::vector<int> with_pivot{pivot};
        std::vector<std::vector<int>> out;
        for (auto& p : parts) {
            if (module_closure_is_everything(h, pivot, p.front()))
                out.push_back(p);
            else
                with_pivot.insert(with_pivot.end(), p.begin(), p.end());
        }
        out.push_back(with_pivot);
        for (auto& c : out) {
            for (int& x : c) x = xs[x];
            std::sort(c.begin(), c.end());
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
        return out;
    }
};

}  // namespace detail

/// Canonical (Gallai) modular decomposition.
inline ModularDecomposition modular_decomposition(const Graph& g) {
    detail::MDBuilder b{g, {}};
    b.md.n = g.n();
    if (g.n() == 0) return b.md;
    std::vector<int> all(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) all[v] = v;
    b.md.root = b.build(all);
    return b.md;
}

/// max(largest prime quotient, min(n, 2)).
inline int modular_width(const ModularDecomposition& md) {
    int w = std::min(md.n, 2);
    for (auto& nd : md.nodes)
        if (nd.kind == MDKind::prime) w = std::max(w, nd.quotient.n());
    return w;
}
inline int modular_width(const Graph& g) { return modular_width(modular_decomposition(g)); }

enum class Binarization { left_deep, right_deep };

/// Replaces every parallel/series node with k > 2 children by a chain of
/// k-1 binary nodes of the same kind.
inline ModularDecomposition binarize(const ModularDecomposition& md, Binarization how) {
    ModularDecomposition out;
    out.n = md.n;
    if (md.root < 0) return out;
    struct Rec {
        const ModularDecomposition& src;
        ModularDecomposition& dst;
        Binarization how;
        int pair(MDKind kind, int a, int b) {
            MDNode nd;
            nd.kind = kind;
            nd.children = {a, b};
            nd.vertices = dst.nodes[a].vertices;
            nd.vertices.insert(nd.vertices.end(), dst.nodes[b].vertices.begin(), dst.nodes[b].vertices.end());
            std::sort(nd.vertices.begin(), nd.vertices.end());
            nd.quotient = kind == MDKind::series ? make::complete(2) : make::edgeless(2);
            dst.nodes.push_back(std::move(nd));
            return static_cast<int>(dst.nodes.size()) - 1;
        }
        int copy(int i) {
            const MDNode& s = src.nodes[i];
            std::vector<int> kids;
            for (int c : s.children) kids.push_back(copy(c));
            if (s.kind == MDKind::leaf || s.kind == MDKind::prime || kids.size() <= 2) {
                MDNode nd = s;
                nd.children = kids;
                dst.nodes.push_back(std::move(nd));
                return static_cast<int>(dst.nodes.size()) - 1;
            }
            if (how == Binarization::left_deep) {
                int acc = pair(s.kind, kids[0], kids[1]);
                for (std::size_t j = 2; j < kids.size(); ++j) acc = pair(s.kind, acc, kids[j]);
                return acc;
            }
            int acc = pair(s.kind, kids[kids.size() - 2], kids.back());
            for (std::size_t j = kids.size() - 2; j-- > 0;) acc = pair(s.kind, kids[j], acc);
            return acc;
        }
    } rec{md, out, how};
    out.root = rec.copy(md.root);
    return out;
}

/// Rebuilds G from the tree: children i, j of a node are fully joined iff
/// they are adjacent in its quotient.
inline Graph recompose(const ModularDecomposition& md) {
    std::vector<Edge> edges;
    for (auto& nd : md.nodes)
        for (auto [i, j] : nd.quotient.edges())
            for (int a : md.nodes[nd.children[i]].vertices)
                for (int b : md.nodes[nd.children[j]].vertices) edges.emplace_back(a, b);
    return Graph::from_edges(md.n, std::span<const Edge>(edges));
}

/// Indented text dump, one node per line.
inline std::string dump(const ModularDecomposition& md) {
    std::string out;
    auto rec = [&](auto&& self, int i, int depth) -> void {
        const auto& nd = md.nodes[i];
        out.append(static_cast<std::size_t>(2 * depth), ' ');
        if (nd.kind == MDKind::leaf) {
            out += "leaf " + std::to_string(nd.vertex) + "\n";
            return;
        }
        out += std::string(to_string(nd.kind)) + " (" + std::to_string(nd.children.size()) + " children)\n";
        for (int c : nd.children) self(self, c, depth + 1);
    };
    if (md.root >= 0) rec(rec, md.root, 0);
    return out;
}

}  // namespace paramreport
