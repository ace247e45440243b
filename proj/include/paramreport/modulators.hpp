#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/graph.hpp"
#include "paramreport/hitting.hpp"

namespace paramreport {

inline constexpr std::size_t kObstructionBatch = 50;

namespace detail {

/// Collects pairwise-disjoint obstructions up to the batch limit.
class Batch {
public:
    explicit Batch(int n) : used_(static_cast<std::size_t>(n), 0) {}

    bool full() const { return out_.size() >= kObstructionBatch; }
    bool is_free(int v) const { return !used_[v]; }

    template <typename Range>
    bool offer(const Range& obs) {
        for (int v : obs)
            if (used_[v]) return false;
        for (int v : obs) used_[v] = 1;
        out_.emplace_back(obs.begin(), obs.end());
        return true;
    }

    std::vector<std::vector<int>> take() { return std::move(out_); }

private:
    std::vector<char> used_;
    std::vector<std::vector<int>> out_;
};

}  // namespace detail

inline ObstructionOracle vc_oracle(const Graph& g) {
    return {[&g](const VertexSet& s) {
        detail::Batch b(g.n());
        for (auto [u, v] : g.edges()) {
            if (s.contains(u) || s.contains(v)) continue;
            b.offer(std::vector<int>{u, v});
            if (b.full()) break;
        }
        return b.take();
    }};
}

/// Obstructions {v} ∪ T with T an (r+1)-set of residual neighbours of v.
inline ObstructionOracle bdd_oracle(const Graph& g, int r) {
    if (r < 1) throw PreconditionError("bdd needs r >= 1");
    return {[&g, r](const VertexSet& s) {
        detail::Batch b(g.n());
        for (int v = 0; v < g.n() && !b.full(); ++v) {
            if (s.contains(v) || !b.is_free(v)) continue;
            std::vector<int> obs{v};
            for (int w : g.neighbors(v))
                if (!s.contains(w) && b.is_free(w)) {
                    obs.push_back(w);
                    if (static_cast<int>(obs.size()) == r + 2) break;
                }
            if (static_cast<int>(obs.size()) == r + 2) b.offer(obs);
        }
        return b.take();
    }};
}

/// Paths a-b-c-d (not necessarily induced) through a residual edge b-c.
inline ObstructionOracle pvc4_oracle(const Graph& g) {
    return {[&g](const VertexSet& s) {
        detail::Batch b(g.n());
        auto ok = [&](int w) { return !s.contains(w) && b.is_free(w); };
        for (auto [x, y] : g.edges()) {
            if (b.full()) break;
            if (!ok(x) || !ok(y)) continue;
            for (auto [bb, cc] : {std::pair{x, y}, std::pair{y, x}}) {
                int a = -1, d = -1;
                for (int w : g.neighbors(bb))
                    if (w != cc && ok(w)) {
                        a = w;
                        break;
                    }
                if (a < 0) continue;
                for (int w : g.neighbors(cc))
                    if (w != bb && w != a && ok(w)) {
                        d = w;
                        break;
                    }
                if (d < 0) continue;
                b.offer(std::vector<int>{a, bb, cc, d});
                break;
            }
        }
        return b.take();
    }};
}

/// Induced P3s u-v-w with uw a non-edge.
inline ObstructionOracle cvd_oracle(const Graph& g) {
    return {[&g](const VertexSet& s) {
        detail::Batch b(g.n());
        for (int v = 0; v < g.n() && !b.full(); ++v) {
            if (s.contains(v) || !b.is_free(v)) continue;
            std::vector<int> nb;
            for (int w : g.neighbors(v))
                if (!s.contains(w) && b.is_free(w)) nb.push_back(w);
            bool found = false;
            for (std::size_t i = 0; i < nb.size() && !found; ++i)
                for (std::size_t j = i + 1; j < nb.size() && !found; ++j)
                    if (!g.adjacent(nb[i], nb[j])) found = b.offer(std::vector<int>{nb[i], v, nb[j]});
        }
        return b.take();
    }};
}

/// Induced P4s a-b-c-d, found by extending residual edges b-c.
inline ObstructionOracle dco_oracle(const Graph& g) {
    return {[&g](const VertexSet& s) {
        detail::Batch b(g.n());
        auto ok = [&](int w) { return !s.contains(w) && b.is_free(w); };
        for (auto [x, y] : g.edges()) {
            if (b.full()) break;
            if (!ok(x) || !ok(y)) continue;
            bool found = false;
            for (auto [bb, cc] : {std::pair{x, y}, std::pair{y, x}}) {
                for (int a : g.neighbors(bb)) {
                    if (found) break;
                    if (a == cc || !ok(a) || g.adjacent(a, cc)) continue;
                    for (int d : g.neighbors(cc)) {
                        if (d == bb || d == a || !ok(d) || g.adjacent(d, bb) || g.adjacent(a, d)) continue;
                        found = b.offer(std::vector<int>{a, bb, cc, d});
                        break;
                    }
                }
                if (found) break;
            }
        }
        return b.take();
    }};
}

namespace detail {

/// Shortest cycle found by BFS from `root` in G - removed (LCA walk keeps it
/// simple). Empty when the root's component is a tree.
inline std::vector<int> bfs_cycle(const Graph& g, const VertexSet& removed, int root, std::vector<int>& parent,
                                  std::vector<int>& depth) {
    std::fill(parent.begin(), parent.end(), -2);
    std::queue<int> q;
    q.push(root);
    parent[root] = -1;
    depth[root] = 0;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.neighbors(x)) {
            if (removed.contains(y) || y == parent[x]) continue;
            if (parent[y] == -2) {
                parent[y] = x;
                depth[y] = depth[x] + 1;
                q.push(y);
                continue;
            }
            // non-tree edge x-y closes a cycle
            std::vector<int> left, right;
            int a = x, b = y;
            while (depth[a] > depth[b]) {
                left.push_back(a);
                a = parent[a];
            }
            while (depth[b] > depth[a]) {
                right.push_back(b);
                b = parent[b];
            }
            while (a != b) {
                left.push_back(a);
                right.push_back(b);
                a = parent[a];
                b = parent[b];
            }
            left.push_back(a);
            left.insert(left.end(), right.rbegin(), right.rend());
            return left;
        }
    }
    return {};
}

}  // namespace detail

/// Shortest cycles of G - S (one BFS per vertex), shortest first.
inline ObstructionOracle fvs_oracle(const Graph& g) {
    return {[&g](const VertexSet& s) {
        const int n = g.n();
        std::vector<int> parent(static_cast<std::size_t>(n)), depth(static_cast<std::size_t>(n));
        std::vector<std::vector<int>> cycles;
        for (int v = 0; v < n; ++v) {
            if (s.contains(v)) continue;
            auto c = detail::bfs_cycle(g, s, v, parent, depth);
            if (!c.empty()) cycles.push_back(std::move(c));
        }
        std::stable_sort(cycles.begin(), cycles.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
        detail::Batch b(n);
        for (auto& c : cycles) {
            if (b.full()) break;
            b.offer(c);
        }
        return b.take();
    }};
}

namespace detail {

/// First r+1 vertices of a BFS from `root` inside `alive`.
inline std::vector<int> bfs_prefix(const Graph& g, const VertexSet& alive, int root, int r,
                                   std::vector<int>& seen, int stamp) {
    std::vector<int> order{root};
    seen[root] = stamp;
    for (std::size_t i = 0; i < order.size() && static_cast<int>(order.size()) < r + 1; ++i)
        for (int w : g.neighbors(order[i]))
            if (seen[w] != stamp && alive.contains(w)) {
                seen[w] = stamp;
                order.push_back(w);
                if (static_cast<int>(order.size()) == r + 1) break;
            }
    return order;
}

}  // namespace detail

/// Connected (r+1)-sets: BFS prefixes of residual components larger than r,
/// reported in BFS order. Pairwise-disjoint ones come first; remaining room
/// in the batch is filled with prefixes from further roots.
inline ObstructionOracle coc_oracle(const Graph& g, int r) {
    if (r < 1) throw PreconditionError("coc needs r >= 1");
    return {[&g, r](const VertexSet& s) {
        const int n = g.n();
        detail::Batch b(n);
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        int stamp = 0;
        const auto alive = VertexSet::full(static_cast<std::size_t>(n)) - s;
        auto big = components_within(g, alive);
        std::erase_if(big, [r](const std::vector<int>& c) { return static_cast<int>(c.size()) <= r; });
        VertexSet blocked = s;
        bool progress = true;
        while (progress && !b.full()) {
            progress = false;
            auto avail = VertexSet::full(static_cast<std::size_t>(n)) - blocked;
            for (auto& comp : components_within(g, avail)) {
                if (static_cast<int>(comp.size()) <= r) continue;
                auto order = detail::bfs_prefix(g, avail, comp.front(), r, seen, ++stamp);
                b.offer(order);
                for (int v : order) blocked.insert(v);
                progress = true;
                if (b.full()) break;
            }
        }
        auto out = b.take();
        std::vector<std::vector<int>> keys;
        for (auto& o : out) {
            keys.push_back(o);
            std::sort(keys.back().begin(), keys.back().end());
        }
        for (auto& comp : big)
            for (int root : comp) {
                if (out.size() >= kObstructionBatch) return out;
                auto order = detail::bfs_prefix(g, alive, root, r, seen, ++stamp);
                auto key = order;
                std::sort(key.begin(), key.end());
                if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
                keys.push_back(std::move(key));
                out.push_back(std::move(order));
            }
        return out;
    }};
}

inline OptResult solve_with(const Graph& g, const ObstructionOracle& o, const Budget& budget) {
    return solve_lazy(o, HittingInstance::over(g.n()), budget);
}

inline OptResult compute_vc(const Graph& g, const Budget& budget = Budget()) {
    auto inst = HittingInstance::over(g.n());
    for (auto [u, v] : g.edges()) inst.constraints.push_back({u, v});
    return solve_lazy(vc_oracle(g), inst, budget);
}
inline OptResult compute_bdd(const Graph& g, int r, const Budget& budget = Budget()) {
    return solve_with(g, bdd_oracle(g, r), budget);
}
inline OptResult compute_pvc4(const Graph& g, const Budget& budget = Budget()) {
    return solve_with(g, pvc4_oracle(g), budget);
}
inline OptResult compute_cvd(const Graph& g, const Budget& budget = Budget()) {
    return solve_with(g, cvd_oracle(g), budget);
}
inline OptResult compute_dco(const Graph& g, const Budget& budget = Budget()) {
    return solve_with(g, dco_oracle(g), budget);
}
inline OptResult compute_fvs(const Graph& g, const Budget& budget = Budget()) {
    return solve_with(g, fvs_oracle(g), budget);
}
inline OptResult compute_coc(const Graph& g, int r, std::optional<int> obj_lower = std::nullopt,
                             std::optional<int> obj_upper = std::nullopt, const Budget& budget = Budget()) {
    auto inst = HittingInstance::over(g.n());
    inst.obj_lower = obj_lower;
    inst.obj_upper = obj_upper;
    return solve_lazy(coc_oracle(g, r), inst, budget);
}

}  // namespace paramreport
