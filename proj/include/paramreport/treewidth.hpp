#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/degree.hpp"
#include "paramreport/graph.hpp"

namespace paramreport {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  ///< sorted vertex lists
    std::vector<Edge> edges;             ///< tree edges between bag indices

    int width() const {
        int w = -1;
        for (auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }
};

/// Checks coverage of vertices and edges, connectivity of every vertex's
/// bags, and that the bag graph is a forest.
inline bool is_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    const auto nb = td.bags.size();
    if (g.n() > 0 && nb == 0) return false;
    std::vector<int> root(nb);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (auto [a, b] : td.edges) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= nb || static_cast<std::size_t>(b) >= nb) return false;
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        root[ra] = rb;
    }
    std::vector<std::vector<int>> holding(static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < nb; ++i)
        for (int v : td.bags[i]) {
            if (v < 0 || v >= g.n()) return false;
            holding[v].push_back(static_cast<int>(i));
        }
    std::vector<VertexSet> bagset;
    for (auto& b : td.bags) bagset.push_back(VertexSet::of(static_cast<std::size_t>(g.n()), b));
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (int i : holding[u]) ok = ok || bagset[i].contains(v);
        if (!ok) return false;
    }
    // bags holding v must induce a connected subtree: |holding| - 1 edges inside
    for (int v = 0; v < g.n(); ++v) {
        if (holding[v].empty()) return false;
        std::size_t inside = 0;
        for (auto [a, b] : td.edges) inside += bagset[a].contains(v) && bagset[b].contains(v);
        if (inside + 1 != holding[v].size()) return false;
    }
    return true;
}

struct TreewidthResult {
    int tw = -1;  ///< exact value, or ub on timeout
    int lb = -1;
    int ub = -1;
    bool exact = true;
    TreeDecomposition decomposition;  ///< width ub
};

namespace detail {

/// Bitset adjacency that supports elimination with fill.
template <typename Set = VertexSet>
struct EliminationGraph {
    std::vector<Set> nb;
    Set alive;

    explicit EliminationGraph(const Graph& g) : alive(Set::full(static_cast<std::size_t>(g.n()))) {
        for (int v = 0; v < g.n(); ++v) {
            Set s(static_cast<std::size_t>(g.n()));
            for (int w : g.neighbors(v)) s.insert(w);
            nb.push_back(s);
        }
    }

    int degree(int v) const { return static_cast<int>(nb[v].size()); }

    int fill(int v) const {
        int missing = 0;
        nb[v].for_each([&](int a) { missing += static_cast<int>((nb[v] - nb[a]).size()) - 1; });
        return missing / 2;
    }

    bool is_clique(const Set& c) const {
        bool ok = true;
        c.for_each([&](int a) {
            if (!ok) return;
            auto miss = c - nb[a];
            miss.erase(a);
            ok = miss.empty();
        });
        return ok;
    }

    /// N(v), or N(v) minus one vertex when `almost`, is a clique.
    bool clique_nb(int v, bool almost) const {
        int a = -1, b = -1;
        nb[v].for_each([&](int x) {
            if (a >= 0) return;
            auto miss = nb[v] - nb[x];
            miss.erase(x);
            if (!miss.empty()) a = x, b = miss.first();
        });
        if (a < 0) return true;
        if (!almost) return false;
        for (int u : {a, b}) {
            auto rest = nb[v];
            rest.erase(u);
            if (is_clique(rest)) return true;
        }
        return false;
    }

    void eliminate(int v) {
        nb[v].for_each([&](int a) {
            nb[a] |= nb[v];
            nb[a].erase(a);
            nb[a].erase(v);
        });
        alive.erase(v);
        nb[v] = Set(nb[v].universe());
    }
};

/// Minor-min-width: contract a minimum-degree vertex into the neighbour it
/// shares fewest neighbours with, until one vertex is left.
template <typename Set>
int minor_min_width(std::vector<Set> nb, Set alive) {
    int lb = 0;
    while (alive.size() > 1) {
        int v = -1, dv = 0;
        alive.for_each([&](int x) {
            int d = static_cast<int>(nb[x].size());
            if (v < 0 || d < dv) v = x, dv = d;
        });
        lb = std::max(lb, dv);
        if (dv == 0) {
            alive.erase(v);
            continue;
        }
        int u = -1, cu = 0;
        nb[v].for_each([&](int x) {
            int c = static_cast<int>(nb[x].intersection_size(nb[v]));
            if (u < 0 || c < cu) u = x, cu = c;
        });
        nb[v].for_each([&](int x) {
            nb[x].erase(v);
            if (x != u) {
                nb[x].insert(u);
                nb[u].insert(x);
            }
        });
        alive.erase(v);
    }
    return lb;
}

template <typename Set>
std::vector<int> min_fill_order(EliminationGraph<Set> h) {
    std::vector<int> order;
    while (!h.alive.empty()) {
        int best = -1, bf = 0, bd = 0;
        h.alive.for_each([&](int v) {
            int f = h.fill(v), d = h.degree(v);
            if (best < 0 || f < bf || (f == bf && d < bd)) best = v, bf = f, bd = d;
        });
        order.push_back(best);
        h.eliminate(best);
    }
    return order;
}

inline int order_width(const Graph& g, const std::vector<int>& order) {
    EliminationGraph<> h(g);
    int w = g.n() > 0 ? 0 : -1;
    for (int v : order) {
        w = std::max(w, h.degree(v));
        h.eliminate(v);
    }
    return w;
}

/// Decides tw <= k by depth-first search over eliminated sets; failed sets
/// are memoised.
template <typename Set>
class TreewidthSearch {
public:
    TreewidthSearch(const EliminationGraph<Set>& h, const Budget& budget) : base_(h), budget_(budget) {}

    bool decide(int k, std::vector<int>& order) {
        k_ = k;
        failed_.clear();
        order_.clear();
        Set s(base_.alive.universe());
        if (!dfs(s)) return false;
        order = order_;
        std::reverse(order.begin(), order.end());
        return true;
    }

private:
    // elimination graph after removing s, restricted to live vertices
    EliminationGraph<Set> state(const Set& s) const {
        EliminationGraph<Set> h = base_;
        h.alive = base_.alive - s;
        std::vector<char> seen(base_.nb.size(), 0);
        s.for_each([&](int root) {
            if (seen[root]) return;
            Set boundary(s.universe());
            std::vector<int> stack{root};
            seen[root] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                base_.nb[x].for_each([&](int y) {
                    if (!s.contains(y)) {
                        boundary.insert(y);
                    } else if (!seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
                });
            }
            boundary.for_each([&](int b) { h.nb[b] |= boundary; });
        });
        h.alive.for_each([&](int v) {
            h.nb[v] &= h.alive;
            h.nb[v].erase(v);
        });
        return h;
    }

    static std::vector<Set> live_components(const EliminationGraph<Set>& h) {
        std::vector<Set> out;
        auto rest = h.alive;
        while (!rest.empty()) {
            Set comp(rest.universe()), frontier(rest.universe());
            frontier.insert(rest.first());
            while (!frontier.empty()) {
                comp |= frontier;
                Set next(rest.universe());
                frontier.for_each([&](int v) { next |= h.nb[v]; });
                frontier = next - comp;
            }
            rest -= comp;
            out.push_back(std::move(comp));
        }
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() > b.size(); });
        return out;
    }

    bool dfs(Set& s) {
        if (budget_.expired()) throw BudgetExhausted{};
        if (failed_.count(s)) return false;
        auto h = state(s);
        auto live = h.alive.to_vector();
        if (static_cast<int>(live.size()) <= k_ + 1) {
            for (auto it = live.rbegin(); it != live.rend(); ++it) order_.push_back(*it);
            return true;
        }
        // eliminating one component never adds fill to another
        auto comps = live_components(h);
        if (comps.size() > 1) {
            const auto mark = order_.size();
            for (auto& c : comps) {
                auto t = s | (h.alive - c);
                if (!dfs(t)) {
                    order_.resize(mark);
                    failed_.insert(s);
                    return false;
                }
            }
            return true;
        }
        // safe moves: (almost) simplicial vertices of degree <= k
        for (int v : live) {
            if (h.degree(v) > k_ || !h.clique_nb(v, true)) continue;
            s.insert(v);
            bool ok = dfs(s);
            s.erase(v);
            if (ok) order_.push_back(v);
            else failed_.insert(s);
            return ok;
        }
        if (minor_min_width(h.nb, h.alive) > k_) {
            failed_.insert(s);
            return false;
        }
        std::vector<std::pair<int, int>> cand;
        for (int v : live)
            if (h.degree(v) <= k_) cand.emplace_back(h.fill(v), v);
        std::sort(cand.begin(), cand.end());
        for (auto [f, v] : cand) {
            s.insert(v);
            bool ok = dfs(s);
            s.erase(v);
            if (ok) {
                order_.push_back(v);
                return true;
            }
        }
        failed_.insert(s);
        return false;
    }

    const EliminationGraph<Set>& base_;
    const Budget& budget_;
    int k_ = 0;
    std::unordered_set<Set, VertexSetHash> failed_;
    std::vector<int> order_;
};

struct BlockWidth {
    int lb = 0, ub = 0;
    bool exact = true;
    std::vector<int> order;
};

/// Exact treewidth of one biconnected block (local ids).
template <typename Set>
BlockWidth block_treewidth(const Graph& g, const Budget& budget) {
    BlockWidth out;
    if (g.n() <= 2) {
        out.lb = out.ub = g.n() - 1;
        out.order.resize(static_cast<std::size_t>(g.n()));
        std::iota(out.order.begin(), out.order.end(), 0);
        return out;
    }
    EliminationGraph<Set> h(g);
    int low = std::max(degeneracy(g).value, minor_min_width(h.nb, h.alive));
    // reductions: simplicial always, almost simplicial up to the running floor
    std::vector<int> prefix;
    for (bool changed = true; changed && h.alive.size() > 1;) {
        changed = false;
        for (int v : h.alive.to_vector()) {
            bool simplicial = h.clique_nb(v, false);
            if (!simplicial && !(h.degree(v) <= low && h.clique_nb(v, true))) continue;
            low = std::max(low, h.degree(v));
            prefix.push_back(v);
            h.eliminate(v);
            changed = true;
        }
    }
    auto heuristic = min_fill_order(h);
    int ub = h.alive.empty() ? low : std::max(low, order_width(g, [&] {
        auto o = prefix;
        o.insert(o.end(), heuristic.begin(), heuristic.end());
        return o;
    }()));
    out.order = prefix;
    out.order.insert(out.order.end(), heuristic.begin(), heuristic.end());
    out.lb = low;
    out.ub = ub;
    TreewidthSearch<Set> search(h, budget);
    try {
        for (int k = low; k < ub; ++k) {
            std::vector<int> rest;
            if (search.decide(k, rest)) {
                out.order = prefix;
                out.order.insert(out.order.end(), rest.begin(), rest.end());
                out.ub = k;
                break;
            }
            out.lb = k + 1;
        }
    } catch (const BudgetExhausted&) {
        out.exact = false;
    }
    if (out.exact) out.lb = out.ub;
    return out;
}

/// Biconnected blocks as sorted vertex lists; isolated vertices form their
/// own block.
inline std::vector<std::vector<int>> biconnected_blocks(const Graph& g) {
    const int n = g.n();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> blocks;
    std::vector<Edge> estack;
    int timer = 0;
    for (int s = 0; s < n; ++s) {
        if (disc[s] >= 0) continue;
        if (g.degree(s) == 0) {
            disc[s] = timer++;
            blocks.push_back({s});
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        std::vector<std::tuple<int, int, std::size_t>> stack{{s, -1, 0}};
        disc[s] = low[s] = timer++;
        while (!stack.empty()) {
            auto& [v, p, i] = stack.back();
            auto nbrs = g.neighbors(v);
            if (i < nbrs.size()) {
                int w = nbrs[i++];
                if (w == p) continue;
                if (disc[w] < 0) {
                    estack.emplace_back(v, w);
                    disc[w] = low[w] = timer++;
                    stack.emplace_back(w, v, 0);
                } else if (disc[w] < disc[v]) {
                    estack.emplace_back(v, w);
                    low[v] = std::min(low[v], disc[w]);
                }
                continue;
            }
            int child = v;
            stack.pop_back();
            if (stack.empty()) break;
            int parent = std::get<0>(stack.back());
            low[parent] = std::min(low[parent], low[child]);
            if (low[child] >= disc[parent]) {
                std::vector<int> block;
                while (true) {
                    auto e = estack.back();
                    estack.pop_back();
                    block.push_back(e.first);
                    block.push_back(e.second);
                    if (e == Edge{parent, child}) break;
                }
                std::sort(block.begin(), block.end());
                block.erase(std::unique(block.begin(), block.end()), block.end());
                blocks.push_back(std::move(block));
            }
        }
    }
    return blocks;
}

}  // namespace detail

/// Tree decomposition of the fill-in graph of `order` (bag of v is v plus its
/// later neighbours); components are chained so the result is one tree.
inline TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
    const int n = g.n();
    TreeDecomposition td;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
    detail::EliminationGraph<> h(g);
    std::vector<int> parent_vertex;
    for (int v : order) {
        auto bag = h.nb[v].to_vector();
        int parent = -1;
        for (int w : bag)
            if (parent < 0 || pos[w] < pos[parent]) parent = w;
        parent_vertex.push_back(parent);
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        h.eliminate(v);
    }
    int last_root = -1;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        if (parent_vertex[i] >= 0) {
            td.edges.emplace_back(i, pos[parent_vertex[i]]);
        } else {
            if (last_root >= 0) td.edges.emplace_back(last_root, i);
            last_root = i;
        }
    }
    return td;
}

/// Exact treewidth per biconnected block after simplicial and
/// almost-simplicial reductions; lower bound max(degeneracy, minor-min-width),
/// upper bound min-fill. Block decompositions are glued at cut vertices. On
/// budget exhaustion returns [lb, ub] with the min-fill witness.
inline TreewidthResult treewidth_exact(const Graph& g, const Budget& budget = Budget()) {
    TreewidthResult out;
    if (g.n() == 0) return out;
    out.lb = out.ub = 0;
    auto& td = out.decomposition;
    std::vector<int> anchor(static_cast<std::size_t>(g.n()), -1);  // a bag holding v
    for (auto& b : detail::biconnected_blocks(g)) {
        auto h = g.induced(std::span<const int>(b));
        auto local = with_set_type(h.n(), [&](auto tag) { return detail::block_treewidth<decltype(tag)>(h, budget); });
        out.lb = std::max(out.lb, local.lb);
        out.ub = std::max(out.ub, local.ub);
        out.exact = out.exact && local.exact;
        auto part = decomposition_from_order(h, local.order);
        const int shift = static_cast<int>(td.bags.size());
        for (auto& bag : part.bags) {
            for (int& v : bag) v = b[v];
            std::sort(bag.begin(), bag.end());
            td.bags.push_back(std::move(bag));
        }
        for (auto [x, y] : part.edges) td.edges.emplace_back(x + shift, y + shift);
        // glue at cut vertices seen in earlier blocks
        std::vector<char> glued(b.size(), 0);
        for (int i = shift; i < static_cast<int>(td.bags.size()); ++i)
            for (int v : td.bags[i]) {
                auto at = static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), v) - b.begin());
                if (glued[at]) continue;
                glued[at] = 1;
                if (anchor[v] >= 0) td.edges.emplace_back(anchor[v], i);
                else anchor[v] = i;
            }
    }
    // join the per-component trees into one
    std::vector<int> root(td.bags.size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (auto [x, y] : td.edges) root[find(x)] = find(y);
    for (int i = 1; i < static_cast<int>(td.bags.size()); ++i)
        if (find(i) != find(0)) {
            td.edges.emplace_back(0, i);
            root[find(i)] = find(0);
        }
    out.tw = out.ub;
    return out;
}

/// Bags one per line ("b i: v1 v2 ...") followed by tree edges ("e i j").
inline std::string to_text(const TreeDecomposition& td) {
    std::string s;
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        s += "b " + std::to_string(i) + ":";
        for (int v : td.bags[i]) s += " " + std::to_string(v);
        s += "\n";
    }
    for (auto [a, b] : td.edges) s += "e " + std::to_string(a) + " " + std::to_string(b) + "\n";
    return s;
}

}  // namespace paramreport
