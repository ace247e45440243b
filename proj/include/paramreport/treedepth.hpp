#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/errors.hpp"
#include "paramreport/graph.hpp"
#include "paramreport/treewidth.hpp"

namespace paramreport {

/// Rooted forest given by a parent array (-1 for roots).
struct TreedepthDecomposition {
    std::vector<int> parent;

    int depth() const {
        int best = 0;
        for (std::size_t v = 0; v < parent.size(); ++v) {
            int d = 0;
            for (int x = static_cast<int>(v); x >= 0 && d <= static_cast<int>(parent.size()); x = parent[x]) ++d;
            best = std::max(best, d);
        }
        return best;
    }
};

/// Forest check plus the ancestor property for every edge.
inline bool is_treedepth_decomposition(const Graph& g, const TreedepthDecomposition& t) {
    const int n = g.n();
    if (static_cast<int>(t.parent.size()) != n) return false;
    auto ancestor = [&](int a, int v) {
        for (int x = v, steps = 0; x >= 0 && steps <= n; x = t.parent[x], ++steps)
            if (x == a) return true;
        return false;
    };
    for (int v = 0; v < n; ++v) {
        int steps = 0;
        for (int x = v; x >= 0; x = t.parent[x])
            if (x >= n || ++steps > n) return false;
    }
    for (auto [u, v] : g.edges())
        if (!ancestor(u, v) && !ancestor(v, u)) return false;
    return true;
}

struct TreedepthResult {
    int td = 0;  ///< exact value, or ub on timeout
    int lb = 0;
    int ub = 0;
    bool exact = true;
    TreedepthDecomposition decomposition;  ///< depth ub
};

namespace detail {

/// Vertices on a longest simple path, by a DP over vertex masks holding the
/// possible path ends (n <= 20).
inline int longest_path_vertices(const Graph& g) {
    const int n = g.n();
    if (n > 20) throw PreconditionError("longest path DP needs n <= 20");
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0), ends(std::size_t{1} << n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) nb[v] |= std::uint32_t{1} << w;
    for (int v = 0; v < n; ++v) ends[std::size_t{1} << v] = std::uint32_t{1} << v;
    int best = 0;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        if (!ends[mask]) continue;
        best = std::max(best, std::popcount(mask));
        for (std::uint32_t e = ends[mask]; e; e &= e - 1) {
            const int v = std::countr_zero(e);
            for (std::uint32_t ext = nb[v] & ~mask; ext; ext &= ext - 1) {
                const auto w = std::uint32_t{1} << std::countr_zero(ext);
                ends[mask | w] |= w;
            }
        }
    }
    return best;
}

inline int ceil_log2(int x) { return x <= 1 ? 0 : std::bit_width(static_cast<unsigned>(x - 1)); }

/// Decides td(G[S]) <= k over connected vertex sets, memoising per set the
/// largest refuted depth and the best root found.
template <typename Set>
class TreedepthSearch {
public:
    TreedepthSearch(const Graph& g, const Budget& budget) : budget_(budget) {
        for (int v = 0; v < g.n(); ++v) {
            Set s(static_cast<std::size_t>(g.n()));
            for (int w : g.neighbors(v)) s.insert(w);
            nb_.push_back(s);
        }
    }

    Set set_of(const std::vector<int>& vs) const {
        Set s(nb_.size());
        for (int v : vs) s.insert(v);
        return s;
    }

    bool fits(const Set& s, int k) {
        if (budget_.expired()) throw BudgetExhausted{};
        if (static_cast<int>(s.size()) <= k) return true;
        auto& e = memo_[s];
        if (e.lb == 0) e.lb = degeneracy_in(s) + 1;
        if (k < e.lb) return false;
        if (e.root >= 0 && e.depth <= k) return true;
        auto verts = s.to_vector();
        std::vector<std::pair<int, int>> by_degree;
        for (int v : verts) by_degree.emplace_back(-static_cast<int>(nb_[v].intersection_size(s)), v);
        std::sort(by_degree.begin(), by_degree.end());
        for (auto [d, v] : by_degree) {
            auto rest = s;
            rest.erase(v);
            bool ok = true;
            for (auto& c : components(rest))
                if (!fits(c, k - 1)) {
                    ok = false;
                    break;
                }
            if (ok) {
                e.root = v;
                e.depth = k;
                return true;
            }
        }
        e.lb = k + 1;
        return false;
    }

    /// Parent array for G[s] below `parent`, following memoised roots.
    void build(const Set& s, int parent, std::vector<int>& out) const {
        for (auto c : components(s)) {
            auto it = memo_.find(c);
            int root = it != memo_.end() && it->second.root >= 0 ? it->second.root : c.first();
            out[root] = parent;
            c.erase(root);
            build(c, root, out);
        }
    }

private:
    struct Entry {
        int lb = 0;
        int root = -1;
        int depth = 0;
    };

    // largest first
    std::vector<Set> components(Set rest) const {
        std::vector<Set> out;
        while (!rest.empty()) {
            Set comp(rest.universe()), frontier(rest.universe());
            frontier.insert(rest.first());
            while (!frontier.empty()) {
                comp |= frontier;
                Set next(rest.universe());
                frontier.for_each([&](int v) { next |= nb_[v]; });
                frontier = (next & rest) - comp;
            }
            rest -= comp;
            out.push_back(comp);
        }
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() > b.size(); });
        return out;
    }

    int degeneracy_in(Set s) const {
        int d = 0;
        while (!s.empty()) {
            int v = -1, dv = 0;
            s.for_each([&](int x) {
                int dx = static_cast<int>(nb_[x].intersection_size(s));
                if (v < 0 || dx < dv) v = x, dv = dx;
            });
            d = std::max(d, dv);
            s.erase(v);
        }
        return d;
    }

    const Budget& budget_;
    std::vector<Set> nb_;
    std::unordered_map<Set, Entry, VertexSetHash> memo_;
};

/// Max-degree root per component, recursively.
inline void greedy_treedepth(const Graph& g, const VertexSet& s, int parent, std::vector<int>& out) {
    for (auto& c : components_within(g, s)) {
        auto cs = VertexSet::of(s.universe(), c);
        int root = c.front(), best = -1;
        for (int v : c) {
            int d = 0;
            for (int w : g.neighbors(v)) d += cs.contains(w);
            if (d > best) best = d, root = v;
        }
        out[root] = parent;
        cs.erase(root);
        greedy_treedepth(g, cs, root, out);
    }
}

}  // namespace detail

/// Exact treedepth by memoised root recursion with iterative deepening from
/// max(tw + 1, ceil(log2(L + 2)), degeneracy + 1), L the longest path length
/// (only for n <= 20). On budget exhaustion returns [lb, ub] with a greedy
/// witness.
inline TreedepthResult treedepth_exact(const Graph& g, const Budget& budget = Budget()) {
    TreedepthResult out;
    const int n = g.n();
    if (n == 0) return out;
    const auto all = VertexSet::full(static_cast<std::size_t>(n));
    out.decomposition.parent.assign(static_cast<std::size_t>(n), -1);
    detail::greedy_treedepth(g, all, -1, out.decomposition.parent);
    out.ub = out.decomposition.depth();
    auto tw = treewidth_exact(g, budget);
    out.lb = std::max(tw.lb + 1, degeneracy(g).value + 1);
    try {
        if (n <= 20) out.lb = std::max(out.lb, detail::ceil_log2(detail::longest_path_vertices(g) + 1));
        with_set_type(n, [&](auto tag) {
            using Set = decltype(tag);
            detail::TreedepthSearch<Set> search(g, budget);
            std::vector<Set> comps;
            for (auto& c : connected_components(g)) comps.push_back(search.set_of(c));
            for (; out.lb < out.ub; ++out.lb) {
                bool ok = true;
                for (auto& c : comps)
                    if (!search.fits(c, out.lb)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                std::vector<int> parent(static_cast<std::size_t>(n), -1);
                search.build(Set::full(static_cast<std::size_t>(n)), -1, parent);
                out.decomposition.parent = std::move(parent);
                out.ub = out.decomposition.depth();
                break;
            }
        });
    } catch (const BudgetExhausted&) {
        out.exact = false;
    }
    if (out.exact) out.lb = out.ub;
    out.td = out.ub;
    return out;
}

/// Parent array as one line, "-1" for roots.
inline std::string to_text(const TreedepthDecomposition& t) {
    std::string s;
    for (std::size_t v = 0; v < t.parent.size(); ++v) s += (v ? " " : "") + std::to_string(t.parent[v]);
    return s + "\n";
}

}  // namespace paramreport
