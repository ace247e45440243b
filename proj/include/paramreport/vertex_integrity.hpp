#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/connectivity.hpp"
#include "paramreport/degree.hpp"
#include "paramreport/graph.hpp"
#include "paramreport/hitting.hpp"
#include "paramreport/modulators.hpp"

namespace paramreport {

enum class ViVariant { basic, improved };

inline std::string to_string(ViVariant v) { return v == ViVariant::basic ? "basic" : "improved"; }

inline ViVariant parse_vi_variant(const std::string& s) {
    if (s == "basic") return ViVariant::basic;
    if (s == "improved") return ViVariant::improved;
    throw PreconditionError("unknown vi variant: " + s);
}

struct ViRound {
    int r = 0;
    OptStatus status = OptStatus::optimal;
    std::optional<int> coc;  ///< empty when infeasible under the bound or timed out
    double runtime_ms = 0;
};

struct ViResult {
    int vi = 0;                   ///< best value found; exact iff `exact`
    std::vector<int> witness;     ///< X with |X| + cc(G - X) = vi
    std::vector<ViRound> per_r;
    ViVariant variant = ViVariant::improved;
    bool exact = true;
    int lb = 0;
    int ub = 0;
};

// ---------------------------------------------------------------- reductions

struct SmallComponentReduction {
    Graph reduced;              ///< G minus the excluded vertices
    std::vector<int> kept;      ///< reduced id -> original id
    VertexSet excluded;
};

/// Vertices in components of order <= r never belong to a minimum coc_r
/// modulator.
inline SmallComponentReduction reduce_small_components(const Graph& g, int r) {
    if (r < 1) throw PreconditionError("r must be >= 1");
    SmallComponentReduction out;
    out.excluded = VertexSet(static_cast<std::size_t>(g.n()));
    for (auto& c : connected_components(g))
        if (static_cast<int>(c.size()) <= r)
            for (int v : c) out.excluded.insert(v);
    for (int v = 0; v < g.n(); ++v)
        if (!out.excluded.contains(v)) out.kept.push_back(v);
    out.reduced = g.induced(std::span<const int>(out.kept));
    return out;
}

/// `d` is a connected set listed in BFS order. Returns the shortest proper
/// prefix C with |N[C]| > ub, or `d` itself.
inline std::vector<int> strengthen_obstruction(const Graph& g, const std::vector<int>& d, int ub) {
    std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
    int closed = 0;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        int v = d[k];
        if (!in[v]) {
            in[v] = 1;
            ++closed;
        }
        for (int w : g.neighbors(v))
            if (!in[w]) {
                in[w] = 1;
                ++closed;
            }
        if (closed > ub) return {d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k) + 1};
    }
    return d;
}

struct NonRedundancy {
    std::vector<Clause> clauses;
    VertexSet excluded;  ///< simplicial vertices
    std::size_t pair_rows = 0;
};

inline bool is_simplicial(const Graph& g, int v) { return g.is_clique(g.neighbors(v)); }

/// Rows that some non-redundant vi-set satisfies: N[v] is never fully chosen,
/// no simplicial vertex is chosen, and x_{v1} ∧ R ⊆ X ⇒ x_{v2} for
/// R = N(v1) \ N[v2] with |R| <= 3 (at most `pair_cap` such rows, smallest
/// |R| first; default 10n).
inline NonRedundancy nonredundancy_constraints(const Graph& g, std::optional<std::size_t> pair_cap = std::nullopt) {
    const int n = g.n();
    const std::size_t cap = pair_cap.value_or(10 * static_cast<std::size_t>(n));
    NonRedundancy out;
    out.excluded = VertexSet(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        Clause c;
        c.neg.push_back(v);
        for (int w : g.neighbors(v)) c.neg.push_back(w);
        std::sort(c.neg.begin(), c.neg.end());
        out.clauses.push_back(std::move(c));
        if (is_simplicial(g, v)) out.excluded.insert(v);
    }
    std::vector<VertexSet> nb(static_cast<std::size_t>(n)), cnb(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        nb[v] = g.neighbor_set(v);
        cnb[v] = g.closed_neighbor_set(v);
    }
    std::vector<std::vector<Clause>> bucket(4);
    std::size_t kept = 0;
    for (int size = 0; size <= 3 && kept < cap; ++size) {
        for (int v1 = 0; v1 < n && bucket[size].size() + kept < cap; ++v1) {
            if (g.degree(v1) < size) continue;
            for (int v2 = 0; v2 < n; ++v2) {
                if (v1 == v2) continue;
                if (static_cast<int>(g.degree(v1) - nb[v1].intersection_size(cnb[v2])) != size) continue;
                Clause c;
                c.pos.push_back(v2);
                c.neg.push_back(v1);
                (nb[v1] - cnb[v2]).for_each([&](int w) { c.neg.push_back(w); });
                bucket[size].push_back(std::move(c));
                if (bucket[size].size() + kept >= cap) break;
            }
        }
        kept += bucket[size].size();
    }
    for (auto& b : bucket)
        for (auto& c : b) out.clauses.push_back(std::move(c));
    out.pair_rows = kept;
    return out;
}

// -------------------------------------------------------------- cut families

struct CutFamilies {
    std::vector<std::vector<int>> D;  ///< pieces, in construction order
    std::vector<std::vector<int>> Q;  ///< minimum vertex cuts
};

/// Recursive minimum-vertex-cut splitting until every piece is a clique.
/// Independent of r.
inline CutFamilies build_cut_families(const Graph& g, const Budget& budget = Budget()) {
    const auto n = static_cast<std::size_t>(g.n());
    CutFamilies fam;
    std::vector<std::vector<int>> work;
    for (auto& c : connected_components(g)) {
        fam.D.push_back(c);
        work.push_back(c);
    }
    while (!work.empty()) {
        if (budget.expired()) throw BudgetExhausted{};
        auto s = std::move(work.back());
        work.pop_back();
        if (g.is_clique(s)) continue;
        auto sset = VertexSet::of(n, s);
        auto cut = min_vertex_cut(g, sset);
        if (!cut) continue;
        auto rest = sset - VertexSet::of(n, cut->cut);
        fam.Q.push_back(cut->cut);
        auto parts = components_within(g, rest);
        for (auto& p : parts) fam.D.push_back(p);
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) work.push_back(std::move(*it));
    }
    return fam;
}

struct CutPair {
    std::vector<int> C;
    std::vector<int> cut;
};

/// Pairs (D, Q) with |D| <= r, Q ⊆ N(D) and conn(D ∪ Q) >= |Q|.
inline std::vector<CutPair> r_cut_pairs(const Graph& g, const CutFamilies& fam, int r) {
    std::vector<CutPair> out;
    if (r < 1) return out;
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<std::vector<int>> by_first(n);
    for (std::size_t i = 0; i < fam.Q.size(); ++i)
        if (!fam.Q[i].empty()) by_first[fam.Q[i].front()].push_back(static_cast<int>(i));
    for (auto& d : fam.D) {
        if (static_cast<int>(d.size()) > r) continue;
        auto dset = VertexSet::of(n, d);
        VertexSet nd(n);
        for (int v : d)
            for (int w : g.neighbors(v)) nd.insert(w);
        nd -= dset;
        std::vector<int> cands;
        nd.for_each([&](int w) {
            for (int qi : by_first[w]) cands.push_back(qi);
        });
        std::sort(cands.begin(), cands.end());
        for (int qi : cands) {
            const auto& q = fam.Q[qi];
            auto qset = VertexSet::of(n, q);
            if (!qset.is_subset_of(nd)) continue;
            auto u = dset | qset;
            if (!is_connected_within(g, u)) continue;
            if (min_vertex_cut_size(g, u) < static_cast<int>(q.size())) continue;
            out.push_back({d, q});
        }
    }
    return out;
}

struct CutReductions {
    std::vector<Clause> clauses;
    VertexSet excluded;
    VertexSet forced;
};

/// With W = N(C) \ cut(C): W ⊆ X ⇒ C ∩ X = ∅, and for |C| = r also
/// W ⊆ X ⇒ cut(C) ⊆ X. Empty W turns both into ground-set reductions.
inline CutReductions cut_constraints(const std::vector<CutPair>& pairs, const Graph& g, int r) {
    const auto n = static_cast<std::size_t>(g.n());
    CutReductions out;
    out.excluded = VertexSet(n);
    out.forced = VertexSet(n);
    for (const auto& p : pairs) {
        VertexSet nc(n);
        for (int v : p.C)
            for (int w : g.neighbors(v)) nc.insert(w);
        nc -= VertexSet::of(n, p.C);
        auto wv = (nc - VertexSet::of(n, p.cut)).to_vector();
        const bool full = static_cast<int>(p.C.size()) == r;
        if (wv.empty()) {
            for (int u : p.C) out.excluded.insert(u);
            if (full)
                for (int c : p.cut) out.forced.insert(c);
            continue;
        }
        for (int u : p.C) {
            Clause c{{}, wv};
            c.neg.push_back(u);
            out.clauses.push_back(std::move(c));
        }
        if (full)
            for (int x : p.cut) out.clauses.push_back(Clause{{x}, wv});
    }
    return out;
}

// --------------------------------------------------------------------- sweep

/// Called after every r with the round and the current bracket.
using ViProgress = std::function<void(const ViRound&, int lb, int ub)>;

/// vi(G) = min_r (r + coc_r(G)), sweeping r upwards from 1 while r < ub with
/// ub starting at cc(G).
inline ViResult compute_vi(const Graph& g, ViVariant variant = ViVariant::improved, const Budget& budget = Budget(),
                           const ViProgress& progress = {}) {
    using Clock = std::chrono::steady_clock;
    const int n = g.n();
    ViResult res;
    res.variant = variant;
    if (n == 0) return res;
    const auto none = VertexSet(static_cast<std::size_t>(n));
    int ub = largest_component_size(g, none);
    std::vector<int> best_x;
    const int h = h_index(g);
    const int global_lb = std::min(ub, h + 1);

    NonRedundancy nr;
    CutFamilies fam;
    bool have_families = false;
    if (variant == ViVariant::improved) {
        nr = nonredundancy_constraints(g);
        try {
            fam = build_cut_families(g, budget);
            have_families = true;
        } catch (const BudgetExhausted&) {
        }
    }

    int lb = ub;  // min over r of (r + lower bound on coc_r), tightened below
    bool timed_out = false;
    int r = 1;
    for (; r < ub; ++r) {
        auto t0 = Clock::now();
        ViRound round;
        round.r = r;
        HittingInstance inst = HittingInstance::over(n);
        inst.obj_upper = ub - 1 - r;
        inst.obj_lower = std::max(0, h + 1 - r);
        auto base = coc_oracle(g, r);
        ObstructionOracle oracle = base;
        bool contradictory = false;
        if (variant == ViVariant::improved) {
            inst.forced_out = reduce_small_components(g, r).excluded | nr.excluded;
            inst.side_clauses = nr.clauses;
            if (have_families) {
                auto cr = cut_constraints(r_cut_pairs(g, fam, r), g, r);
                inst.forced_out |= cr.excluded;
                inst.forced_in = cr.forced;
                for (auto& c : cr.clauses) inst.side_clauses.push_back(std::move(c));
            }
            contradictory = inst.forced_in.intersects(inst.forced_out);
            const int cur_ub = ub;
            oracle.check = [&g, base, cur_ub](const VertexSet& s) {
                auto batch = base.check(s);
                for (auto& d : batch) d = strengthen_obstruction(g, d, cur_ub);
                return batch;
            };
        }
        OptResult opt;
        if (contradictory) {
            opt.status = OptStatus::infeasible;
        } else if (budget.expired()) {
            opt.status = OptStatus::timeout;
            opt.lb = inst.obj_lower.value_or(0);
        } else {
            opt = solve_lazy(oracle, inst, budget);
        }
        round.status = opt.status;
        round.coc = opt.value;
        round.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (opt.status == OptStatus::optimal) {
            if (r + *opt.value < ub) {
                ub = r + *opt.value;
                best_x = opt.witness;
                inst.forced_in.for_each([&](int v) { best_x.push_back(v); });
                std::sort(best_x.begin(), best_x.end());
            }
        } else if (opt.status == OptStatus::timeout) {
            timed_out = true;
            lb = std::min(lb, r + std::max(opt.lb, inst.obj_lower.value_or(0)));
        }
        res.per_r.push_back(round);
        if (progress) progress(round, timed_out ? std::max(global_lb, std::min(lb, ub)) : global_lb, ub);
        if (timed_out && budget.expired()) {
            ++r;
            break;
        }
    }
    // rounds never attempted still satisfy coc_r >= h + 1 - r
    for (int rr = r; rr < ub; ++rr) lb = std::min(lb, rr + std::max(0, h + 1 - rr));
    res.vi = ub;
    res.ub = ub;
    res.exact = !timed_out || lb >= ub;
    res.lb = res.exact ? ub : std::max(global_lb, std::min(lb, ub));
    res.witness = best_x;
    return res;
}

}  // namespace paramreport
