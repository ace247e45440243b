#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/errors.hpp"
#include "paramreport/vertex_set.hpp"

namespace paramreport {

/// Disjunction over 0/1 variables: satisfied when some `pos` variable is 1 or
/// some `neg` variable is 0. Plain hitting constraints have no `neg` part.
struct Clause {
    std::vector<int> pos;
    std::vector<int> neg;
};

struct HittingInstance {
    int universe = 0;                          ///< variables are 0..universe-1
    VertexSet ground_set;                      ///< eligible for the modulator
    std::vector<std::vector<int>> constraints; ///< each needs one chosen vertex
    std::vector<Clause> side_clauses;          ///< extra logical rows
    VertexSet forced_in;
    VertexSet forced_out;
    std::optional<int> obj_lower;
    std::optional<int> obj_upper;

    static HittingInstance over(int n) {
        HittingInstance h;
        h.universe = n;
        h.ground_set = VertexSet::full(static_cast<std::size_t>(n));
        h.forced_in = VertexSet(static_cast<std::size_t>(n));
        h.forced_out = VertexSet(static_cast<std::size_t>(n));
        return h;
    }

    bool eligible(int v) const { return ground_set.contains(v) && !forced_out.contains(v) && !forced_in.contains(v); }
};

/// check(S) returns an empty batch iff S is a modulator; otherwise violated
/// obstructions, each disjoint from S.
struct ObstructionOracle {
    std::function<std::vector<std::vector<int>>(const VertexSet&)> check;
};

enum class OptStatus { optimal, infeasible, timeout };

struct OptStats {
    long long nodes = 0;
    int oracle_calls = 0;
    int rounds = 0;
    std::vector<int> round_values;
    std::vector<std::size_t> round_constraints;
};

struct OptResult {
    OptStatus status = OptStatus::optimal;
    std::optional<int> value;  ///< |witness| + |forced_in| when optimal
    std::vector<int> witness;  ///< chosen vertices, forced_in excluded
    int lb = 0;
    std::optional<int> ub;
    OptStats stats;

    bool feasible() const { return status == OptStatus::optimal; }
};

namespace detail {

/// Exact minimum-weight (unit) satisfying assignment for a clause set over
/// a partially fixed variable vector. Branches on the smallest open clause
/// whose open literals are all positive, bounding by a greedy packing of
/// such clauses.
class ClauseBnB {
public:
    ClauseBnB(int n, const std::vector<Clause>& clauses, const std::vector<signed char>& fixed, const Budget& budget)
        : n_(n), clauses_(clauses), budget_(budget) {
        occ_.assign(static_cast<std::size_t>(n), {});
        const std::size_t c = clauses_.size();
        sat_.assign(c, 0);
        open_pos_.assign(c, 0);
        open_neg_.assign(c, 0);
        for (std::size_t i = 0; i < c; ++i) {
            for (int v : clauses_[i].pos) occ_[v].push_back({static_cast<int>(i), true});
            for (int v : clauses_[i].neg) occ_[v].push_back({static_cast<int>(i), false});
            open_pos_[i] = static_cast<int>(clauses_[i].pos.size());
            open_neg_[i] = static_cast<int>(clauses_[i].neg.size());
        }
        value_.assign(static_cast<std::size_t>(n), -1);
        stamp_.assign(static_cast<std::size_t>(n), 0);
        posocc_.assign(static_cast<std::size_t>(n), 0);
        pure_ = true;
        for (std::size_t i = 0; i < c; ++i) {
            pure_ = pure_ && clauses_[i].neg.empty();
            for (int v : clauses_[i].pos) ++posocc_[v];
        }

        for (int v = 0; v < n; ++v)
            if (fixed[v] >= 0) assign(v, fixed[v]);
        for (std::size_t i = 0; i < c; ++i)
            if (sat_[i] == 0 && open_pos_[i] + open_neg_[i] <= 1) units_.push_back(static_cast<int>(i));
        if (pure_)
            for (int v = 0; v < n; ++v)
                if (value_[v] < 0 && posocc_[v] == 1) low_.push_back(v);
    }

    struct Outcome {
        bool found = false;
        int value = 0;
        std::vector<signed char> assignment;
    };

    /// Best solution with value < cap; stops as soon as value <= target.
    Outcome solve(int cap, int target) {
        best_ = cap;
        target_ = target;
        bool ok = !conflict_ && propagate();
        if (ok) dfs();
        Outcome out;
        out.found = !best_assignment_.empty();
        out.value = best_;
        out.assignment = best_assignment_;
        return out;
    }

    long long nodes() const { return nodes_; }

private:
    struct Occ {
        int clause;
        bool positive;
    };

    void assign(int v, int val) {
        value_[v] = static_cast<signed char>(val);
        trail_.push_back(v);
        ones_ += val;
        for (auto [c, positive] : occ_[v]) {
            (positive ? open_pos_[c] : open_neg_[c])--;
            if (positive == (val == 1) && ++sat_[c] == 1)
                for (int w : clauses_[c].pos)
                    if (--posocc_[w] == 1 && pure_) low_.push_back(w);
            if (sat_[c] == 0) {
                int open = open_pos_[c] + open_neg_[c];
                if (open == 0)
                    conflict_ = true;
                else if (open == 1)
                    units_.push_back(c);
            }
        }
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            int v = trail_.back();
            trail_.pop_back();
            int val = value_[v];
            for (auto [c, positive] : occ_[v]) {
                (positive ? open_pos_[c] : open_neg_[c])++;
                if (positive == (val == 1) && --sat_[c] == 0)
                    for (int w : clauses_[c].pos) ++posocc_[w];
            }
            ones_ -= val;
            value_[v] = -1;
        }
        conflict_ = false;
        units_.clear();
        low_.clear();
    }

    bool propagate() {
        while (!conflict_) {
            if (units_.empty() && !eliminate_dominated()) break;
            if (units_.empty()) continue;
            int c = units_.back();
            units_.pop_back();
            if (sat_[c] > 0) continue;
            if (open_pos_[c] + open_neg_[c] == 0) {
                conflict_ = true;
                break;
            }
            if (open_pos_[c] + open_neg_[c] > 1) continue;
            bool done = false;
            for (int v : clauses_[c].pos)
                if (value_[v] < 0) {
                    assign(v, 1);
                    done = true;
                    break;
                }
            if (!done)
                for (int v : clauses_[c].neg)
                    if (value_[v] < 0) {
                        assign(v, 0);
                        break;
                    }
            if (ones_ >= best_) return false;
        }
        return !conflict_ && ones_ < best_;
    }

    /// Pure hitting instances only: a variable whose single open clause has
    /// another open variable is dominated by it and can be set to 0.
    /// Returns true when something was assigned.
    bool eliminate_dominated() {
        bool any = false;
        while (!low_.empty() && units_.empty() && !conflict_) {
            int u = low_.back();
            low_.pop_back();
            if (value_[u] >= 0 || posocc_[u] != 1) continue;
            for (auto [c, positive] : occ_[u])
                if (sat_[c] == 0) {
                    if (open_pos_[c] >= 2) {
                        assign(u, 0);
                        any = true;
                    }
                    break;
                }
        }
        return any;
    }

    /// Greedy packing of open all-positive clauses into disjoint groups.
    int packing_bound(int& branch_clause) {
        branch_clause = -1;
        int best_size = 1 << 30;
        ++epoch_;
        buckets_.clear();
        for (std::size_t c = 0; c < clauses_.size(); ++c) {
            if (sat_[c] > 0 || open_neg_[c] > 0) continue;
            int k = open_pos_[c];
            if (k < best_size) {
                best_size = k;
                branch_clause = static_cast<int>(c);
            }
            if (static_cast<int>(buckets_.size()) <= k) buckets_.resize(static_cast<std::size_t>(k) + 1);
            buckets_[k].push_back(static_cast<int>(c));
        }
        int lb = 0;
        for (auto& b : buckets_)
            for (int c : b) {
                bool free = true;
                for (int v : clauses_[c].pos)
                    if (value_[v] < 0 && stamp_[v] == epoch_) {
                        free = false;
                        break;
                    }
                if (!free) continue;
                for (int v : clauses_[c].pos)
                    if (value_[v] < 0) stamp_[v] = epoch_;
                ++lb;
            }
        return lb;
    }

    void record() {
        best_ = ones_;
        best_assignment_.assign(value_.begin(), value_.end());
        for (auto& x : best_assignment_)
            if (x < 0) x = 0;
    }

    /// Returns true when the search may stop.
    bool dfs() {
        ++nodes_;
        if (budget_.expired()) throw BudgetExhausted{};
        int branch_clause;
        int lb = packing_bound(branch_clause);
        if (branch_clause < 0) {
            record();
            return best_ <= target_;
        }
        if (ones_ + lb >= best_) return false;
        std::vector<int> lits;
        for (int v : clauses_[branch_clause].pos)
            if (value_[v] < 0) lits.push_back(v);
        std::stable_sort(lits.begin(), lits.end(), [&](int a, int b) { return open_weight(a) > open_weight(b); });
        const std::size_t mark = trail_.size();
        for (std::size_t i = 0; i < lits.size(); ++i) {
            undo_to(mark);
            for (std::size_t j = 0; j < i && !conflict_; ++j) assign(lits[j], 0);
            if (conflict_) break;
            assign(lits[i], 1);
            if (propagate() && dfs()) {
                undo_to(mark);
                return true;
            }
        }
        undo_to(mark);
        return false;
    }

    int open_weight(int v) const { return posocc_[v]; }

    int n_;
    const std::vector<Clause>& clauses_;
    const Budget& budget_;
    std::vector<std::vector<Occ>> occ_;
    std::vector<int> sat_, open_pos_, open_neg_;
    std::vector<signed char> value_;
    std::vector<int> trail_, units_;
    std::vector<std::vector<int>> buckets_;
    std::vector<unsigned> stamp_;
    std::vector<int> posocc_, low_;  ///< unsatisfied clauses with v positive
    bool pure_ = true;
    unsigned epoch_ = 0;
    int ones_ = 0;
    bool conflict_ = false;
    int best_ = 0, target_ = 0;
    long long nodes_ = 0;
    std::vector<signed char> best_assignment_;
};

}  // namespace detail

/// Minimum modulator by lazy obstruction generation: solve the current
/// constraints exactly, ask the oracle, add the violated batch, repeat.
inline OptResult solve_lazy(const ObstructionOracle& oracle, const HittingInstance& inst,
                            const Budget& budget = Budget()) {
    const int n = inst.universe;
    if (inst.forced_in.intersects(inst.forced_out)) throw PreconditionError("forced_in and forced_out overlap");
    OptResult res;
    std::vector<signed char> fixed(static_cast<std::size_t>(n), -1);
    int forced = 0;
    for (int v = 0; v < n; ++v) {
        if (inst.forced_in.contains(v)) {
            fixed[v] = 1;
            ++forced;
        } else if (!inst.eligible(v)) {
            fixed[v] = 0;
        }
    }
    std::vector<Clause> clauses;
    bool dead = false;
    auto add_obstruction = [&](const std::vector<int>& obs) {
        Clause c;
        for (int v : obs)
            if (fixed[v] != 0) c.pos.push_back(v);
        std::sort(c.pos.begin(), c.pos.end());
        c.pos.erase(std::unique(c.pos.begin(), c.pos.end()), c.pos.end());
        if (c.pos.empty()) dead = true;
        clauses.push_back(std::move(c));
    };
    for (auto& c : inst.constraints) add_obstruction(c);
    for (auto& c : inst.side_clauses) clauses.push_back(c);

    int lb = inst.obj_lower.value_or(0);
    lb = std::max(lb, forced);
    const int cap = inst.obj_upper ? *inst.obj_upper + 1 : n + 1;
    res.lb = lb;
    VertexSet current(static_cast<std::size_t>(n));
    bool have_current = false;
    auto infeasible = [&]() {
        res.status = OptStatus::infeasible;
        res.value.reset();
        return res;
    };
    try {
        while (true) {
            if (dead) return infeasible();
            ++res.stats.rounds;
            res.stats.round_constraints.push_back(clauses.size());
            detail::ClauseBnB bnb(n, clauses, fixed, budget);
            auto out = bnb.solve(cap, lb);
            res.stats.nodes += bnb.nodes();
            if (!out.found) return infeasible();
            res.stats.round_values.push_back(out.value);
            lb = std::max(lb, out.value);
            res.lb = lb;
            current = VertexSet(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v)
                if (out.assignment[v] == 1) current.insert(v);
            have_current = true;
            if (budget.expired()) throw BudgetExhausted{};
            auto batch = oracle.check(current);
            ++res.stats.oracle_calls;
            if (batch.empty()) {
                res.status = OptStatus::optimal;
                res.value = out.value;
                res.ub = out.value;
                for (int v : current.to_vector())
                    if (!inst.forced_in.contains(v)) res.witness.push_back(v);
                return res;
            }
            for (auto& obs : batch) add_obstruction(obs);
        }
    } catch (const BudgetExhausted&) {
        res.status = OptStatus::timeout;
        res.value.reset();
        // Greedy repair of the last round's solution gives an upper bound.
        VertexSet s = have_current ? current : inst.forced_in;
        for (int guard = 0; guard <= n; ++guard) {
            auto batch = oracle.check(s);
            if (batch.empty()) {
                res.ub = static_cast<int>(s.size());
                break;
            }
            bool progress = false;
            for (auto& obs : batch) {
                bool hit = false;
                for (int v : obs) hit |= s.contains(v);
                if (hit) continue;
                for (int v : obs)
                    if (fixed[v] != 0) {
                        s.insert(v);
                        progress = true;
                        break;
                    }
            }
            if (!progress) break;
        }
        return res;
    }
}

/// LP-format text of the instance (explicit rows only; lazily generated
/// obstructions are not part of it).
inline std::string export_constraints(const HittingInstance& inst, bool minimize = true) {
    std::ostringstream out;
    std::vector<int> vars;
    for (int v = 0; v < inst.universe; ++v)
        if (inst.ground_set.contains(v) || inst.forced_in.contains(v)) vars.push_back(v);
    auto sum = [](const std::vector<int>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += " + ";
            s += "x" + std::to_string(xs[i]);
        }
        return s;
    };
    out << (minimize ? "Minimize\n" : "Maximize\n");
    out << " obj: " << (vars.empty() ? std::string("0") : sum(vars)) << "\n";
    out << "Subject To\n";
    int row = 0;
    for (auto c : inst.constraints) {
        std::sort(c.begin(), c.end());
        out << " c" << row++ << ": " << sum(c) << " >= 1\n";
    }
    for (const auto& c : inst.side_clauses) {
        std::string lhs = sum(c.pos);
        for (int v : c.neg) lhs += (lhs.empty() ? "- x" : " - x") + std::to_string(v);
        out << " c" << row++ << ": " << lhs << " >= " << 1 - static_cast<int>(c.neg.size()) << "\n";
    }
    if (inst.obj_upper) out << " obj_upper: " << sum(vars) << " <= " << *inst.obj_upper << "\n";
    if (inst.obj_lower) out << " obj_lower: " << sum(vars) << " >= " << *inst.obj_lower << "\n";
    out << "Bounds\n";
    for (int v = 0; v < inst.universe; ++v) {
        if (inst.forced_in.contains(v))
            out << " x" << v << " = 1\n";
        else if (inst.forced_out.contains(v) && inst.ground_set.contains(v))
            out << " x" << v << " = 0\n";
    }
    out << "Binary\n";
    for (int v : vars) out << " x" << v << "\n";
    out << "End\n";
    return out.str();
}

}  // namespace paramreport
