#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <queue>
#include <vector>

#include "paramreport/errors.hpp"
#include "paramreport/graph.hpp"

namespace paramreport {

namespace detail {

/// Unit vertex-capacity flow network on G[X]: local vertex i becomes
/// in-node 2i and out-node 2i+1.
class VertexSplitFlow {
public:
    VertexSplitFlow(const Graph& g, const std::vector<int>& xs) : k_(static_cast<int>(xs.size())) {
        std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
        for (int i = 0; i < k_; ++i) pos[xs[i]] = i;
        head_.assign(2 * k_, -1);
        for (int i = 0; i < k_; ++i) {
            inner_.push_back(add_arc(2 * i, 2 * i + 1, 1));
            for (int w : g.neighbors(xs[i]))
                if (pos[w] >= 0) add_arc(2 * i + 1, 2 * pos[w], kInf);
        }
        base_cap_.resize(cap_.size());
        std::copy(cap_.begin(), cap_.end(), base_cap_.begin());
    }

    /// Max number of internally vertex-disjoint s-t paths, stopping at `limit`.
    int max_flow(int s, int t, int limit) {
        std::copy(base_cap_.begin(), base_cap_.end(), cap_.begin());
        cap_[inner_[s]] = kInf;
        cap_[inner_[t]] = kInf;
        int source = 2 * s + 1, sink = 2 * t;
        int flow = 0;
        std::vector<int> via(2 * k_);
        while (flow < limit) {
            std::fill(via.begin(), via.end(), -1);
            std::queue<int> q;
            q.push(source);
            via[source] = -2;
            while (!q.empty() && via[sink] == -1) {
                int x = q.front();
                q.pop();
                for (int a = head_[x]; a != -1; a = next_[a])
                    if (cap_[a] > 0 && via[to_[a]] == -1) {
                        via[to_[a]] = a;
                        q.push(to_[a]);
                    }
            }
            if (via[sink] == -1) break;
            for (int x = sink; x != source;) {
                int a = via[x];
                cap_[a] -= 1;
                cap_[a ^ 1] += 1;
                x = to_[a ^ 1];
            }
            ++flow;
        }
        return flow;
    }

    /// After a non-capped max_flow: local ids whose split arc is saturated and
    /// whose in-node is reachable from the source (the source-closest cut).
    std::vector<int> source_side_cut(int s) const {
        std::vector<char> seen(2 * k_, 0);
        std::vector<int> stack{2 * s + 1};
        seen[2 * s + 1] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int a = head_[x]; a != -1; a = next_[a])
                if (cap_[a] > 0 && !seen[to_[a]]) {
                    seen[to_[a]] = 1;
                    stack.push_back(to_[a]);
                }
        }
        std::vector<int> cut;
        for (int i = 0; i < k_; ++i)
            if (seen[2 * i] && !seen[2 * i + 1]) cut.push_back(i);
        return cut;
    }

private:
    static constexpr int kInf = INT_MAX / 4;

    int add_arc(int from, int to, int cap) {
        int id = static_cast<int>(to_.size());
        to_.push_back(to);
        cap_.push_back(cap);
        next_.push_back(head_[from]);
        head_[from] = id;
        to_.push_back(from);
        cap_.push_back(0);
        next_.push_back(head_[to]);
        head_[to] = id + 1;
        return id;
    }

    int k_;
    std::vector<int> head_, to_, cap_, next_, base_cap_, inner_;
};

}  // namespace detail

struct VertexCut {
    std::vector<int> cut;  ///< original vertex ids, sorted
    int s = -1, t = -1;    ///< terminal pair that realised it
};

/// A minimum vertex cut of G[X], or nullopt when G[X] is complete.
/// Terminal pairs (s,t), s<t non-adjacent, are scanned lexicographically and
/// the first pair attaining the minimum wins; its source-closest cut is used.
inline std::optional<VertexCut> min_vertex_cut(const Graph& g, const VertexSet& x) {
    if (x.empty()) throw PreconditionError("vertex set is empty");
    if (!is_connected_within(g, x)) throw PreconditionError("G[X] is not connected");
    auto xs = x.to_vector();
    const int k = static_cast<int>(xs.size());
    detail::VertexSplitFlow net(g, xs);
    int best = k;
    int bs = -1, bt = -1;
    // Among any best+1 vertices one avoids a minimum cut, so only the first
    // best+1 sources need scanning.
    for (int i = 0; i < k && i <= best; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (g.adjacent(xs[i], xs[j])) continue;
            int f = net.max_flow(i, j, best);
            if (f < best) {
                best = f;
                bs = i;
                bt = j;
            }
        }
        if (best <= 1 && bs >= 0) break;
    }
    if (bs < 0) return std::nullopt;
    net.max_flow(bs, bt, k);
    VertexCut out;
    for (int i : net.source_side_cut(bs)) out.cut.push_back(xs[i]);
    std::sort(out.cut.begin(), out.cut.end());
    out.s = xs[bs];
    out.t = xs[bt];
    return out;
}

/// conn(X); a complete G[X] yields |X|.
inline int min_vertex_cut_size(const Graph& g, const VertexSet& x) {
    auto c = min_vertex_cut(g, x);
    return c ? static_cast<int>(c->cut.size()) : static_cast<int>(x.size());
}

inline int min_vertex_cut_size(const Graph& g, std::span<const int> x) {
    return min_vertex_cut_size(g, VertexSet::of(static_cast<std::size_t>(g.n()), x));
}

}  // namespace paramreport
