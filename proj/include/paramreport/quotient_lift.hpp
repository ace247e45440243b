#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/errors.hpp"
#include "paramreport/graph.hpp"
#include "paramreport/modular.hpp"
#include "paramreport/neighborhood.hpp"

namespace paramreport {

/// Bracket on a parameter value; exact when lb == ub.
struct Bounds {
    int lb = 0;
    int ub = 0;
    bool exact() const { return lb == ub; }
    static Bounds of(int v) { return {v, v}; }
};

struct ParamFn {
    std::string name;
    std::function<Bounds(const Graph&, const Budget&)> eval;
    bool monotone = false;  ///< under induced subgraphs; required for lifting
};

namespace detail {

inline void require_monotone(const ParamFn& k) {
    if (!k.monotone) throw PreconditionError(k.name + " is not monotone under induced subgraphs; cannot lift");
}

}  // namespace detail

/// k_nd(G) = k(G_nd).
inline Bounds param_nd(const ParamFn& k, const Graph& g, const Budget& budget = Budget()) {
    detail::require_monotone(k);
    return k.eval(twin_quotient(g), budget);
}

/// Max of k over the quotient graphs of `md`, evaluating each distinct
/// quotient once. An empty or single-leaf tree gives k of that graph.
inline Bounds param_mw(const ParamFn& k, const ModularDecomposition& md, const Budget& budget = Budget()) {
    detail::require_monotone(k);
    if (md.n <= 1) return k.eval(make::edgeless(md.n), budget);
    std::vector<Graph> seen;
    Bounds out{0, 0};
    bool first = true;
    for (auto& node : md.nodes) {
        if (node.kind == MDKind::leaf) continue;
        if (std::find(seen.begin(), seen.end(), node.quotient) != seen.end()) continue;
        seen.push_back(node.quotient);
        auto b = k.eval(node.quotient, budget);
        out.lb = first ? b.lb : std::max(out.lb, b.lb);
        out.ub = first ? b.ub : std::max(out.ub, b.ub);
        first = false;
    }
    return out;
}

/// k_mw(G) on the canonical decomposition with parallel and series nodes
/// binarised.
inline Bounds param_mw(const ParamFn& k, const Graph& g, const Budget& budget = Budget()) {
    detail::require_monotone(k);
    return param_mw(k, binarize(modular_decomposition(g), Binarization::left_deep), budget);
}

/// "<name>_nd" / "<name>_mw" wrappers. Not flagged monotone, so they are
/// never lifted twice.
inline ParamFn lift_nd(const ParamFn& k) {
    detail::require_monotone(k);
    return {k.name + "_nd", [k](const Graph& g, const Budget& b) { return param_nd(k, g, b); }, false};
}
inline ParamFn lift_mw(const ParamFn& k) {
    detail::require_monotone(k);
    return {k.name + "_mw", [k](const Graph& g, const Budget& b) { return param_mw(k, g, b); }, false};
}

}  // namespace paramreport
