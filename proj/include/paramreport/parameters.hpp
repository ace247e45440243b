#pragma once

#include <string>
#include <vector>

#include "paramreport/degree.hpp"
#include "paramreport/errors.hpp"
#include "paramreport/modular.hpp"
#include "paramreport/modulators.hpp"
#include "paramreport/neighborhood.hpp"
#include "paramreport/quotient_lift.hpp"
#include "paramreport/split.hpp"
#include "paramreport/treedepth.hpp"
#include "paramreport/treewidth.hpp"
#include "paramreport/vertex_integrity.hpp"

namespace paramreport {

struct ParamOptions {
    ViVariant vi_variant = ViVariant::improved;
    ViProgress vi_progress;
};

namespace detail {

inline Bounds from_opt(const OptResult& r, const Graph& g) {
    if (r.status == OptStatus::optimal) return Bounds::of(*r.value);
    if (r.status == OptStatus::infeasible) throw IntegrityError("modulator instance infeasible");
    return {r.lb, r.ub.value_or(g.n())};
}

template <typename F>
ParamFn exact_fn(std::string name, F f) {
    return {std::move(name), [f](const Graph& g, const Budget&) { return Bounds::of(f(g)); }, true};
}

template <typename F>
ParamFn modulator_fn(std::string name, F f) {
    return {std::move(name), [f](const Graph& g, const Budget& b) { return from_opt(f(g, b), g); }, true};
}

}  // namespace detail

/// The base parameters in report order. Every one of them is monotone under
/// induced subgraphs.
inline std::vector<ParamFn> base_parameters(const ParamOptions& opt = {}) {
    using namespace detail;
    std::vector<ParamFn> ps;
    ps.push_back(exact_fn("n", [](const Graph& g) { return g.n(); }));
    ps.push_back(exact_fn("m", [](const Graph& g) { return static_cast<int>(g.m()); }));
    ps.push_back(exact_fn("maxdeg", max_degree));
    ps.push_back(exact_fn("hindex", h_index));
    ps.push_back(exact_fn("degeneracy", [](const Graph& g) { return degeneracy(g).value; }));
    ps.push_back(exact_fn("core2", [](const Graph& g) { return k_core_size(g, 2); }));
    ps.push_back(exact_fn("core3", [](const Graph& g) { return k_core_size(g, 3); }));
    ps.push_back(exact_fn("closure", closure_number));
    ps.push_back(exact_fn("weak_closure", weak_closure_number));
    ps.push_back(exact_fn("nd", neighborhood_diversity));
    ps.push_back(exact_fn("dilworth", dilworth_number));
    ps.push_back(exact_fn("mw", [](const Graph& g) { return modular_width(g); }));
    ps.push_back({"sw",
                  [](const Graph& g, const Budget& b) {
                      auto sd = split_decomposition(g, b);
                      int w = split_width(sd);
                      return sd.complete ? Bounds::of(w) : Bounds{std::min(g.n(), 3), w};
                  },
                  true});
    ps.push_back(modulator_fn("vc", [](const Graph& g, const Budget& b) { return compute_vc(g, b); }));
    ps.push_back(modulator_fn("bdd1", [](const Graph& g, const Budget& b) { return compute_bdd(g, 1, b); }));
    ps.push_back(modulator_fn("bdd2", [](const Graph& g, const Budget& b) { return compute_bdd(g, 2, b); }));
    ps.push_back(modulator_fn("pvc4", [](const Graph& g, const Budget& b) { return compute_pvc4(g, b); }));
    ps.push_back(modulator_fn("cvd", [](const Graph& g, const Budget& b) { return compute_cvd(g, b); }));
    ps.push_back(modulator_fn("dco", [](const Graph& g, const Budget& b) { return compute_dco(g, b); }));
    ps.push_back(modulator_fn("fvs", [](const Graph& g, const Budget& b) { return compute_fvs(g, b); }));
    for (int r = 1; r <= 3; ++r)
        ps.push_back(modulator_fn("coc" + std::to_string(r), [r](const Graph& g, const Budget& b) {
            return compute_coc(g, r, std::nullopt, std::nullopt, b);
        }));
    ps.push_back({"vi",
                  [opt](const Graph& g, const Budget& b) {
                      auto r = compute_vi(g, opt.vi_variant, b, opt.vi_progress);
                      return Bounds{r.lb, r.ub};
                  },
                  true});
    ps.push_back({"tw",
                  [](const Graph& g, const Budget& b) {
                      auto r = treewidth_exact(g, b);
                      return Bounds{r.lb, r.ub};
                  },
                  true});
    ps.push_back({"td",
                  [](const Graph& g, const Budget& b) {
                      auto r = treedepth_exact(g, b);
                      return Bounds{r.lb, r.ub};
                  },
                  true});
    return ps;
}

inline std::string canonical_parameter_name(const std::string& name) {
    if (name == "Delta" || name == "delta") return "maxdeg";
    return name;
}

/// Resolves a base name, an alias, or "<base>_nd" / "<base>_mw".
inline ParamFn find_parameter(const std::string& raw, const ParamOptions& opt = {}) {
    auto name = canonical_parameter_name(raw);
    auto base = base_parameters(opt);
    for (auto& p : base)
        if (p.name == name) return p;
    for (const char* suffix : {"_nd", "_mw"}) {
        const std::string s = suffix;
        if (name.size() <= s.size() || name.compare(name.size() - s.size(), s.size(), s) != 0) continue;
        auto inner = canonical_parameter_name(name.substr(0, name.size() - s.size()));
        for (auto& p : base)
            if (p.name == inner) return s == "_nd" ? lift_nd(p) : lift_mw(p);
    }
    throw PreconditionError("unknown parameter: " + raw);
}

/// Base parameters followed by the _nd and _mw lift of each monotone one.
inline std::vector<std::string> all_parameter_names() {
    std::vector<std::string> out;
    auto base = base_parameters();
    for (auto& p : base) out.push_back(p.name);
    for (const char* suffix : {"_nd", "_mw"})
        for (auto& p : base)
            if (p.monotone) out.push_back(p.name + suffix);
    return out;
}

}  // namespace paramreport
