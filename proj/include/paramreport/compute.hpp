#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "paramreport/budget.hpp"
#include "paramreport/graph.hpp"
#include "paramreport/parameters.hpp"
#include "paramreport/records.hpp"

namespace paramreport {

struct NamedGraph {
    std::string name;
    Graph graph;
};

struct ComputeOptions {
    double timeout_secs = 0;  ///< per cell; <= 0 means unlimited
    unsigned jobs = 1;
    ParamOptions params;
    /// Per-r vertex integrity progress, tagged with the instance name. May be
    /// called from several workers at once.
    std::function<void(const std::string& instance, const ViRound&, int lb, int ub)> vi_progress;
};

/// Evaluates one cell; never throws.
inline ResultRecord compute_cell(const NamedGraph& g, const ParamFn& k, const ComputeOptions& opt) {
    ResultRecord r;
    r.instance = g.name;
    r.parameter = k.name;
    const auto start = std::chrono::steady_clock::now();
    try {
        Budget budget = opt.timeout_secs > 0 ? Budget::seconds(opt.timeout_secs) : Budget();
        auto b = k.eval(g.graph, budget);
        if (b.exact()) {
            r.status = CellStatus::exact;
            r.value = b.lb;
        } else {
            r.status = CellStatus::timeout;
            r.lb = b.lb;
            r.ub = b.ub;
        }
    } catch (const std::exception& e) {
        r.status = CellStatus::error;
        r.message = e.what();
    } catch (const BudgetExhausted&) {
        r.status = CellStatus::timeout;
    }
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Every (graph, parameter) cell, graph-major in input order regardless of
/// completion order. Unknown parameter names become error cells.
inline std::vector<ResultRecord> run_compute(const std::vector<NamedGraph>& graphs,
                                             const std::vector<std::string>& params, const ComputeOptions& opt = {}) {
    std::vector<std::optional<ParamFn>> fns;
    std::vector<std::string> errors;
    for (auto& p : params) {
        try {
            fns.push_back(find_parameter(p, opt.params));
            errors.emplace_back();
        } catch (const PreconditionError& e) {
            fns.push_back(std::nullopt);
            errors.push_back(e.what());
        }
    }
    const std::size_t cells = graphs.size() * params.size();
    std::vector<ResultRecord> out(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next++) < cells;) {
            const auto& g = graphs[c / params.size()];
            const auto j = c % params.size();
            if (fns[j] && opt.vi_progress && fns[j]->name.starts_with("vi")) {
                ParamOptions po = opt.params;
                po.vi_progress = [&opt, name = g.name](const ViRound& r, int lb, int ub) {
                    opt.vi_progress(name, r, lb, ub);
                };
                out[c] = compute_cell(g, find_parameter(params[j], po), opt);
            } else if (fns[j]) {
                out[c] = compute_cell(g, *fns[j], opt);
            } else {
                out[c].instance = g.name;
                out[c].parameter = params[j];
                out[c].status = CellStatus::error;
                out[c].message = errors[j];
            }
        }
    };
    const unsigned jobs = std::max(1U, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace paramreport
