#include <gtest/gtest.h>

#include <chrono>

#include "oracles.hpp"
#include "paramreport/io.hpp"
#include "paramreport/modulators.hpp"

using namespace paramreport;

namespace {

Graph load(const std::string& name) {
    return load_graph_file(std::string(PARAMREPORT_DATA_DIR) + "/graphs/" + name + ".edgelist").graph;
}

ObstructionOracle always_feasible() {
    return {[](const VertexSet&) { return std::vector<std::vector<int>>{}; }};
}

oracle::Mask residual(const Graph& g, const OptResult& r) {
    oracle::Mask alive = (oracle::Mask{1} << g.n()) - 1;
    for (int v : r.witness) alive &= ~(oracle::Mask{1} << v);
    return alive;
}

int val(const OptResult& r) {
    EXPECT_EQ(r.status, OptStatus::optimal);
    EXPECT_EQ(r.value.value_or(-1), static_cast<int>(r.witness.size()));
    return r.value.value_or(-1);
}

}  // namespace

TEST(SolveLazy, CommonElement) {
    auto inst = HittingInstance::over(3);
    inst.constraints = {{0, 1}, {1, 2}};
    auto r = solve_lazy(always_feasible(), inst);
    EXPECT_EQ(r.value, 1);
    EXPECT_EQ(r.witness, std::vector<int>{1});
}

TEST(SolveLazy, NoConstraints) {
    auto r = solve_lazy(always_feasible(), HittingInstance::over(4));
    EXPECT_EQ(r.value, 0);
    EXPECT_TRUE(r.witness.empty());
}

TEST(SolveLazy, TriangleCover) {
    auto k3 = make::complete(3);
    EXPECT_EQ(val(solve_with(k3, vc_oracle(k3), Budget())), 2);
}

TEST(SolveLazy, ForcedAndBounds) {
    auto inst = HittingInstance::over(4);
    inst.constraints = {{0, 1}, {2, 3}};
    inst.forced_in.insert(2);
    inst.forced_out.insert(1);
    auto r = solve_lazy(always_feasible(), inst);
    EXPECT_EQ(r.value, 2);
    EXPECT_EQ(r.witness, std::vector<int>{0});

    inst.obj_upper = 1;
    EXPECT_EQ(solve_lazy(always_feasible(), inst).status, OptStatus::infeasible);

    auto dead = HittingInstance::over(2);
    dead.constraints = {{0}};
    dead.forced_out.insert(0);
    EXPECT_EQ(solve_lazy(always_feasible(), dead).status, OptStatus::infeasible);

    auto clash = HittingInstance::over(2);
    clash.forced_in.insert(0);
    clash.forced_out.insert(0);
    EXPECT_THROW(solve_lazy(always_feasible(), clash), PreconditionError);
}

TEST(SolveLazy, SideClauses) {
    // x0 forces x1; hitting {0} then needs both
    auto inst = HittingInstance::over(3);
    inst.constraints = {{0}};
    inst.side_clauses.push_back(Clause{{1}, {0}});
    auto r = solve_lazy(always_feasible(), inst);
    EXPECT_EQ(r.value, 2);
    EXPECT_EQ(r.witness, (std::vector<int>{0, 1}));
}

TEST(SolveLazy, TimeoutCarriesBounds) {
    auto g = oracle::random_graph(70, 0.3, 7);
    auto r = solve_with(g, vc_oracle(g), Budget(std::chrono::milliseconds(1)));
    if (r.status == OptStatus::timeout) {
        EXPECT_FALSE(r.value);
        ASSERT_TRUE(r.ub);
        EXPECT_LE(r.lb, *r.ub);
    } else {
        EXPECT_EQ(r.status, OptStatus::optimal);
    }
}

TEST(Modulators, VertexCoverExamples) {
    EXPECT_EQ(val(compute_vc(load("karate-club"))), 14);
    EXPECT_EQ(val(compute_vc(load("florentine_families"))), 8);
    EXPECT_EQ(val(compute_vc(make::path(4))), 2);
}

TEST(Modulators, BoundedDegreeExamples) {
    EXPECT_EQ(val(compute_bdd(make::complete(3), 1)), 1);
    EXPECT_EQ(val(compute_bdd(make::complete(4), 2)), 1);
    EXPECT_EQ(val(compute_bdd(make::star(5), 2)), 1);
    EXPECT_THROW(compute_bdd(make::star(5), 0), PreconditionError);
}

TEST(Modulators, PathCoverExamples) {
    EXPECT_EQ(val(compute_pvc4(make::path(4))), 1);
    // deleting the middle vertex of P7 leaves two P3s
    EXPECT_EQ(val(compute_pvc4(make::path(7))), oracle::pvc4(make::path(7)));
    EXPECT_EQ(oracle::pvc4(make::path(7)), 1);
    EXPECT_EQ(val(compute_pvc4(make::path(8))), 2);
    EXPECT_EQ(val(compute_pvc4(make::complete(3))), 0);
}

TEST(Modulators, ClusterExamples) {
    EXPECT_EQ(val(compute_cvd(make::path(3))), 1);
    EXPECT_EQ(val(compute_cvd(make::path(4))), 1);
    EXPECT_EQ(val(compute_cvd(make::complete(4))), 0);
}

TEST(Modulators, CographExamples) {
    EXPECT_EQ(val(compute_dco(make::path(4))), 1);
    EXPECT_EQ(val(compute_dco(make::cycle(5))), 2);
    EXPECT_EQ(val(compute_dco(make::complete_bipartite(3, 4))), 0);
}

TEST(Modulators, FeedbackExamples) {
    EXPECT_EQ(val(compute_fvs(make::cycle(5))), 1);
    EXPECT_EQ(val(compute_fvs(make::complete(4))), 2);
    EXPECT_EQ(val(compute_fvs(make::star(6))), 0);
}

TEST(Modulators, ComponentOrderExamples) {
    EXPECT_EQ(val(compute_coc(make::path(4), 2)), 1);
    EXPECT_EQ(val(compute_coc(make::complete(5), 2)), 3);
    EXPECT_THROW(coc_oracle(make::path(3), 0), PreconditionError);
}

TEST(Modulators, ExactOnRandomGraphs) {
    for (auto& g : oracle::random_family(200, 10, 1111)) {
        auto vc = compute_vc(g);
        auto b1 = compute_bdd(g, 1), b2 = compute_bdd(g, 2);
        auto p4 = compute_pvc4(g), cv = compute_cvd(g), dc = compute_dco(g), fv = compute_fvs(g);
        auto c1 = compute_coc(g, 1), c2 = compute_coc(g, 2), c3 = compute_coc(g, 3);
        EXPECT_EQ(val(vc), oracle::vc(g));
        EXPECT_EQ(val(b1), oracle::bdd(g, 1));
        EXPECT_EQ(val(b2), oracle::bdd(g, 2));
        EXPECT_EQ(val(p4), oracle::pvc4(g));
        EXPECT_EQ(val(cv), oracle::cvd(g));
        EXPECT_EQ(val(dc), oracle::dco(g));
        EXPECT_EQ(val(fv), oracle::fvs(g));
        EXPECT_EQ(val(c1), oracle::coc(g, 1));
        EXPECT_EQ(val(c2), oracle::coc(g, 2));
        EXPECT_EQ(val(c3), oracle::coc(g, 3));
        EXPECT_EQ(*c1.value, *vc.value);

        // witnesses pass a direct check of the residual graph
        EXPECT_EQ(oracle::max_deg_in(g, residual(g, vc)), 0);
        EXPECT_LE(oracle::max_deg_in(g, residual(g, b1)), 1);
        EXPECT_LE(oracle::max_deg_in(g, residual(g, b2)), 2);
        EXPECT_FALSE(oracle::has_p4_subgraph(g, residual(g, p4)));
        EXPECT_FALSE(oracle::has_induced_p3(g, residual(g, cv)));
        EXPECT_FALSE(oracle::has_induced_p4(g, residual(g, dc)));
        EXPECT_TRUE(oracle::is_forest(g, residual(g, fv)));
        EXPECT_LE(oracle::largest_component(g, residual(g, c2)), 2);
        EXPECT_LE(oracle::largest_component(g, residual(g, c3)), 3);

        EXPECT_GE(*vc.value, *b1.value);
        EXPECT_GE(*b1.value, *b2.value);
        EXPECT_GE(*b1.value, *cv.value);
        EXPECT_GE(*b1.value, *p4.value);
        EXPECT_GE(*p4.value, *dc.value);
        EXPECT_GE(*cv.value, *dc.value);
        EXPECT_GE(*b1.value, *fv.value);
    }
}

TEST(Modulators, OraclesReturnDisjointBatchesMissingS) {
    for (auto& g : oracle::random_family(100, 14, 2222, 5)) {
        VertexSet s(static_cast<std::size_t>(g.n()));
        s.insert(0);
        for (auto o : {vc_oracle(g), bdd_oracle(g, 1), pvc4_oracle(g), cvd_oracle(g), dco_oracle(g), fvs_oracle(g)}) {
            auto batch = o.check(s);
            EXPECT_LE(batch.size(), kObstructionBatch);
            std::vector<int> seen(static_cast<std::size_t>(g.n()), 0);
            for (auto& obs : batch) {
                EXPECT_FALSE(obs.empty());
                for (int v : obs) {
                    EXPECT_FALSE(s.contains(v));
                    EXPECT_EQ(seen[v]++, 0);
                }
            }
        }
    }
}

TEST(Modulators, ComponentBatchesAreDistinctConnectedSets) {
    for (auto& g : oracle::random_family(100, 14, 2223, 5)) {
        VertexSet s(static_cast<std::size_t>(g.n()));
        s.insert(0);
        for (int r = 1; r <= 3; ++r) {
            auto batch = coc_oracle(g, r).check(s);
            EXPECT_LE(batch.size(), kObstructionBatch);
            EXPECT_EQ(batch.empty(), largest_component_size(g, s) <= r);
            std::vector<std::vector<int>> seen;
            for (auto obs : batch) {
                EXPECT_EQ(static_cast<int>(obs.size()), r + 1);
                auto vs = VertexSet::of(static_cast<std::size_t>(g.n()), obs);
                EXPECT_FALSE(vs.intersects(s));
                EXPECT_TRUE(is_connected_within(g, vs));
                std::sort(obs.begin(), obs.end());
                EXPECT_EQ(std::count(seen.begin(), seen.end(), obs), 0);
                seen.push_back(obs);
            }
        }
    }
}

TEST(Modulators, ShortestCycleFirst) {
    // triangle sharing vertex 0 with a 5-cycle
    auto g = Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}});
    auto batch = fvs_oracle(g).check(VertexSet(7));
    ASSERT_FALSE(batch.empty());
    EXPECT_EQ(batch.front().size(), 3u);
}

TEST(Modulators, LazinessIsMonotone) {
    for (auto& g : oracle::random_family(60, 12, 3333, 6)) {
        for (auto r : {compute_fvs(g), compute_dco(g), compute_coc(g, 2)}) {
            auto& st = r.stats;
            ASSERT_EQ(st.round_values.size(), st.round_constraints.size());
            for (std::size_t i = 1; i < st.round_values.size(); ++i) {
                EXPECT_LE(st.round_values[i - 1], st.round_values[i]);
                EXPECT_LT(st.round_constraints[i - 1], st.round_constraints[i]);
            }
            EXPECT_EQ(st.oracle_calls, st.rounds);
        }
    }
}

TEST(Export, LpText) {
    auto inst = HittingInstance::over(3);
    inst.constraints = {{1, 0}};
    auto text = export_constraints(inst);
    EXPECT_NE(text.find("Minimize"), std::string::npos);
    EXPECT_NE(text.find("x0 + x1 >= 1"), std::string::npos);
    EXPECT_NE(text.find("Binary"), std::string::npos);

    inst.forced_in.insert(2);
    EXPECT_NE(export_constraints(inst).find("x2 = 1"), std::string::npos);

    inst.obj_upper = 5;
    EXPECT_NE(export_constraints(inst).find("x0 + x1 + x2 <= 5"), std::string::npos);
    EXPECT_EQ(export_constraints(inst), export_constraints(inst));
}
