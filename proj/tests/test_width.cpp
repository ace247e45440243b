#include <gtest/gtest.h>

#include <chrono>

#include "oracles.hpp"
#include "paramreport/io.hpp"
#include "paramreport/modulators.hpp"
#include "paramreport/treedepth.hpp"
#include "paramreport/treewidth.hpp"

using namespace paramreport;

namespace {

Graph load(const std::string& name) {
    return load_graph_file(std::string(PARAMREPORT_DATA_DIR) + "/graphs/" + name + ".edgelist").graph;
}

Graph grid(int rows, int cols) {
    std::vector<Edge> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    return Graph::from_edges(rows * cols, std::span<const Edge>(e));
}

Graph random_tree(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> e;
    for (int v = 1; v < n; ++v) e.emplace_back(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
    return Graph::from_edges(n, std::span<const Edge>(e));
}

int tw(const Graph& g) {
    auto r = treewidth_exact(g);
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(is_tree_decomposition(g, r.decomposition));
    EXPECT_EQ(r.decomposition.width(), r.tw);
    return r.tw;
}

int td(const Graph& g) {
    auto r = treedepth_exact(g);
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(is_treedepth_decomposition(g, r.decomposition));
    EXPECT_EQ(r.decomposition.depth(), r.td);
    return r.td;
}

}  // namespace

TEST(Treewidth, SmallFamilies) {
    EXPECT_EQ(tw(Graph()), -1);
    EXPECT_EQ(tw(make::edgeless(4)), 0);
    EXPECT_EQ(tw(make::complete(5)), 4);
    EXPECT_EQ(tw(make::cycle(7)), 2);
    EXPECT_EQ(tw(make::complete_bipartite(3, 5)), 3);
    EXPECT_EQ(tw(grid(3, 3)), 3);
    EXPECT_EQ(tw(grid(4, 5)), 4);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) EXPECT_EQ(tw(random_tree(30, seed)), 1);
    EXPECT_EQ(tw(make::path(2)), 1);
    EXPECT_EQ(tw(make::star(9)), 1);
}

TEST(Treewidth, NamedInstances) {
    EXPECT_EQ(tw(load("florentine_families")), 3);
    EXPECT_EQ(tw(load("karate-club")), 5);
}

TEST(Treewidth, BlocksAreGlued) {
    // two K4s sharing vertex 3, with a pendant path
    std::vector<Edge> e;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            e.emplace_back(a, b);
            e.emplace_back(a == 3 ? 3 : a + 4, b == 3 ? 3 : b + 4);
        }
    e.emplace_back(7, 8);
    e.emplace_back(8, 9);
    auto g = Graph::from_edges(10, std::span<const Edge>(e));
    EXPECT_EQ(detail::biconnected_blocks(g).size(), 4u);
    EXPECT_EQ(tw(g), 3);
    EXPECT_EQ(tw(make::disjoint_union(make::complete(3), make::cycle(5))), 2);
}

TEST(Treewidth, MatchesEliminationOrderOracle) {
    for (auto& g : oracle::random_family(200, 8, 8080)) EXPECT_EQ(tw(g), oracle::tw(g)) << write_edgelist(g);
}

TEST(Treewidth, LargerSparseGraphs) {
    for (auto& g : oracle::sparse_family(20, 20, 32, 8181, 2.0, 4.0)) {
        auto r = treewidth_exact(g);
        ASSERT_TRUE(r.exact);
        EXPECT_TRUE(is_tree_decomposition(g, r.decomposition));
        EXPECT_EQ(r.decomposition.width(), r.tw);
        EXPECT_LE(degeneracy(g).value, r.tw);
        EXPECT_LE(r.tw, *compute_fvs(g).value + 1);
    }
}

TEST(Treewidth, TimeoutBrackets) {
    auto g = oracle::random_graph(70, 0.3, 99);
    auto r = treewidth_exact(g, Budget(std::chrono::milliseconds(20)));
    EXPECT_FALSE(r.exact);
    EXPECT_LE(r.lb, r.ub);
    EXPECT_EQ(r.tw, r.ub);
    EXPECT_TRUE(is_tree_decomposition(g, r.decomposition));
    EXPECT_EQ(r.decomposition.width(), r.ub);
}

TEST(Treewidth, ValidatorRejects) {
    auto p3 = make::path(3);
    TreeDecomposition ok{{{0, 1}, {1, 2}}, {{0, 1}}};
    EXPECT_TRUE(is_tree_decomposition(p3, ok));
    TreeDecomposition missing_edge{{{0, 1}, {2}}, {{0, 1}}};
    EXPECT_FALSE(is_tree_decomposition(p3, missing_edge));
    TreeDecomposition split_vertex{{{0, 1}, {2}, {1, 2}}, {{0, 1}, {1, 2}}};
    EXPECT_FALSE(is_tree_decomposition(p3, split_vertex));
    TreeDecomposition cyclic{{{0, 1}, {1, 2}, {1}}, {{0, 1}, {1, 2}, {2, 0}}};
    EXPECT_FALSE(is_tree_decomposition(p3, cyclic));
}

TEST(Treewidth, TextDump) {
    auto r = treewidth_exact(make::path(3));
    auto text = to_text(r.decomposition);
    EXPECT_NE(text.find("b 0:"), std::string::npos);
    EXPECT_NE(text.find("e "), std::string::npos);
}

TEST(Treedepth, SmallFamilies) {
    EXPECT_EQ(td(Graph()), 0);
    EXPECT_EQ(td(make::edgeless(3)), 1);
    EXPECT_EQ(td(make::complete(4)), 4);
    EXPECT_EQ(td(make::star(4)), 2);
    EXPECT_EQ(td(make::path(7)), 3);
    EXPECT_EQ(td(make::path(8)), 4);
    EXPECT_EQ(td(make::path(15)), 4);
    EXPECT_EQ(td(make::cycle(7)), 4);
    EXPECT_EQ(td(make::complete_bipartite(3, 4)), 4);
}

TEST(Treedepth, LongestPath) {
    EXPECT_EQ(detail::longest_path_vertices(make::path(9)), 9);
    EXPECT_EQ(detail::longest_path_vertices(make::star(5)), 3);
    EXPECT_EQ(detail::longest_path_vertices(make::edgeless(2)), 1);
    EXPECT_EQ(detail::ceil_log2(8), 3);
    EXPECT_EQ(detail::ceil_log2(9), 4);
}

TEST(Treedepth, MatchesExhaustiveRecursion) {
    for (auto& g : oracle::random_family(200, 8, 9090)) {
        int want = oracle::td(g);
        EXPECT_EQ(td(g), want) << write_edgelist(g);
        EXPECT_LE(oracle::tw(g) + 1, want);
    }
}

TEST(Treedepth, BoundedByVertexIntegrity) {
    for (auto& g : oracle::random_family(60, 10, 9191, 4)) EXPECT_LE(td(g), oracle::vi(g));
}

TEST(Treedepth, TimeoutBrackets) {
    auto g = oracle::random_graph(60, 0.15, 5);
    auto r = treedepth_exact(g, Budget(std::chrono::milliseconds(20)));
    EXPECT_FALSE(r.exact);
    EXPECT_LE(r.lb, r.ub);
    EXPECT_TRUE(is_treedepth_decomposition(g, r.decomposition));
    EXPECT_EQ(r.decomposition.depth(), r.ub);
}

TEST(Treedepth, ValidatorAndText) {
    auto p3 = make::path(3);
    EXPECT_TRUE(is_treedepth_decomposition(p3, {{1, -1, 1}}));
    EXPECT_FALSE(is_treedepth_decomposition(p3, {{-1, -1, 1}}));
    EXPECT_FALSE(is_treedepth_decomposition(p3, {{1, 0, 1}}));
    EXPECT_EQ(to_text(TreedepthDecomposition{{1, -1, 1}}), "1 -1 1\n");
}
