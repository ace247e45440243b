#include <gtest/gtest.h>

#include "oracles.hpp"
#include "paramreport/io.hpp"
#include "paramreport/modular.hpp"
#include "paramreport/neighborhood.hpp"
#include "paramreport/split.hpp"

using namespace paramreport;

namespace {

std::vector<Graph> cographs() {
    return {make::path(3), make::complete(4), make::complete_bipartite(2, 3), make::disjoint_union(make::path(2), make::path(2)),
            make::edgeless(3), make::star(5)};
}

}  // namespace

TEST(Twins, Examples) {
    auto star = twin_classes(make::star(3));
    EXPECT_EQ(star.size(), 2);
    EXPECT_EQ(star.classes[0], std::vector<int>{0});
    EXPECT_EQ(star.classes[1], (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(neighborhood_diversity(make::cycle(5)), 5);
    EXPECT_EQ(neighborhood_diversity(make::complete(4)), 1);
}

TEST(Twins, Quotient) {
    EXPECT_TRUE(twin_quotient(make::star(3)) == make::complete(2));
    EXPECT_TRUE(twin_quotient(make::cycle(5)) == make::cycle(5));
    EXPECT_TRUE(twin_quotient(make::complete_bipartite(3, 3)) == make::complete(2));
}

TEST(Twins, MatchesOracleAndQuotientIsTwinFree) {
    for (auto& g : oracle::random_family(200, 11, 303)) {
        auto tp = twin_classes(g);
        EXPECT_EQ(tp.size(), oracle::nd(g));
        for (auto& c : tp.classes)
            for (int u : c)
                for (int w : c) {
                    if (u == w) continue;
                    auto a = g.neighbor_set(u), b = g.neighbor_set(w);
                    a.erase(w);
                    b.erase(u);
                    EXPECT_TRUE(a == b);
                }
        auto q = twin_quotient(g, tp);
        EXPECT_EQ(q.n(), tp.size());
        // representatives of distinct classes are never twins in G
        for (std::size_t i = 0; i < tp.classes.size(); ++i)
            for (std::size_t j = i + 1; j < tp.classes.size(); ++j) {
                int u = tp.classes[i].front(), w = tp.classes[j].front();
                auto a = g.neighbor_set(u), b = g.neighbor_set(w);
                a.erase(w);
                b.erase(u);
                EXPECT_FALSE(a == b);
            }
        EXPECT_LE(neighborhood_diversity(q), tp.size());
    }
}

TEST(Twins, QuotientIsNotAlwaysTwinFree) {
    auto q = twin_quotient(make::star(3));
    EXPECT_TRUE(q == make::complete(2));
    EXPECT_TRUE(twin_quotient(q) == make::complete(1));
}

TEST(Dilworth, Examples) {
    EXPECT_EQ(dilworth_number(make::complete(5)), 1);
    EXPECT_EQ(dilworth_number(make::path(4)), 2);
    EXPECT_EQ(dilworth_number(make::star(4)), 1);
}

TEST(Dilworth, MatchesAntichainEnumeration) {
    for (auto& g : oracle::random_family(200, 10, 404)) {
        int d = dilworth_number(g);
        EXPECT_EQ(d, oracle::dilworth(g));
        EXPECT_LE(d, neighborhood_diversity(g));
    }
}

TEST(Dilworth, VicinalPreorderIsTransitive) {
    for (auto& g : oracle::random_family(100, 9, 405))
        for (int a = 0; a < g.n(); ++a)
            for (int b = 0; b < g.n(); ++b)
                for (int c = 0; c < g.n(); ++c)
                    if (vicinal_leq(g, a, b) && vicinal_leq(g, b, c)) { EXPECT_TRUE(vicinal_leq(g, a, c)); }
}

TEST(Modular, Examples) {
    auto p3 = modular_decomposition(make::path(3));
    for (auto& nd : p3.nodes) EXPECT_NE(nd.kind, MDKind::prime);
    auto p4 = modular_decomposition(make::path(4));
    EXPECT_EQ(p4.nodes[p4.root].kind, MDKind::prime);
    EXPECT_EQ(p4.nodes[p4.root].children.size(), 4u);
    EXPECT_TRUE(p4.nodes[p4.root].quotient == make::path(4));
    auto k4 = modular_decomposition(make::complete(4));
    EXPECT_EQ(k4.nodes[k4.root].kind, MDKind::series);
    EXPECT_EQ(k4.nodes[k4.root].children.size(), 4u);
}

TEST(Modular, Width) {
    for (auto& g : cographs()) EXPECT_EQ(modular_width(g), 2);
    EXPECT_EQ(modular_width(make::path(4)), 4);
    EXPECT_EQ(modular_width(make::edgeless(1)), 1);
    EXPECT_EQ(modular_width(make::cycle(5)), 5);
}

namespace {

void check_md(const Graph& g, const ModularDecomposition& md) {
    ASSERT_TRUE(recompose(md) == g);
    std::vector<int> leaves(static_cast<std::size_t>(g.n()), 0);
    for (auto& nd : md.nodes) {
        if (nd.kind == MDKind::leaf) {
            ++leaves[nd.vertex];
            continue;
        }
        oracle::Mask x = 0;
        for (int v : nd.vertices) x |= oracle::Mask{1} << v;
        int k = static_cast<int>(nd.children.size());
        EXPECT_GE(k, 2);
        for (int c : nd.children) {
            oracle::Mask m = 0;
            for (int v : md.nodes[c].vertices) m |= oracle::Mask{1} << v;
            EXPECT_TRUE(oracle::is_module(g, x, m));
        }
        int e = static_cast<int>(nd.quotient.m());
        if (nd.kind == MDKind::parallel) { EXPECT_EQ(e, 0); }
        if (nd.kind == MDKind::series) { EXPECT_EQ(e, k * (k - 1) / 2); }
        if (nd.kind == MDKind::prime) {
            // quotient has only trivial modules
            oracle::Mask all = (oracle::Mask{1} << k) - 1;
            for (oracle::Mask m = 1; m < all; ++m)
                if (oracle::popcount(m) >= 2) { EXPECT_FALSE(oracle::is_module(nd.quotient, all, m)); }
        }
    }
    for (int c : leaves) EXPECT_EQ(c, 1);
}

}  // namespace

TEST(Modular, ModulePropertyAndRecompositionOnRandomGraphs) {
    for (auto& g : oracle::random_family(200, 8, 505)) check_md(g, modular_decomposition(g));
}

TEST(Modular, WidthMatchesStrongModuleOracle) {
    for (auto& g : oracle::random_family(200, 10, 506)) EXPECT_EQ(modular_width(g), oracle::mw(g));
}

TEST(Modular, BinarizationPreservesStructure) {
    for (auto& g : oracle::random_family(100, 8, 507)) {
        auto md = modular_decomposition(g);
        for (auto how : {Binarization::left_deep, Binarization::right_deep}) {
            auto b = binarize(md, how);
            EXPECT_TRUE(recompose(b) == g);
            EXPECT_EQ(modular_width(b), modular_width(md));
            for (auto& nd : b.nodes)
                if (nd.kind == MDKind::parallel || nd.kind == MDKind::series) { EXPECT_EQ(nd.children.size(), 2u); }
        }
    }
}

TEST(Modular, LargerGraphsRecompose) {
    for (auto& g : oracle::random_family(30, 60, 508, 20)) {
        auto md = modular_decomposition(g);
        EXPECT_TRUE(recompose(md) == g);
    }
}

TEST(Split, CrossingExamples) {
    auto p4 = make::path(4);
    auto sp = find_split_crossing(p4, 1, 2);
    ASSERT_TRUE(sp);
    EXPECT_EQ(sp->v1, (std::vector<int>{0, 1}));
    EXPECT_EQ(sp->v2, (std::vector<int>{2, 3}));
    auto c5 = make::cycle(5);
    for (auto [u, v] : c5.edges()) EXPECT_FALSE(find_split_crossing(c5, u, v));
    auto k4 = find_split_crossing(make::complete(4), 0, 1);
    ASSERT_TRUE(k4);
    EXPECT_EQ(k4->v1.size(), 2u);
    EXPECT_EQ(k4->v2.size(), 2u);
    EXPECT_THROW(find_split_crossing(make::path(3), 0, 1), PreconditionError);
}

TEST(Split, CrossingAgreesWithBipartitionEnumeration) {
    for (auto& g : oracle::random_family(200, 10, 606, 4)) {
        for (auto [u, v] : g.edges()) {
            auto sp = find_split_crossing(g, u, v);
            EXPECT_EQ(sp.has_value(), oracle::split_separates(g, u, v));
            if (sp) {
                EXPECT_TRUE(is_split(g, VertexSet::of(static_cast<std::size_t>(g.n()), sp->v2)));
                EXPECT_TRUE(std::binary_search(sp->v1.begin(), sp->v1.end(), u));
                EXPECT_TRUE(std::binary_search(sp->v2.begin(), sp->v2.end(), v));
            }
        }
    }
}

TEST(Split, WidthExamples) {
    EXPECT_EQ(split_width(make::path(4)), 3);
    EXPECT_EQ(split_width(make::cycle(5)), 5);
    EXPECT_EQ(split_width(make::star(3)), 3);
    EXPECT_EQ(split_width(make::complete(6)), 3);
}

TEST(Split, WidthMatchesOracle) {
    for (auto& g : oracle::random_family(200, 10, 707)) EXPECT_EQ(split_width(g), oracle::sw(g)) << write_edgelist(g);
}

TEST(Split, DecompositionRecomposesAndPiecesArePrime) {
    for (auto& g : oracle::random_family(150, 10, 808)) {
        auto sd = split_decomposition(g);
        EXPECT_TRUE(recompose(sd) == g);
        for (auto& p : sd.pieces) {
            EXPECT_EQ(oracle::any_split(p.graph), 0u);
        }
        // adjacent pieces share exactly one marker
        for (std::size_t t = 0; t < sd.tree_edges.size(); ++t) {
            auto& a = sd.pieces[sd.tree_edges[t].first].labels;
            auto& b = sd.pieces[sd.tree_edges[t].second].labels;
            int shared = 0;
            for (int x : a) shared += std::count(b.begin(), b.end(), x) > 0;
            EXPECT_EQ(shared, 1);
        }
    }
}

TEST(Hierarchy, NeighbourhoodChain) {
    for (auto& g : oracle::random_family(200, 10, 909, 4)) {
        int nd = neighborhood_diversity(g);
        int mw = modular_width(g);
        int sw = split_width(g);
        EXPECT_LE(dilworth_number(g), nd);
        EXPECT_LE(mw, nd + 1);
        EXPECT_LE(sw, mw + 1);
    }
}
