#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "paramreport/connectivity.hpp"
#include "paramreport/dataset.hpp"
#include "paramreport/io.hpp"

using namespace paramreport;

TEST(Parse, EdgelistPath) {
    auto pg = parse_graph("0 1\n1 2", SourceFormat::edgelist);
    EXPECT_EQ(pg.graph.n(), 3);
    EXPECT_EQ(pg.graph.m(), 2u);
    EXPECT_TRUE(pg.graph == make::path(3));
}

TEST(Parse, EdgelistNormalizationsRecorded) {
    auto pg = parse_graph("0 1\n1 0\n0 0", SourceFormat::edgelist);
    EXPECT_EQ(pg.graph.n(), 2);
    EXPECT_EQ(pg.graph.m(), 1u);
    EXPECT_EQ(pg.meta.duplicates_merged, 1u);
    EXPECT_EQ(pg.meta.self_loops_dropped, 1u);
    EXPECT_EQ(pg.meta.normalizations.size(), 2u);
}

TEST(Parse, Dimacs) {
    auto pg = parse_graph("p edge 3 2\ne 1 2\ne 2 3", SourceFormat::dimacs);
    EXPECT_EQ(pg.graph.n(), 3);
    EXPECT_EQ(pg.graph.m(), 2u);
}

TEST(Parse, DimacsSizeMismatchIsFormatError) {
    EXPECT_THROW(parse_graph("p edge 3 3\ne 1 2\ne 2 3", SourceFormat::dimacs), FormatError);
    EXPECT_THROW(parse_graph("p edge 2 1\ne 1 3", SourceFormat::dimacs), FormatError);
    EXPECT_THROW(parse_graph("e 1 2\np edge 2 1", SourceFormat::dimacs), FormatError);
}

TEST(Parse, MalformedLineNamesLine) {
    try {
        parse_graph("0 1\n# fine\n7\n", SourceFormat::edgelist);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line_number, 3u);
    }
    try {
        parse_graph("p edge 3 1\ne 1 x\n", SourceFormat::dimacs);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line_number, 2u);
    }
}

TEST(Parse, MatrixMarket) {
    std::string mm =
        "%%MatrixMarket matrix coordinate real symmetric\n% comment\n4 4 4\n2 1 1.0\n3 2 0.5\n4 3 2\n4 4 1\n";
    auto pg = parse_graph(mm, SourceFormat::mtx);
    EXPECT_EQ(pg.graph.n(), 4);
    EXPECT_EQ(pg.graph.m(), 3u);
    EXPECT_TRUE(pg.meta.weights_ignored);
    EXPECT_EQ(pg.meta.self_loops_dropped, 1u);
    EXPECT_THROW(parse_graph("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 2\n", SourceFormat::mtx),
                 FormatError);
    EXPECT_THROW(parse_graph("%%MatrixMarket matrix coordinate pattern general\n3 4 0\n", SourceFormat::mtx),
                 FormatError);
}

TEST(Parse, TokensFirstSeenAndWeightsIgnored) {
    auto pg = parse_graph("# names\nbob alice 3\ncarol bob 1\n", SourceFormat::edgelist);
    ASSERT_EQ(pg.meta.labels.size(), 3u);
    EXPECT_EQ(pg.meta.labels[0], "bob");
    EXPECT_EQ(pg.meta.labels[1], "alice");
    EXPECT_EQ(pg.meta.labels[2], "carol");
    EXPECT_TRUE(pg.meta.weights_ignored);
    EXPECT_TRUE(pg.graph.adjacent(0, 1));
    EXPECT_TRUE(pg.graph.adjacent(0, 2));
}

TEST(Parse, IntegerLabelsKeepNumericOrderWithoutGaps) {
    auto pg = parse_graph("10 3\n3 7\n", SourceFormat::edgelist);
    EXPECT_EQ(pg.graph.n(), 3);
    EXPECT_EQ(pg.meta.labels, (std::vector<std::string>{"3", "7", "10"}));
    EXPECT_TRUE(pg.graph.adjacent(0, 2));
    EXPECT_TRUE(pg.graph.adjacent(0, 1));
}

TEST(Parse, ChecksumIsSha256OfRawBytes) {
    auto pg = parse_graph("0 1\n", SourceFormat::edgelist);
    EXPECT_EQ(pg.meta.checksum, "a79122992d53d358e6bbbbb98883d64fa0c15df3bcb08ff7b65a0580870af424");
}

TEST(Parse, RoundTripCanonicalEdgelist) {
    for (auto& g : oracle::random_family(100, 14, 11, 2)) {
        auto pg = parse_graph(write_edgelist(g), SourceFormat::edgelist);
        // isolated vertices are not representable; compare on the edge set
        std::vector<int> used;
        for (int v = 0; v < g.n(); ++v)
            if (g.degree(v) > 0) used.push_back(v);
        EXPECT_TRUE(pg.graph == g.induced(std::span<const int>(used)));
        if (static_cast<int>(used.size()) == g.n()) {
            EXPECT_TRUE(pg.graph == g);
        }
    }
}

TEST(Normalize, LargestComponent) {
    auto g = make::disjoint_union(make::path(2), make::path(3));
    auto h = normalize(g, true);
    EXPECT_TRUE(h == make::path(3));
    EXPECT_TRUE(normalize(make::cycle(5), true) == make::cycle(5));
    EXPECT_EQ(normalize(Graph(), true).n(), 0);
    // ties go to the component holding the smallest id
    auto tie = make::disjoint_union(make::path(3), make::complete(3));
    EXPECT_TRUE(normalize(tie, true) == make::path(3));
}

TEST(Normalize, ParsedGraphKeepsLabels) {
    auto pg = parse_graph("a b\nc d\nd e\n", SourceFormat::edgelist);
    normalize(pg, true);
    EXPECT_EQ(pg.graph.n(), 3);
    EXPECT_EQ(pg.meta.labels, (std::vector<std::string>{"c", "d", "e"}));
    EXPECT_FALSE(pg.meta.normalizations.empty());
}

TEST(Components, Examples) {
    EXPECT_EQ(connected_components(make::path(3)).size(), 1u);
    EXPECT_EQ(connected_components(make::edgeless(3)).size(), 3u);
    auto parts = connected_components(make::disjoint_union(make::cycle(5), make::edgeless(1)));
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].size(), 5u);
    EXPECT_EQ(parts[1].size(), 1u);
}

TEST(Components, PartitionAndDegreeSum) {
    for (auto& g : oracle::random_family(200, 12, 5)) {
        std::size_t deg = 0;
        for (int v = 0; v < g.n(); ++v) deg += static_cast<std::size_t>(g.degree(v));
        EXPECT_EQ(deg, 2 * g.m());
        std::vector<int> hit(static_cast<std::size_t>(g.n()), 0);
        for (auto& c : connected_components(g)) {
            for (int v : c) ++hit[v];
            EXPECT_TRUE(is_connected_within(g, VertexSet::of(g.n(), c)));
        }
        for (int h : hit) EXPECT_EQ(h, 1);
    }
}

TEST(Connectivity, Examples) {
    auto all = [](const Graph& g) { return VertexSet::full(static_cast<std::size_t>(g.n())); };
    EXPECT_EQ(min_vertex_cut_size(make::cycle(5), all(make::cycle(5))), 2);
    EXPECT_EQ(min_vertex_cut_size(make::path(3), all(make::path(3))), 1);
    EXPECT_EQ(min_vertex_cut_size(make::complete(4), all(make::complete(4))), 4);
    EXPECT_THROW(min_vertex_cut_size(make::edgeless(2), all(make::edgeless(2))), PreconditionError);
    EXPECT_THROW(min_vertex_cut_size(make::path(3), VertexSet(3)), PreconditionError);
}

namespace {

int brute_conn(const Graph& g, const std::vector<int>& xs) {
    int k = static_cast<int>(xs.size());
    int best = k;
    for (oracle::Mask z = 0; z < (oracle::Mask{1} << k); ++z) {
        int size = oracle::popcount(z);
        if (size >= best) continue;
        VertexSet rest(static_cast<std::size_t>(g.n()));
        for (int i = 0; i < k; ++i)
            if (!(z >> i & 1)) rest.insert(xs[i]);
        if (rest.size() >= 2 && components_within(g, rest).size() > 1) best = size;
    }
    return best;
}

}  // namespace

TEST(Connectivity, MatchesSubsetEnumeration) {
    int checked = 0;
    for (auto& g : oracle::random_family(300, 10, 21, 2)) {
        for (auto& comp : connected_components(g)) {
            auto x = VertexSet::of(static_cast<std::size_t>(g.n()), comp);
            int c = min_vertex_cut_size(g, x);
            EXPECT_EQ(c, brute_conn(g, comp));
            EXPECT_LE(c, static_cast<int>(comp.size()));
            if (auto cut = min_vertex_cut(g, x)) {
                auto rest = x - VertexSet::of(static_cast<std::size_t>(g.n()), cut->cut);
                EXPECT_GT(components_within(g, rest).size(), 1u);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 50);
}

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("paramreport_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

void write(const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

}  // namespace

TEST(Dataset, ManifestParsing) {
    auto m = parse_manifest("name\turl\tsha256\tformat\na\tfile:///x\tabc\tedgelist\nb\tfile:///y\tdef\tdimacs\n");
    ASSERT_EQ(m.entries.size(), 2u);
    EXPECT_EQ(m.entries[1].format, SourceFormat::dimacs);
    EXPECT_THROW(parse_manifest("a\tu\tc\tedgelist\na\tu\tc\tedgelist\n"), FormatError);
}

TEST(Dataset, EmptyManifest) {
    TempDir dir;
    auto r = fetch_dataset(DatasetManifest{}, dir.path / "dest");
    EXPECT_TRUE(r.metas.empty());
    EXPECT_EQ(r.downloads, 0);
}

TEST(Dataset, CachedFilesAreNotRedownloaded) {
    TempDir dir;
    std::string a = "0 1\n1 2\n", b = "p edge 2 1\ne 1 2\n";
    write(dir.path / "a.src", a);
    write(dir.path / "b.src", b);
    DatasetManifest m{{{"a", "file://" + (dir.path / "a.src").string(), sha256_hex(a), SourceFormat::edgelist},
                       {"b", "file://" + (dir.path / "b.src").string(), sha256_hex(b), SourceFormat::dimacs}}};
    auto first = fetch_dataset(m, dir.path / "dest");
    EXPECT_EQ(first.downloads, 2);
    auto second = fetch_dataset(m, dir.path / "dest");
    EXPECT_EQ(second.downloads, 0);
    ASSERT_EQ(second.metas.size(), 2u);
    EXPECT_EQ(second.metas[0].checksum, sha256_hex(a));
    EXPECT_TRUE(second.failures.empty());
}

TEST(Dataset, CorruptedCacheIsRefetched) {
    TempDir dir;
    std::string a = "0 1\n";
    write(dir.path / "a.src", a);
    std::filesystem::create_directories(dir.path / "dest");
    write(dir.path / "dest" / "a.edgelist", "garbage");
    DatasetManifest m{{{"a", "file://" + (dir.path / "a.src").string(), sha256_hex(a), SourceFormat::edgelist}}};
    auto r = fetch_dataset(m, dir.path / "dest");
    EXPECT_EQ(r.downloads, 1);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(read_file_bytes(dir.path / "dest" / "a.edgelist"), a);
}

TEST(Dataset, ChecksumMismatchAndUnreachableAreReportedPerEntry) {
    TempDir dir;
    write(dir.path / "a.src", "0 1\n");
    std::string c = "1 2\n";
    write(dir.path / "c.src", c);
    DatasetManifest m{{{"a", "file://" + (dir.path / "a.src").string(), std::string(64, '0'), SourceFormat::edgelist},
                       {"b", "file://" + (dir.path / "missing.src").string(), std::string(64, '0'),
                        SourceFormat::edgelist},
                       {"c", "file://" + (dir.path / "c.src").string(), sha256_hex(c), SourceFormat::edgelist}}};
    auto r = fetch_dataset(m, dir.path / "dest");
    ASSERT_EQ(r.failures.size(), 2u);
    EXPECT_TRUE(r.failures[0].integrity);
    EXPECT_NE(r.failures[0].message.find("a"), std::string::npos);
    EXPECT_FALSE(r.failures[1].integrity);
    ASSERT_EQ(r.metas.size(), 1u);
    EXPECT_EQ(r.metas[0].name, "c");
    EXPECT_THROW(r.throw_if_failed(), IntegrityError);
}

TEST(Dataset, ShippedGraphsLoad) {
    auto karate = load_graph_file(std::string(PARAMREPORT_DATA_DIR) + "/graphs/karate-club.edgelist");
    EXPECT_EQ(karate.graph.n(), 34);
    EXPECT_EQ(karate.graph.m(), 78u);
    EXPECT_EQ(karate.meta.name, "karate-club");
}
