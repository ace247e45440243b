#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <openssl/evp.h>

#include "paramreport/errors.hpp"
#include "paramreport/graph.hpp"

namespace paramreport {

enum class SourceFormat { edgelist, dimacs, mtx };

inline std::string to_string(SourceFormat f) {
    switch (f) {
        case SourceFormat::edgelist: return "edgelist";
        case SourceFormat::dimacs: return "dimacs";
        case SourceFormat::mtx: return "mtx";
    }
    return "edgelist";
}

inline SourceFormat parse_format(std::string_view s) {
    if (s == "edgelist" || s == "edges" || s == "txt") return SourceFormat::edgelist;
    if (s == "dimacs" || s == "col" || s == "dimacs-col") return SourceFormat::dimacs;
    if (s == "mtx" || s == "matrix-market" || s == "mm") return SourceFormat::mtx;
    throw PreconditionError("unknown graph format '" + std::string(s) + "'");
}

struct InstanceMeta {
    std::string name;
    SourceFormat source_format = SourceFormat::edgelist;
    std::vector<std::string> normalizations;
    std::string checksum;  ///< sha256 of the raw bytes, lowercase hex
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_merged = 0;
    bool weights_ignored = false;
    /// labels[v] is the input label of vertex v.
    std::vector<std::string> labels;
};

inline std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
        std::size_t j = i;
        while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' || line[j] == '\r' || line[j] == ',')) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::optional<long long> as_integer(std::string_view tok) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
    return v;
}

inline long long require_integer(std::string_view tok, std::size_t line) {
    auto v = as_integer(tok);
    if (!v) throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
    return *v;
}

/// Collects raw (possibly repeated, possibly looped) edges and turns them into
/// a Graph while recording what was normalized away.
struct EdgeCollector {
    std::vector<Edge> raw;
    InstanceMeta* meta;

    Graph finish(int n) {
        std::set<Edge> seen;
        std::vector<Edge> kept;
        for (auto [u, v] : raw) {
            if (u == v) {
                ++meta->self_loops_dropped;
                continue;
            }
            Edge e{std::min(u, v), std::max(u, v)};
            if (!seen.insert(e).second) {
                ++meta->duplicates_merged;
                continue;
            }
            kept.push_back(e);
        }
        if (meta->self_loops_dropped)
            meta->normalizations.push_back("self-loops dropped: " + std::to_string(meta->self_loops_dropped));
        if (meta->duplicates_merged)
            meta->normalizations.push_back("duplicates merged: " + std::to_string(meta->duplicates_merged));
        if (meta->weights_ignored) meta->normalizations.push_back("weights ignored");
        return Graph::from_edges(n, std::span<const Edge>(kept));
    }
};

template <typename F>
void for_each_line(std::string_view bytes, F&& f) {
    std::size_t lineno = 0, pos = 0;
    while (pos <= bytes.size()) {
        std::size_t end = bytes.find('\n', pos);
        if (end == std::string_view::npos) end = bytes.size();
        ++lineno;
        f(bytes.substr(pos, end - pos), lineno);
        if (end == bytes.size()) break;
        pos = end + 1;
    }
}

inline Graph parse_edgelist(std::string_view bytes, InstanceMeta& meta) {
    std::vector<std::pair<std::string, std::string>> pairs;
    bool all_integer = true;
    for_each_line(bytes, [&](std::string_view line, std::size_t lineno) {
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#' || tok[0][0] == '%') return;
        if (tok.size() < 2) throw ParseError(lineno, "expected two vertex labels");
        if (tok.size() >= 3) meta.weights_ignored = true;
        if (!as_integer(tok[0]) || !as_integer(tok[1])) all_integer = false;
        pairs.emplace_back(std::string(tok[0]), std::string(tok[1]));
    });

    std::unordered_map<std::string, int> id;
    if (all_integer) {
        // Integer labels keep their numeric order.
        std::vector<std::pair<long long, std::string>> labels;
        for (auto& [a, b] : pairs) {
            labels.emplace_back(*as_integer(a), a);
            labels.emplace_back(*as_integer(b), b);
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end(),
                                 [](auto& x, auto& y) { return x.first == y.first; }),
                     labels.end());
        for (auto& [value, text] : labels) {
            id[text] = static_cast<int>(meta.labels.size());
            meta.labels.push_back(text);
        }
        // Aliases such as "01" vs "1" map to the same numeric id.
        for (auto& [a, b] : pairs)
            for (auto* s : {&a, &b})
                if (!id.count(*s)) {
                    auto it = std::lower_bound(labels.begin(), labels.end(), std::make_pair(*as_integer(*s), std::string()),
                                               [](auto& x, auto& y) { return x.first < y.first; });
                    id[*s] = static_cast<int>(it - labels.begin());
                }
    } else {
        for (auto& [a, b] : pairs)
            for (auto* s : {&a, &b})
                if (id.emplace(*s, static_cast<int>(meta.labels.size())).second) meta.labels.push_back(*s);
    }

    EdgeCollector col{{}, &meta};
    for (auto& [a, b] : pairs) col.raw.emplace_back(id[a], id[b]);
    return col.finish(static_cast<int>(meta.labels.size()));
}

inline Graph parse_dimacs(std::string_view bytes, InstanceMeta& meta) {
    long long n = -1, m = -1, edge_lines = 0;
    EdgeCollector col{{}, &meta};
    for_each_line(bytes, [&](std::string_view line, std::size_t lineno) {
        auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "c" || tok[0][0] == '%' || tok[0][0] == '#') return;
        if (tok[0] == "p") {
            if (n >= 0) throw FormatError("duplicate problem line at line " + std::to_string(lineno));
            if (tok.size() < 4) throw ParseError(lineno, "problem line must be 'p edge n m'");
            n = require_integer(tok[2], lineno);
            m = require_integer(tok[3], lineno);
            if (n < 0 || m < 0) throw ParseError(lineno, "negative size in problem line");
            return;
        }
        if (tok[0] == "e") {
            if (n < 0) throw FormatError("edge before problem line at line " + std::to_string(lineno));
            if (tok.size() < 3) throw ParseError(lineno, "edge line must be 'e u v'");
            long long u = require_integer(tok[1], lineno), v = require_integer(tok[2], lineno);
            if (u < 1 || v < 1 || u > n || v > n)
                throw FormatError("vertex out of declared range 1.." + std::to_string(n) + " at line " +
                                  std::to_string(lineno));
            if (tok.size() >= 4) meta.weights_ignored = true;
            col.raw.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
            ++edge_lines;
            return;
        }
        if (tok[0] == "n" || tok[0] == "x") return;  // node descriptors, ignored
        throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
    });
    if (n < 0) throw FormatError("missing problem line");
    if (edge_lines != m)
        throw FormatError("declared " + std::to_string(m) + " edges but found " + std::to_string(edge_lines));
    for (long long v = 1; v <= n; ++v) meta.labels.push_back(std::to_string(v));
    return col.finish(static_cast<int>(n));
}

inline Graph parse_mtx(std::string_view bytes, InstanceMeta& meta) {
    long long rows = -1, cols = -1, nnz = -1, entries = 0;
    bool header_seen = false;
    EdgeCollector col{{}, &meta};
    for_each_line(bytes, [&](std::string_view line, std::size_t lineno) {
        if (!header_seen && line.rfind("%%MatrixMarket", 0) == 0) {
            header_seen = true;
            std::string lower(line);
            std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
            if (lower.find("coordinate") == std::string::npos)
                throw FormatError("only coordinate Matrix Market files are supported");
            if (lower.find("pattern") == std::string::npos) meta.weights_ignored = true;
            return;
        }
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '%') return;
        if (rows < 0) {
            if (tok.size() < 3) throw ParseError(lineno, "size line must be 'rows cols nnz'");
            rows = require_integer(tok[0], lineno);
            cols = require_integer(tok[1], lineno);
            nnz = require_integer(tok[2], lineno);
            if (rows != cols) throw FormatError("adjacency matrix must be square");
            return;
        }
        if (tok.size() < 2) throw ParseError(lineno, "entry line must be 'i j [value]'");
        long long i = require_integer(tok[0], lineno), j = require_integer(tok[1], lineno);
        if (i < 1 || j < 1 || i > rows || j > cols)
            throw FormatError("entry out of declared range at line " + std::to_string(lineno));
        col.raw.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
        ++entries;
    });
    if (rows < 0) throw FormatError("missing size line");
    if (entries != nnz)
        throw FormatError("declared " + std::to_string(nnz) + " entries but found " + std::to_string(entries));
    for (long long v = 1; v <= rows; ++v) meta.labels.push_back(std::to_string(v));
    return col.finish(static_cast<int>(rows));
}

}  // namespace detail

struct ParsedGraph {
    Graph graph;
    InstanceMeta meta;
};

inline ParsedGraph parse_graph(std::string_view bytes, SourceFormat format, std::string name = "graph") {
    ParsedGraph out;
    out.meta.name = name.empty() ? "graph" : std::move(name);
    out.meta.source_format = format;
    out.meta.checksum = sha256_hex(bytes);
    switch (format) {
        case SourceFormat::edgelist: out.graph = detail::parse_edgelist(bytes, out.meta); break;
        case SourceFormat::dimacs: out.graph = detail::parse_dimacs(bytes, out.meta); break;
        case SourceFormat::mtx: out.graph = detail::parse_mtx(bytes, out.meta); break;
    }
    return out;
}

/// Vertices of a maximum-cardinality component; ties go to the component
/// holding the smallest vertex id.
inline std::vector<int> largest_component_vertices(const Graph& g) {
    auto comps = connected_components(g);
    std::vector<int> best;
    for (auto& c : comps)
        if (c.size() > best.size()) best = c;
    return best;
}

inline Graph normalize(const Graph& g, bool take_largest_component) {
    if (!take_largest_component || g.n() == 0) return g;
    auto keep = largest_component_vertices(g);
    return g.induced(std::span<const int>(keep));
}

/// In-place variant that also keeps labels and normalization notes in sync.
inline void normalize(ParsedGraph& pg, bool take_largest_component) {
    if (!take_largest_component || pg.graph.n() == 0) return;
    auto keep = largest_component_vertices(pg.graph);
    if (static_cast<int>(keep.size()) == pg.graph.n()) return;
    std::vector<std::string> labels;
    for (int v : keep) labels.push_back(pg.meta.labels[v]);
    pg.meta.labels = std::move(labels);
    pg.meta.normalizations.push_back("largest component taken: " + std::to_string(keep.size()) + " of " +
                                     std::to_string(pg.graph.n()) + " vertices");
    pg.graph = pg.graph.induced(std::span<const int>(keep));
}

/// Canonical edgelist: sorted "u v" lines with u < v. Isolated vertices are
/// not representable; callers that need them should keep n separately.
inline std::string write_edgelist(const Graph& g) {
    std::string out;
    for (auto [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

inline std::string read_file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SourceFormat guess_format(const std::filesystem::path& p) {
    auto ext = p.extension().string();
    if (ext == ".mtx") return SourceFormat::mtx;
    if (ext == ".col" || ext == ".dimacs" || ext == ".gr" || ext == ".clq") return SourceFormat::dimacs;
    return SourceFormat::edgelist;
}

inline ParsedGraph load_graph_file(const std::filesystem::path& p, std::optional<SourceFormat> format = std::nullopt) {
    auto bytes = read_file_bytes(p);
    return parse_graph(bytes, format.value_or(guess_format(p)), p.stem().string());
}

}  // namespace paramreport
