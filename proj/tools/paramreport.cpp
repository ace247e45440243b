// paramreport: compute structural parameters of graphs and report on them.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>

#include "paramreport/compute.hpp"
#include "paramreport/dataset.hpp"
#include "paramreport/io.hpp"
#include "paramreport/records.hpp"
#include "paramreport/stats.hpp"

#ifndef PARAMREPORT_DATA_DIR
#define PARAMREPORT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace paramreport;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

bool graph_file(const fs::path& p) {
    static const std::set<std::string> ext{".edgelist", ".edges", ".txt", ".el", ".col", ".dimacs", ".gr", ".clq", ".mtx"};
    return fs::is_regular_file(p) && ext.count(p.extension().string()) > 0;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> out;
    for (auto& in : inputs) {
        fs::path p(in);
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (auto& e : fs::directory_iterator(p))
                if (graph_file(e.path())) files.push_back(e.path());
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else if (fs::is_regular_file(p)) {
            out.push_back(p);
        } else {
            throw FormatError("no such graph file or directory: " + in);
        }
    }
    return out;
}

std::string fixed(double x, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

bool has_errors(const std::vector<ResultRecord>& rs) {
    return std::any_of(rs.begin(), rs.end(), [](auto& r) { return r.status == CellStatus::error; });
}

std::vector<ResultRecord> read_records(const std::string& path) {
    auto bytes = read_file_bytes(path);
    if (fs::path(path).extension() == ".json") return records_from_json(nlohmann::json::parse(bytes));
    return parse_csv(bytes);
}

// ---------------------------------------------------------------- compute

struct ComputeArgs {
    std::vector<std::string> graphs;
    std::string format = "auto";
    std::string params = "all";
    double timeout_secs = 60;
    std::string vi_variant = "improved";
    std::string out;
    unsigned jobs = 1;
    bool largest_component = false;
    bool quiet = false;
};

int run_compute_cmd(const ComputeArgs& a) {
    std::vector<NamedGraph> graphs;
    for (auto& p : expand_inputs(a.graphs)) {
        std::optional<SourceFormat> f;
        if (a.format != "auto") f = parse_format(a.format);
        auto pg = load_graph_file(p, f);
        normalize(pg, a.largest_component);
        for (auto& note : pg.meta.normalizations) std::cerr << pg.meta.name << ": " << note << "\n";
        graphs.push_back({pg.meta.name, std::move(pg.graph)});
    }
    auto params = a.params == "all" ? all_parameter_names() : split_list(a.params);

    ComputeOptions opt;
    opt.timeout_secs = a.timeout_secs;
    opt.jobs = a.jobs;
    opt.params.vi_variant = parse_vi_variant(a.vi_variant);
    std::cerr << "dilworth definition: " << kDilworthDefinition << "\n";
    std::cerr << "vi variant: " << to_string(opt.params.vi_variant) << "\n";
    std::mutex err_mutex;
    const auto t0 = std::chrono::steady_clock::now();
    if (!a.quiet)
        opt.vi_progress = [&](const std::string& inst, const ViRound& r, int lb, int ub) {
            auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::lock_guard lock(err_mutex);
            std::cerr << "vi " << inst << " r=" << r.r << " coc=" << (r.coc ? std::to_string(*r.coc) : "-")
                      << " status=" << (r.status == OptStatus::optimal     ? "optimal"
                                        : r.status == OptStatus::timeout ? "timeout"
                                                                         : "infeasible")
                      << " lb=" << lb << " ub=" << ub << " elapsed=" << fixed(elapsed, 3) << "s\n";
        };

    auto records = run_compute(graphs, params, opt);
    for (auto& r : records)
        if (r.status == CellStatus::error) std::cerr << "error " << r.instance << " " << r.parameter << ": " << r.message << "\n";

    if (a.out.empty()) {
        std::cout << to_csv(records);
    } else {
        std::ofstream out(a.out);
        if (!out) throw FormatError("cannot write " + a.out);
        if (fs::path(a.out).extension() == ".json") out << to_json(records).dump(2) << "\n";
        else out << to_csv(records);
    }
    return has_errors(records) ? 1 : 0;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    std::string in;
    std::string report = "distributions";
    bool ratios = false;
    std::string params;
    std::string pairs;
    std::string edges = std::string(PARAMREPORT_DATA_DIR) + "/hierarchy_edges.tsv";
};

void print_summary_row(const std::string& label, const std::vector<double>& v, bool ratio) {
    if (v.empty()) {
        std::cout << label << "\t-\t-\t-\t0\n";
        return;
    }
    auto s = summarize(v);
    int d = ratio ? 2 : 1;
    std::cout << label << "\t" << fixed(s.avg, d) << "\t" << fixed(s.median, d) << "\t" << fixed(s.p90, d) << "\t"
              << s.count << "\n";
}

std::vector<std::string> report_params(const ValueTable& t, const StatsArgs& a) {
    if (!a.params.empty()) {
        std::vector<std::string> out;
        for (auto& p : split_list(a.params)) out.push_back(canonical_parameter_name(p));
        return out;
    }
    // registry order first, then anything else in the file
    std::vector<std::string> out, present = t.parameters();
    for (auto& p : all_parameter_names())
        if (std::find(present.begin(), present.end(), p) != present.end()) out.push_back(p);
    for (auto& p : present)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    return out;
}

std::vector<std::pair<std::string, std::string>> report_pairs(const ValueTable& t, const StatsArgs& a) {
    std::vector<std::pair<std::string, std::string>> out;
    if (!a.pairs.empty()) {
        for (auto& item : split_list(a.pairs)) {
            auto plus = item.find('+');
            if (plus == std::string::npos) throw PreconditionError("pairs look like a+b: " + item);
            out.emplace_back(canonical_parameter_name(item.substr(0, plus)), canonical_parameter_name(item.substr(plus + 1)));
        }
        return out;
    }
    auto ps = report_params(t, a);
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) out.emplace_back(ps[i], ps[j]);
    return out;
}

int run_stats_cmd(const StatsArgs& a) {
    auto records = read_records(a.in);
    ValueTable t(records);
    if (a.report == "distributions") {
        std::cout << "parameter\tavg\tmedian\tp90\tcount\n";
        for (auto& p : report_params(t, a)) {
            auto col = t.column(p);
            print_summary_row(p, std::vector<double>(col.begin(), col.end()), false);
            if (a.ratios) print_summary_row(p + "/n", ratio_column(t, p), true);
        }
    } else if (a.report == "klam") {
        std::cout << "parameter";
        for (auto& f : klam_functions()) std::cout << "\t" << f << "<=" << klam_threshold(f);
        std::cout << "\n";
        for (auto& p : report_params(t, a)) {
            std::cout << p;
            for (auto& f : klam_functions()) std::cout << "\t" << klam_count(t.column(p), f);
            std::cout << "\n";
        }
    } else if (a.report == "min-combos" || a.report == "max-combos") {
        std::cout << "combination\tavg\tmedian\tp90\tcount\tskipped\n";
        for (auto& [x, y] : report_pairs(t, a)) {
            auto c = a.report == "min-combos" ? min_combo(t, x, y) : max_combo(t, x, y);
            auto v = as_doubles(c);
            if (v.empty()) {
                std::cout << c.name << "\t-\t-\t-\t0\t" << c.skipped << "\n";
                continue;
            }
            auto s = summarize(v);
            std::cout << c.name << "\t" << fixed(s.avg, 1) << "\t" << fixed(s.median, 1) << "\t" << fixed(s.p90, 1)
                      << "\t" << s.count << "\t" << c.skipped << "\n";
        }
    } else if (a.report == "hierarchy") {
        std::cout << "upper\tlower\toffset\tmedian\tp90\tpairs\tviolations\n";
        std::size_t bad = 0;
        for (auto& e : hierarchy_annotations(t, load_hierarchy(a.edges))) {
            std::string v;
            for (auto& i : e.violations) v += (v.empty() ? "" : ",") + i;
            bad += e.violations.size();
            std::cout << e.edge.upper << "\t" << e.edge.lower << "\t" << e.edge.offset << "\t"
                      << (e.ratios ? fixed(e.median) : "-") << "\t" << (e.ratios ? fixed(e.p90) : "-") << "\t"
                      << e.pairs << "\t" << (v.empty() ? "-" : v) << "\n";
        }
        if (bad) std::cerr << bad << " hierarchy violation(s)\n";
    } else {
        throw PreconditionError("unknown report: " + a.report);
    }
    return has_errors(records) ? 1 : 0;
}

// ---------------------------------------------------------------- fetch

int run_fetch_cmd(const std::string& manifest_path, const std::string& dest) {
    auto manifest = parse_manifest(read_file_bytes(manifest_path));
    auto report = fetch_dataset(manifest, dest);
    for (auto& m : report.metas)
        std::cout << m.name << "\t" << to_string(m.source_format) << "\t" << m.checksum << "\t" << m.labels.size()
                  << " vertices\n";
    for (auto& f : report.failures)
        std::cerr << (f.integrity ? "integrity error: " : "fetch error: ") << f.message << "\n";
    std::cerr << report.downloads << " download(s), " << report.metas.size() << " ok, " << report.failures.size()
              << " failed\n";
    return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural graph parameters: compute, summarize, fetch"};
    app.require_subcommand(1);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "Evaluate parameters on graphs");
    compute->add_option("--graphs", ca.graphs, "Graph files or directories")->required();
    compute->add_option("--format", ca.format, "auto, edgelist, dimacs or mtx")->capture_default_str();
    compute->add_option("--params", ca.params, "Comma-separated names or 'all'")->capture_default_str();
    compute->add_option("--timeout-secs", ca.timeout_secs, "Per-cell budget; 0 = unlimited")->capture_default_str();
    compute->add_option("--vi-variant", ca.vi_variant, "basic or improved")
        ->check(CLI::IsMember({"basic", "improved"}))
        ->capture_default_str();
    compute->add_option("--out", ca.out, "results.csv or results.json; stdout CSV if omitted");
    compute->add_option("--jobs", ca.jobs, "Worker threads")->capture_default_str();
    compute->add_flag("--largest-component", ca.largest_component, "Keep only a largest connected component");
    compute->add_flag("--quiet", ca.quiet, "No vi progress lines");

    StatsArgs sa;
    auto* stats = app.add_subcommand("stats", "Reports over a results file");
    stats->add_option("--in", sa.in, "results.csv or results.json")->required();
    stats->add_option("--report", sa.report)
        ->check(CLI::IsMember({"distributions", "klam", "min-combos", "max-combos", "hierarchy"}))
        ->capture_default_str();
    stats->add_flag("--ratios", sa.ratios, "Also summarize k/n");
    stats->add_option("--params", sa.params, "Restrict to these parameters");
    stats->add_option("--pairs", sa.pairs, "Combinations as a+b,c+d (default: all pairs)");
    stats->add_option("--edges", sa.edges, "Hierarchy edge file")->capture_default_str();

    std::string manifest, dest;
    auto* fetch = app.add_subcommand("fetch", "Download and verify a dataset manifest");
    fetch->add_option("--manifest", manifest, "TSV: name, url, sha256, format")->required();
    fetch->add_option("--dest", dest, "Cache directory")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*compute) return run_compute_cmd(ca);
        if (*stats) return run_stats_cmd(sa);
        return run_fetch_cmd(manifest, dest);
    } catch (const std::exception& e) {
        std::cerr << "paramreport: " << e.what() << "\n";
        return 2;
    }
}
