#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <curl/curl.h>

#include "paramreport/errors.hpp"
#include "paramreport/io.hpp"

namespace paramreport {

struct ManifestEntry {
    std::string name;
    std::string url;
    std::string sha256;
    SourceFormat format = SourceFormat::edgelist;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
};

/// TSV with columns name, url, sha256, format. A leading "name" header row and
/// '#' comment lines are skipped.
inline DatasetManifest parse_manifest(std::string_view text) {
    DatasetManifest m;
    std::set<std::string> names;
    detail::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line[0] == '#') return;
        std::vector<std::string> cols;
        std::size_t pos = 0;
        while (true) {
            auto tab = line.find('\t', pos);
            cols.emplace_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
            if (tab == std::string_view::npos) break;
            pos = tab + 1;
        }
        if (cols.size() != 4) throw ParseError(lineno, "manifest rows need 4 tab-separated columns");
        if (cols[0] == "name" && m.entries.empty() && names.empty()) return;
        if (!names.insert(cols[0]).second) throw FormatError("duplicate manifest entry '" + cols[0] + "'");
        m.entries.push_back({cols[0], cols[1], cols[2], parse_format(cols[3])});
    });
    return m;
}

inline std::string cache_file_name(const ManifestEntry& e) {
    switch (e.format) {
        case SourceFormat::dimacs: return e.name + ".col";
        case SourceFormat::mtx: return e.name + ".mtx";
        default: return e.name + ".edgelist";
    }
}

namespace detail {

inline std::size_t curl_append(char* data, std::size_t size, std::size_t nmemb, void* user) {
    static_cast<std::string*>(user)->append(data, size * nmemb);
    return size * nmemb;
}

inline std::string download(const std::string& url) {
    static const bool init = [] { return curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK; }();
    (void)init;
    CURL* h = curl_easy_init();
    if (!h) throw FetchError("curl initialisation failed");
    std::string body;
    curl_easy_setopt(h, CURLOPT_URL, url.c_str());
    curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(h, CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, &curl_append);
    curl_easy_setopt(h, CURLOPT_WRITEDATA, &body);
    CURLcode rc = curl_easy_perform(h);
    curl_easy_cleanup(h);
    if (rc != CURLE_OK) throw FetchError(url + ": " + curl_easy_strerror(rc));
    return body;
}

}  // namespace detail

struct FetchFailure {
    std::string name;
    bool integrity = false;  ///< checksum mismatch, otherwise unreachable
    std::string message;
};

struct FetchReport {
    std::vector<InstanceMeta> metas;
    std::vector<FetchFailure> failures;
    int downloads = 0;

    void throw_if_failed() const {
        if (failures.empty()) return;
        const auto& f = failures.front();
        if (f.integrity) throw IntegrityError(f.message);
        throw FetchError(f.message);
    }
};

/// Ensures each entry is on disk under `dest` with the declared checksum.
/// Valid cached files are reused; a bad cache triggers one re-download.
inline FetchReport fetch_dataset(const DatasetManifest& manifest, const std::filesystem::path& dest) {
    FetchReport report;
    std::filesystem::create_directories(dest);
    for (const auto& e : manifest.entries) {
        auto path = dest / cache_file_name(e);
        std::string bytes;
        bool ok = false;
        if (std::filesystem::exists(path)) {
            bytes = read_file_bytes(path);
            ok = sha256_hex(bytes) == e.sha256;
        }
        if (!ok) {
            try {
                bytes = detail::download(e.url);
                ++report.downloads;
            } catch (const FetchError& err) {
                report.failures.push_back({e.name, false, e.name + ": " + err.what()});
                continue;
            }
            if (sha256_hex(bytes) != e.sha256) {
                report.failures.push_back({e.name, true, e.name + ": checksum mismatch"});
                continue;
            }
            std::ofstream out(path, std::ios::binary);
            out << bytes;
        }
        try {
            auto parsed = parse_graph(bytes, e.format, e.name);
            report.metas.push_back(std::move(parsed.meta));
        } catch (const std::exception& err) {
            report.failures.push_back({e.name, false, e.name + ": " + err.what()});
        }
    }
    return report;
}

}  // namespace paramreport
