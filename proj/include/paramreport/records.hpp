#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramreport/errors.hpp"

namespace paramreport {

enum class CellStatus { exact, timeout, error };

inline std::string to_string(CellStatus s) {
    switch (s) {
        case CellStatus::exact: return "exact";
        case CellStatus::timeout: return "timeout";
        case CellStatus::error: return "error";
    }
    return "error";
}

inline CellStatus parse_status(const std::string& s) {
    if (s == "exact") return CellStatus::exact;
    if (s == "timeout") return CellStatus::timeout;
    if (s == "error") return CellStatus::error;
    throw FormatError("unknown status: " + s);
}

struct ResultRecord {
    std::string instance;
    std::string parameter;
    std::optional<long long> value;  ///< set iff exact
    CellStatus status = CellStatus::exact;
    std::optional<long long> lb, ub;  ///< timeouts only
    long long runtime_ms = 0;
    std::string message;  ///< error text; not part of the CSV

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

inline constexpr const char* kCsvHeader = "instance,parameter,value,status,lb,ub,runtime_ms";

namespace detail {

inline std::string opt_str(const std::optional<long long>& v) { return v ? std::to_string(*v) : ""; }

inline std::optional<long long> opt_int(const std::string& s, std::size_t line) {
    if (s.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw ParseError(line, "not an integer: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw ParseError(line, "not an integer: " + s);
    }
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    if (quoted) throw ParseError(lineno, "unterminated quote");
    return out;
}

}  // namespace detail

inline std::string to_csv(const std::vector<ResultRecord>& records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (auto& r : records) {
        out += detail::csv_field(r.instance) + "," + detail::csv_field(r.parameter) + "," +
               detail::opt_str(r.value) + "," + to_string(r.status) + "," + detail::opt_str(r.lb) + "," +
               detail::opt_str(r.ub) + "," + std::to_string(r.runtime_ms) + "\n";
    }
    return out;
}

inline std::vector<ResultRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ResultRecord> out;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != kCsvHeader) throw ParseError(lineno, "expected header " + std::string(kCsvHeader));
            header = true;
            continue;
        }
        auto f = detail::split_csv_line(line, lineno);
        if (f.size() != 7) throw ParseError(lineno, "expected 7 fields");
        ResultRecord r;
        r.instance = f[0];
        r.parameter = f[1];
        r.value = detail::opt_int(f[2], lineno);
        try {
            r.status = parse_status(f[3]);
        } catch (const FormatError& e) {
            throw ParseError(lineno, e.what());
        }
        r.lb = detail::opt_int(f[4], lineno);
        r.ub = detail::opt_int(f[5], lineno);
        r.runtime_ms = detail::opt_int(f[6], lineno).value_or(0);
        if (r.status == CellStatus::exact && !r.value) throw ParseError(lineno, "exact record without value");
        if (r.runtime_ms < 0) throw ParseError(lineno, "negative runtime");
        out.push_back(std::move(r));
    }
    if (!header) throw ParseError(lineno, "missing header");
    return out;
}

inline nlohmann::json to_json(const std::vector<ResultRecord>& records) {
    auto arr = nlohmann::json::array();
    auto opt = [](const std::optional<long long>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    for (auto& r : records) {
        nlohmann::json j{{"instance", r.instance}, {"parameter", r.parameter}, {"value", opt(r.value)},
                         {"status", to_string(r.status)}, {"lb", opt(r.lb)}, {"ub", opt(r.ub)},
                         {"runtime_ms", r.runtime_ms}};
        if (!r.message.empty()) j["message"] = r.message;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline std::vector<ResultRecord> records_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw FormatError("expected a JSON array of records");
    std::vector<ResultRecord> out;
    auto opt = [](const nlohmann::json& j, const char* key) -> std::optional<long long> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        return j[key].get<long long>();
    };
    for (auto& j : arr) {
        ResultRecord r;
        r.instance = j.at("instance").get<std::string>();
        r.parameter = j.at("parameter").get<std::string>();
        r.value = opt(j, "value");
        r.status = parse_status(j.at("status").get<std::string>());
        r.lb = opt(j, "lb");
        r.ub = opt(j, "ub");
        r.runtime_ms = j.value("runtime_ms", 0LL);
        r.message = j.value("message", std::string());
        out.push_back(std::move(r));
    }
    return out;
}

/// Exact value of (instance, parameter), if recorded.
inline std::optional<long long> lookup(const std::vector<ResultRecord>& records, const std::string& instance,
                                       const std::string& parameter) {
    for (auto& r : records)
        if (r.instance == instance && r.parameter == parameter && r.status == CellStatus::exact) return r.value;
    return std::nullopt;
}

/// Instance names in first-seen order.
inline std::vector<std::string> instances_of(const std::vector<ResultRecord>& records) {
    std::vector<std::string> out;
    for (auto& r : records)
        if (std::find(out.begin(), out.end(), r.instance) == out.end()) out.push_back(r.instance);
    return out;
}

}  // namespace paramreport
