#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "paramreport/errors.hpp"
#include "paramreport/records.hpp"

namespace paramreport {

struct StatsSummary {
    double avg = 0;
    double median = 0;
    double p90 = 0;
    std::size_t count = 0;
};

/// Linear interpolation between closest ranks at h = q (N - 1).
inline double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw PreconditionError("percentile of an empty sample");
    std::sort(values.begin(), values.end());
    double h = q * static_cast<double>(values.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

inline StatsSummary summarize(const std::vector<double>& values) {
    if (values.empty()) throw PreconditionError("summarize needs a nonempty sample");
    StatsSummary s;
    s.count = values.size();
    for (double v : values) s.avg += v;
    s.avg /= static_cast<double>(values.size());
    s.median = percentile(values, 0.5);  // midpoint of the two middle values for even counts
    s.p90 = percentile(values, 0.9);
    return s;
}

// ---- Klam values ----

inline const std::vector<std::string>& klam_functions() {
    static const std::vector<std::string> names{"2^(k/log k)", "sqrt2^k", "2^k", "4^k", "k!", "k^k", "2^(k^2)", "2^(2^k)"};
    return names;
}

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

inline const BigInt& klam_limit() {
    static const BigInt limit = boost::multiprecision::pow(BigInt(10), 20);
    return limit;
}

inline BigInt pow2(unsigned long long e) { return BigInt(1) << static_cast<unsigned>(e); }

/// Exact f(k) <= 10^20 for the integer-valued forms.
inline bool klam_fits(const std::string& f, long long k) {
    const auto& lim = klam_limit();
    if (f == "sqrt2^k") return pow2(static_cast<unsigned long long>(k)) <= lim * lim;
    if (f == "2^k") return pow2(static_cast<unsigned long long>(k)) <= lim;
    if (f == "4^k") return pow2(2ULL * static_cast<unsigned long long>(k)) <= lim;
    if (f == "k!") {
        BigInt p = 1;
        for (long long i = 2; i <= k; ++i) p *= i;
        return p <= lim;
    }
    if (f == "k^k") return boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k)) <= lim;
    if (f == "2^(k^2)") return k * k <= 200 && pow2(static_cast<unsigned long long>(k * k)) <= lim;
    if (f == "2^(2^k)") return k <= 8 && pow2(1ULL << k) <= lim;
    if (f == "2^(k/log k)") {
        // log base 2; k = 1 has log k = 0 and is taken to fit
        if (k <= 1) return true;
        long double exponent = static_cast<long double>(k) / std::log2(static_cast<long double>(k));
        return exponent <= 20.0L * std::log2(10.0L);
    }
    throw PreconditionError("unknown growth function: " + f);
}

}  // namespace detail

inline std::string canonical_klam_name(const std::string& f) {
    static const std::map<std::string, std::string> alias{
        {"2^{k/log k}", "2^(k/log k)"}, {"sqrt(2)^k", "sqrt2^k"}, {"1.41^k", "sqrt2^k"}, {"2^{k^2}", "2^(k^2)"},
        {"2^k^2", "2^(k^2)"},          {"2^{2^k}", "2^(2^k)"},      {"2^2^k", "2^(2^k)"}, {"factorial", "k!"}};
    auto it = alias.find(f);
    auto name = it == alias.end() ? f : it->second;
    auto& all = klam_functions();
    if (std::find(all.begin(), all.end(), name) == all.end()) throw PreconditionError("unknown growth function: " + f);
    return name;
}

/// Largest k >= 1 with f(k) <= 10^20.
inline int klam_threshold(const std::string& f) {
    auto name = canonical_klam_name(f);
    long long k = 1;
    while (detail::klam_fits(name, k + 1)) ++k;
    return static_cast<int>(k);
}

inline std::size_t klam_count(const std::vector<long long>& values, const std::string& f) {
    const int t = klam_threshold(f);
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [t](long long v) { return v <= t; }));
}

// ---- per-instance tables ----

/// Exact values indexed by (parameter, instance); instance order preserved.
class ValueTable {
public:
    explicit ValueTable(const std::vector<ResultRecord>& records) : instances_(instances_of(records)) {
        for (auto& r : records)
            if (r.status == CellStatus::exact) values_[r.parameter][r.instance] = *r.value;
    }

    const std::vector<std::string>& instances() const { return instances_; }

    std::optional<long long> get(const std::string& instance, const std::string& parameter) const {
        auto p = values_.find(parameter);
        if (p == values_.end()) return std::nullopt;
        auto v = p->second.find(instance);
        if (v == p->second.end()) return std::nullopt;
        return v->second;
    }

    std::vector<long long> column(const std::string& parameter) const {
        std::vector<long long> out;
        for (auto& i : instances_)
            if (auto v = get(i, parameter)) out.push_back(*v);
        return out;
    }

    std::vector<std::string> parameters() const {
        std::vector<std::string> out;
        for (auto& [p, _] : values_) out.push_back(p);
        return out;
    }

private:
    std::vector<std::string> instances_;
    std::map<std::string, std::map<std::string, long long>> values_;
};

/// Per-instance k / n.
inline std::vector<double> ratio_column(const ValueTable& t, const std::string& parameter) {
    std::vector<double> out;
    for (auto& i : t.instances()) {
        auto k = t.get(i, parameter), n = t.get(i, "n");
        if (k && n && *n > 0) out.push_back(static_cast<double>(*k) / static_cast<double>(*n));
    }
    return out;
}

struct Combo {
    std::string name;  ///< "min(a,b)" or "max(a,b)"
    std::vector<std::pair<std::string, long long>> values;
    std::size_t skipped = 0;  ///< instances lacking either value
};

namespace detail {

template <typename Pick>
Combo combine(const ValueTable& t, const std::string& a, const std::string& b, const std::string& label, Pick pick) {
    Combo c{label + "(" + a + "," + b + ")", {}, 0};
    for (auto& i : t.instances()) {
        auto x = t.get(i, a), y = t.get(i, b);
        if (x && y) c.values.emplace_back(i, pick(*x, *y));
        else ++c.skipped;
    }
    return c;
}

}  // namespace detail

inline Combo min_combo(const ValueTable& t, const std::string& a, const std::string& b) {
    return detail::combine(t, a, b, "min", [](long long x, long long y) { return std::min(x, y); });
}
inline Combo max_combo(const ValueTable& t, const std::string& a, const std::string& b) {
    return detail::combine(t, a, b, "max", [](long long x, long long y) { return std::max(x, y); });
}

inline std::vector<double> as_doubles(const Combo& c) {
    std::vector<double> out;
    for (auto& [_, v] : c.values) out.push_back(static_cast<double>(v));
    return out;
}

// ---- hierarchy ----

/// lower <= upper + offset on every graph.
struct HierarchyEdge {
    std::string upper;
    std::string lower;
    int offset = 0;
};

/// Whitespace-separated "upper lower offset" lines; '#' starts a comment.
inline std::vector<HierarchyEdge> parse_hierarchy(const std::string& text) {
    std::vector<HierarchyEdge> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        HierarchyEdge e;
        std::string offset;
        if (!(fields >> e.upper)) continue;
        if (!(fields >> e.lower >> offset)) throw ParseError(lineno, "expected: upper lower offset");
        try {
            e.offset = std::stoi(offset);
        } catch (const std::logic_error&) {
            throw ParseError(lineno, "bad offset: " + offset);
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<HierarchyEdge> load_hierarchy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_hierarchy(ss.str());
}

struct EdgeAnnotation {
    HierarchyEdge edge;
    std::size_t pairs = 0;   ///< instances with both values exact
    std::size_t ratios = 0;  ///< of those, with upper > 0
    double median = 0;       ///< of lower / upper
    double p90 = 0;
    std::vector<std::string> violations;  ///< instances with lower > upper + offset
};

inline std::vector<EdgeAnnotation> hierarchy_annotations(const ValueTable& t, const std::vector<HierarchyEdge>& edges) {
    std::vector<EdgeAnnotation> out;
    for (auto& e : edges) {
        EdgeAnnotation a{e, 0, 0, 0, 0, {}};
        std::vector<double> r;
        for (auto& i : t.instances()) {
            auto up = t.get(i, e.upper), lo = t.get(i, e.lower);
            if (!up || !lo) continue;
            ++a.pairs;
            if (*lo > *up + e.offset) a.violations.push_back(i);
            if (*up > 0) r.push_back(static_cast<double>(*lo) / static_cast<double>(*up));
        }
        a.ratios = r.size();
        if (!r.empty()) {
            auto s = summarize(r);
            a.median = s.median;
            a.p90 = s.p90;
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace paramreport
