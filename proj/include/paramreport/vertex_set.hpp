#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace paramreport {

/// Fixed-universe dynamic bitset over vertex ids 0..universe-1.
///
/// Used wherever algorithms need word-parallel set algebra (memo keys for the
/// width solvers, closed neighbourhoods, candidate modules).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<int>(v));
        return s;
    }

    template <typename Range>
    static VertexSet of(std::size_t universe, const Range& vertices) {
        VertexSet s(universe);
        for (int v : vertices) s.insert(v);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
    void insert(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// Smallest member >= from, or -1.
    int next(int from) const {
        if (from < 0) from = 0;
        std::size_t wi = static_cast<std::size_t>(from) >> 6;
        if (wi >= words_.size()) return -1;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return static_cast<int>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }
    int first() const { return next(0); }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f(static_cast<int>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    std::size_t intersection_size(const VertexSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    friend bool operator==(const VertexSet& a, const VertexSet& b) = default;

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// VertexSet with W inline words (universe <= 64 W); no heap traffic, for
/// solver inner loops on small graphs.
template <std::size_t W>
class SmallVertexSet {
public:
    SmallVertexSet() = default;
    explicit SmallVertexSet(std::size_t universe) : universe_(universe) {}

    static SmallVertexSet full(std::size_t universe) {
        SmallVertexSet s(universe);
        for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<int>(v));
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
    void insert(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    int first() const {
        for (std::size_t i = 0; i < W; ++i)
            if (words_[i]) return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
        return -1;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < W; ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f(static_cast<int>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }
    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    bool intersects(const SmallVertexSet& o) const {
        for (std::size_t i = 0; i < W; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const SmallVertexSet& o) const {
        for (std::size_t i = 0; i < W; ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    std::size_t intersection_size(const SmallVertexSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < W; ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    SmallVertexSet& operator|=(const SmallVertexSet& o) {
        for (std::size_t i = 0; i < W; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    SmallVertexSet& operator&=(const SmallVertexSet& o) {
        for (std::size_t i = 0; i < W; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    SmallVertexSet& operator-=(const SmallVertexSet& o) {
        for (std::size_t i = 0; i < W; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend SmallVertexSet operator|(SmallVertexSet a, const SmallVertexSet& b) { return a |= b; }
    friend SmallVertexSet operator&(SmallVertexSet a, const SmallVertexSet& b) { return a &= b; }
    friend SmallVertexSet operator-(SmallVertexSet a, const SmallVertexSet& b) { return a -= b; }

    friend bool operator==(const SmallVertexSet& a, const SmallVertexSet& b) { return a.words_ == b.words_; }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::size_t universe_ = 0;
    std::array<std::uint64_t, W> words_{};
};

struct VertexSetHash {
    template <typename Set>
    std::size_t operator()(const Set& s) const {
        return s.hash();
    }
};

/// Calls f with an empty set type wide enough for `n` vertices.
template <typename F>
decltype(auto) with_set_type(int n, F&& f) {
    if (n <= 64) return f(SmallVertexSet<1>{});
    if (n <= 128) return f(SmallVertexSet<2>{});
    if (n <= 256) return f(SmallVertexSet<4>{});
    if (n <= 512) return f(SmallVertexSet<8>{});
    return f(VertexSet{});
}

}  // namespace paramreport
