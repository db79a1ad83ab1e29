#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace lifo {

/**
 * Set of vertex ids drawn from a universe of at most 64 vertices.
 * Value type; all operations are branch-free bit arithmetic.
 */
class VertexSet {
public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(uint64_t bits) : bits_(bits) {}

    static constexpr VertexSet single(int v) { return VertexSet(uint64_t{1} << v); }
    // {0, 1, ..., n-1}
    static constexpr VertexSet first_n(int n) {
        return n >= 64 ? VertexSet(~uint64_t{0}) : VertexSet((uint64_t{1} << n) - 1);
    }

    constexpr uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int v) const { return (bits_ >> v) & 1; }
    constexpr bool contains_all(VertexSet o) const { return (o.bits_ & ~bits_) == 0; }
    constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr bool is_subset_of(VertexSet o) const { return o.contains_all(*this); }
    constexpr bool is_proper_subset_of(VertexSet o) const {
        return is_subset_of(o) && bits_ != o.bits_;
    }

    // lowest set bit; only meaningful on nonempty sets
    int lowest() const { return std::countr_zero(bits_); }

    constexpr VertexSet with(int v) const { return VertexSet(bits_ | (uint64_t{1} << v)); }
    constexpr VertexSet without(int v) const { return VertexSet(bits_ & ~(uint64_t{1} << v)); }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
    constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }

    bool operator==(const VertexSet&) const = default;

    class iterator {
    public:
        explicit iterator(uint64_t rest) : rest_(rest) {}
        int operator*() const { return std::countr_zero(rest_); }
        iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        bool operator!=(const iterator& o) const { return rest_ != o.rest_; }
    private:
        uint64_t rest_;
    };
    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(size());
        for (int v : *this) out.push_back(v);
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v : *this) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }

private:
    uint64_t bits_ = 0;
};

// Lexicographic order on ascending element sequences, e.g. {1,3} < {2}.
inline bool lex_less(VertexSet a, VertexSet b) {
    while (!a.empty() && !b.empty()) {
        int x = a.lowest(), y = b.lowest();
        if (x != y) return x < y;
        a = a.without(x);
        b = b.without(y);
    }
    return a.empty() && !b.empty();
}

} // namespace lifo
