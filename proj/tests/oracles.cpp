#include "oracles.hpp"

#include <array>
#include <cassert>
#include <set>
#include <vector>

namespace lifo::oracle {

namespace {

uint64_t bit(int v) { return uint64_t{1} << v; }

// Reflexive transitive closure of the subgraph induced by `sub`, by
// repeated relaxation over the boolean matrix.
struct Closure {
    int n;
    std::array<uint64_t, 64> row{}; // row[v] = vertices reachable from v

    Closure(const Digraph& g, uint64_t sub) : n(g.vertex_count()) {
        for (int v = 0; v < n; ++v) {
            if (!(sub & bit(v))) continue;
            row[v] = bit(v);
            for (int w = 0; w < n; ++w)
                if ((sub & bit(w)) && g.has_edge(v, w)) row[v] |= bit(w);
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (int v = 0; v < n; ++v) {
                if (!(sub & bit(v))) continue;
                uint64_t next = row[v];
                for (int w = 0; w < n; ++w)
                    if (row[v] & bit(w)) next |= row[w];
                if (next != row[v]) {
                    row[v] = next;
                    changed = true;
                }
            }
        }
    }

    bool reaches(int v, int w) const { return row[v] & bit(w); }
    bool same_scc(int v, int w) const { return reaches(v, w) && reaches(w, v); }
};

std::vector<uint64_t> scc_masks(const Digraph& g, uint64_t sub) {
    Closure c(g, sub);
    std::vector<uint64_t> out;
    uint64_t left = sub;
    while (left) {
        int v = __builtin_ctzll(left);
        uint64_t comp = 0;
        for (int w = 0; w < g.vertex_count(); ++w)
            if ((sub & bit(w)) && c.same_scc(v, w)) comp |= bit(w);
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

bool scc_is_cyclic(const Digraph& g, uint64_t comp) {
    if (__builtin_popcountll(comp) > 1) return true;
    int v = __builtin_ctzll(comp);
    return g.has_edge(v, v);
}

int rank_of(const Digraph& g, uint64_t sub) {
    int best = 0;
    for (uint64_t comp : scc_masks(g, sub)) {
        if (!scc_is_cyclic(g, comp)) continue;
        int inner = g.vertex_count(); // upper bound
        uint64_t left = comp;
        while (left) {
            int v = __builtin_ctzll(left);
            left &= left - 1;
            int r = rank_of(g, comp & ~bit(v));
            if (r < inner) inner = r;
        }
        if (1 + inner > best) best = 1 + inner;
    }
    return best;
}

// --- the raw game ---

uint64_t letters_of(const std::vector<int>& word) {
    uint64_t m = 0;
    for (int v : word) m |= bit(v);
    return m;
}

struct NaivePos {
    std::vector<int> word;
    uint64_t space;

    bool operator<(const NaivePos& o) const {
        if (word != o.word) return word < o.word;
        return space < o.space;
    }
};

struct NaiveGame {
    const Digraph& g;
    GameVariant variant;
    int k;
    bool monotone;
    bool stationary;
    int n;
    uint64_t all;

    NaiveGame(const Digraph& g_, GameVariant variant_, int k_, bool monotone_, bool stationary_)
        : g(g_), variant(variant_), k(k_), monotone(monotone_), stationary(stationary_),
          n(g_.vertex_count()), all(n == 64 ? ~uint64_t{0} : bit(n) - 1) {}

    bool closed_in(uint64_t world, uint64_t r) const {
        for (int v = 0; v < n; ++v) {
            if (!(r & bit(v))) continue;
            for (int w = 0; w < n; ++w)
                if ((world & bit(w)) && g.has_edge(v, w) && !(r & bit(w))) return false;
        }
        return true;
    }

    bool valid_position(const std::vector<int>& word, uint64_t r) const {
        uint64_t world = all & ~letters_of(word);
        if (r & ~world) return false;
        if (r == 0) return true;
        switch (variant) {
            case GameVariant::i:
                return closed_in(world, r);
            case GameVariant::isc: {
                for (uint64_t comp : scc_masks(g, world))
                    if ((comp & r) && (comp & ~r)) return false;
                return true;
            }
            case GameVariant::v: {
                if (!closed_in(world, r)) return false;
                // unique initial component of the subgraph induced by r
                auto comps = scc_masks(g, r);
                int initial = 0;
                for (uint64_t comp : comps) {
                    bool entered = false;
                    for (int v = 0; v < n && !entered; ++v) {
                        if (!(r & bit(v)) || (comp & bit(v))) continue;
                        for (int w = 0; w < n; ++w)
                            if ((comp & bit(w)) && g.has_edge(v, w)) {
                                entered = true;
                                break;
                            }
                    }
                    if (!entered) ++initial;
                }
                return initial == 1;
            }
            case GameVariant::vsc: {
                for (uint64_t comp : scc_masks(g, world))
                    if (comp == r) return true;
                return false;
            }
        }
        return false;
    }

    bool special_start(const NaivePos& pos) const {
        return pos.word.empty() && pos.space == all && !valid_position(pos.word, pos.space);
    }

    std::vector<std::vector<int>> stack_moves(const NaivePos& pos) const {
        if (special_start(pos)) return {pos.word};
        std::vector<std::vector<int>> out;
        uint64_t held = letters_of(pos.word);
        if (static_cast<int>(pos.word.size()) < k)
            for (int v = 0; v < n; ++v)
                if (!(held & bit(v))) {
                    auto next = pos.word;
                    next.push_back(v);
                    out.push_back(std::move(next));
                }
        if (!pos.word.empty() && !stationary)
            out.push_back({pos.word.begin(), pos.word.end() - 1});
        return out;
    }

    std::vector<uint64_t> successor_spaces(const NaivePos& pos,
                                           const std::vector<int>& next_word) const {
        std::vector<uint64_t> out;
        if (special_start(pos)) {
            for (uint64_t r = 0; r <= all; ++r)
                if (valid_position(next_word, r)) out.push_back(r);
            return out;
        }
        uint64_t persisting = letters_of(pos.word) & letters_of(next_word);
        Closure run(g, all & ~persisting);
        uint64_t avail = all & ~letters_of(next_word);
        for (uint64_t r = 0;; r = (r - avail) & avail) {
            bool ok = valid_position(next_word, r);
            if (ok) {
                bool confined = variant == GameVariant::isc || variant == GameVariant::vsc;
                for (int w = 0; w < n && ok; ++w) {
                    if (!(r & bit(w))) continue;
                    bool reachable = false;
                    for (int v = 0; v < n && !reachable; ++v) {
                        if (!(pos.space & bit(v))) continue;
                        reachable = confined ? run.same_scc(v, w) : run.reaches(v, w);
                    }
                    ok = reachable;
                }
            }
            if (ok) out.push_back(r);
            if (r == avail) break;
        }
        return out;
    }

    bool searcher_wins(const NaivePos& pos, std::set<NaivePos>& path) const {
        if (pos.space == 0) return true;
        if (!path.insert(pos).second) return false;
        bool win = false;
        for (const auto& next_word : stack_moves(pos)) {
            auto spaces = successor_spaces(pos, next_word);
            assert(!spaces.empty());
            if (monotone) {
                bool shrinking = true;
                for (uint64_t r : spaces)
                    if (r & ~pos.space) {
                        shrinking = false;
                        break;
                    }
                if (!shrinking) continue;
            }
            bool all_win = true;
            for (uint64_t r : spaces)
                if (!searcher_wins({next_word, r}, path)) {
                    all_win = false;
                    break;
                }
            if (all_win) {
                win = true;
                break;
            }
        }
        path.erase(pos);
        return win;
    }
};

} // namespace

int naive_cycle_rank(const Digraph& g) {
    int n = g.vertex_count();
    return rank_of(g, n == 64 ? ~uint64_t{0} : bit(n) - 1);
}

bool naive_searcher_wins(const Digraph& g, GameVariant variant, int k, bool monotone,
                         bool stationary) {
    NaiveGame game(g, variant, k, monotone, stationary);
    std::set<NaivePos> path;
    return game.searcher_wins({{}, game.all}, path);
}

int naive_search_number(const Digraph& g, GameVariant variant, bool monotone, bool stationary) {
    for (int k = 1; k <= g.vertex_count(); ++k)
        if (naive_searcher_wins(g, variant, k, monotone, stationary)) return k;
    return g.vertex_count() + 1; // unreachable for these games; sentinel for the tests
}

} // namespace lifo::oracle
