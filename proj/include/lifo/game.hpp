#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lifo/digraph.hpp"

namespace lifo {

// The four game variants: invisible/visible fugitive x free movement along
// directed paths / movement confined to a strongly connected component.
enum class GameVariant { i, isc, v, vsc };

inline constexpr std::array<GameVariant, 4> kAllVariants = {
    GameVariant::i, GameVariant::isc, GameVariant::v, GameVariant::vsc};

std::string variant_name(GameVariant variant);
GameVariant variant_from_name(const std::string& name); // throws std::invalid_argument

constexpr bool is_visible(GameVariant variant) {
    return variant == GameVariant::v || variant == GameVariant::vsc;
}
constexpr bool is_component_confined(GameVariant variant) {
    return variant == GameVariant::isc || variant == GameVariant::vsc;
}

/**
 * Stack of searcher positions: a repetition-free word of vertex ids, most
 * recent placement at the back. Only the top searcher may be removed.
 * Placing on an occupied vertex is excluded: it never shrinks the fugitive
 * space but consumes a stack slot, so such moves are dominated.
 */
class SearcherStack {
public:
    SearcherStack() = default;
    explicit SearcherStack(std::vector<int> word);

    int size() const { return static_cast<int>(word_.size()); }
    bool empty() const { return word_.empty(); }
    int top() const { return word_.back(); }
    const std::vector<int>& word() const { return word_; }
    VertexSet letters() const { return letters_; }
    bool occupies(int v) const { return letters_.contains(v); }

    SearcherStack pushed(int v) const;
    SearcherStack popped() const;
    bool is_prefix_of(const SearcherStack& other) const;

    std::string to_string() const; // e.g. "<>" or "<2,0,1>"

    bool operator==(const SearcherStack& o) const { return word_ == o.word_; }
    bool operator<(const SearcherStack& o) const { return word_ < o.word_; }

private:
    std::vector<int> word_;
    VertexSet letters_;
};

struct Position {
    SearcherStack stack;
    VertexSet space; // empty means the fugitive is captured

    bool operator==(const Position& o) const {
        return space == o.space && stack == o.stack;
    }
    bool operator<(const Position& o) const {
        if (stack.word() != o.stack.word()) return stack.word() < o.stack.word();
        return space.bits() < o.space.bits();
    }
    std::string to_string() const;
};

struct PositionHash {
    size_t operator()(const Position& p) const;
};

Position start_position(const Digraph& g);

/**
 * Position validity per variant. The empty space is admitted everywhere as
 * the terminal capture position. The start position (eps, V) is additionally
 * admitted in the visible variants even when V fails the structural test.
 */
bool is_valid_position(const Digraph& g, GameVariant variant, const Position& pos);

// True when pos is (eps, V) and that fails the structural validity test for
// the variant; from here the only stack move is to stay at eps and let the
// fugitive pick any valid space.
bool is_special_start(const Digraph& g, GameVariant variant, const Position& pos);

/**
 * Raw stack moves: place an unused vertex (ascending id) while |stack| < k,
 * then remove the top if nonempty. Does not apply variant or restriction
 * rules; see legal_stack_moves.
 */
std::vector<SearcherStack> searcher_moves(const Digraph& g, const Position& pos, int k);

// searcher_moves plus the variant rule for the special start, where the
// single legal move is the empty stack itself.
std::vector<SearcherStack> legal_stack_moves(const Digraph& g, GameVariant variant,
                                             const Position& pos, int k);

/**
 * The canonical fugitive answers to a stack move, one per inclusion-maximal
 * valid successor space. Invisible variants always yield exactly one set.
 * When no nonempty successor exists the list is the single empty set, the
 * capture. Every valid successor space is contained in one of the returned
 * sets, so restricting the fugitive to these choices preserves the value of
 * the game.
 */
std::vector<VertexSet> fugitive_responses(const Digraph& g, GameVariant variant,
                                          const Position& pos, const SearcherStack& next);

/**
 * Definition-level successor test: next.stack differs from pos.stack by one
 * push or one pop (or both equal eps from the special start), next is a
 * valid position, and every vertex of next.space is reachable from pos.space
 * in g minus the persisting searchers (shares a strongly connected component
 * with pos.space there, for the confined variants).
 */
bool is_successor(const Digraph& g, GameVariant variant, const Position& pos,
                  const Position& next);

struct SolveOptions {
    GameVariant variant = GameVariant::vsc;
    bool monotone = false;   // keep only moves whose every response stays inside the current space
    bool stationary = false; // never remove a searcher before capture
};

// Strategy table: next stack per reachable position with a legal move.
using StrategyTable = std::map<Position, SearcherStack>;

struct FixedKOutcome {
    bool searcher_wins = false;
    // Total on reachable positions that have a legal move: winning positions
    // get a move whose responses all sit strictly closer to capture; losing
    // positions fall back to their first legal move.
    StrategyTable strategy;
    int reachable_positions = 0;
};

FixedKOutcome solve_fixed_k(const Digraph& g, const SolveOptions& opt, int k);

struct SolveReport {
    GameVariant variant;
    bool monotone = false;
    bool stationary = false;
    int search_number = 0;
    StrategyTable strategy; // table for k = search_number
};

// Minimal k in 1..n for which the searcher wins, with the witness table.
SolveReport solve(const Digraph& g, const SolveOptions& opt);
int search_number(const Digraph& g, const SolveOptions& opt);

struct SearchNumbers {
    int lifo_i = 0, lifo_isc = 0, lifo_v = 0, lifo_vsc = 0;
    int lifo_mi = 0, lifo_misc = 0, lifo_mv = 0, lifo_mvsc = 0;
    int sstat_vsc = 0;

    std::array<std::pair<const char*, int>, 9> named() const {
        return {{{"lifo_i", lifo_i},
                 {"lifo_isc", lifo_isc},
                 {"lifo_v", lifo_v},
                 {"lifo_vsc", lifo_vsc},
                 {"lifo_mi", lifo_mi},
                 {"lifo_misc", lifo_misc},
                 {"lifo_mv", lifo_mv},
                 {"lifo_mvsc", lifo_mvsc},
                 {"sstat_vsc", sstat_vsc}}};
    }
    bool all_equal(int value) const {
        for (auto [name, n] : named())
            if (n != value) return false;
        return true;
    }
};

// The eight plain/monotone numbers plus the stationary vsc number.
SearchNumbers all_search_numbers(const Digraph& g);

struct ScriptMove {
    bool place = false;
    int vertex = -1; // meaningful only for placements

    bool operator==(const ScriptMove& o) const {
        return place == o.place && (!place || vertex == o.vertex);
    }
};

struct SearcherScript {
    std::vector<ScriptMove> moves;
};

/**
 * Fugitive policy keyed by the searcher's next stack: stacks shorter than
 * `order` look up the table (total on repetition-free words by
 * construction); longer stacks fall back to the first canonical response.
 */
struct FugitiveStrategy {
    int order = 0;
    std::map<std::vector<int>, VertexSet> table;

    VertexSet respond(const Digraph& g, GameVariant variant, const Position& pos,
                      const SearcherStack& next) const;
};

enum class Winner { searcher, fugitive };

struct PlayTrace {
    GameVariant variant;
    int k = 0;
    std::vector<Position> steps; // starts at (eps, V)
    Winner winner = Winner::fugitive;
    std::string note; // capture / position repeated / script exhausted / searcher has no legal move
};

using SearcherAgent = std::variant<StrategyTable, SearcherScript>;

/**
 * Referees one full game. The searcher agent picks stack moves (tables are
 * consulted per position, scripts run in order); the fugitive strategy picks
 * successor spaces, checked against is_successor. Invisible variants may
 * pass fugitive = nullptr to use the forced canonical response. Ends on
 * capture, position repetition (fugitive win: the play can be continued
 * forever), script exhaustion, or a move-less searcher position. Throws
 * StrategyError on undefined or illegal strategy output.
 */
PlayTrace play(const Digraph& g, GameVariant variant, int k, const SearcherAgent& searcher,
               const FugitiveStrategy* fugitive);

struct ReplayResult {
    PlayTrace trace;
    int max_depth = 0;   // largest |stack| seen
    bool monotone = false; // space never grew along the trace
};

// Deterministic replay of a script in an invisible variant; the stack bound
// k < 0 means unbounded. Throws std::invalid_argument for visible variants.
ReplayResult replay_script(const Digraph& g, GameVariant variant, const SearcherScript& script,
                           int k = -1);

} // namespace lifo
