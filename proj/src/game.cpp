#include "lifo/game.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lifo/errors.hpp"

namespace lifo {

std::string variant_name(GameVariant variant) {
    switch (variant) {
        case GameVariant::i: return "i";
        case GameVariant::isc: return "isc";
        case GameVariant::v: return "v";
        case GameVariant::vsc: return "vsc";
    }
    return "?";
}

GameVariant variant_from_name(const std::string& name) {
    for (GameVariant v : kAllVariants)
        if (variant_name(v) == name) return v;
    throw std::invalid_argument("unknown game variant: " + name + " (expected i, isc, v or vsc)");
}

SearcherStack::SearcherStack(std::vector<int> word) : word_(std::move(word)) {
    for (int v : word_) {
        if (v < 0 || v >= Digraph::kMaxVertices)
            throw std::invalid_argument("stack vertex id out of range: " + std::to_string(v));
        if (letters_.contains(v))
            throw std::invalid_argument("searcher stack repeats vertex " + std::to_string(v));
        letters_ = letters_.with(v);
    }
}

SearcherStack SearcherStack::pushed(int v) const {
    assert(!letters_.contains(v));
    SearcherStack s(*this);
    s.word_.push_back(v);
    s.letters_ = letters_.with(v);
    return s;
}

SearcherStack SearcherStack::popped() const {
    assert(!word_.empty());
    SearcherStack s(*this);
    s.letters_ = letters_.without(s.word_.back());
    s.word_.pop_back();
    return s;
}

bool SearcherStack::is_prefix_of(const SearcherStack& other) const {
    if (size() > other.size()) return false;
    return std::equal(word_.begin(), word_.end(), other.word_.begin());
}

std::string SearcherStack::to_string() const {
    std::string out = "<";
    for (size_t i = 0; i < word_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(word_[i]);
    }
    return out + ">";
}

std::string Position::to_string() const {
    return "(" + stack.to_string() + ", " + space.to_string() + ")";
}

size_t PositionHash::operator()(const Position& p) const {
    uint64_t h = 14695981039346656037ull;
    auto mix = [&h](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(p.space.bits());
    for (int v : p.stack.word()) mix(static_cast<uint64_t>(v) + 1);
    return static_cast<size_t>(h);
}

Position start_position(const Digraph& g) { return {SearcherStack{}, g.vertices()}; }

namespace {

bool structurally_valid(const Digraph& g, GameVariant variant, const Position& pos) {
    if (pos.space.intersects(pos.stack.letters())) return false;
    if (!g.vertices().contains_all(pos.space | pos.stack.letters())) return false;
    if (pos.space.empty()) return true; // capture is terminal in every variant
    GraphView residue = full_view(g).without(pos.stack.letters());
    switch (variant) {
        case GameVariant::i:
            return is_successor_closed(residue, pos.space);
        case GameVariant::isc: {
            for (const VertexSet& c : scc_decompose(residue).components)
                if (c.intersects(pos.space) && !pos.space.contains_all(c)) return false;
            return true;
        }
        case GameVariant::v:
            return is_successor_closed(residue, pos.space) &&
                   initial_components(residue.restrict_to(pos.space)).size() == 1;
        case GameVariant::vsc: {
            for (const VertexSet& c : scc_decompose(residue).components)
                if (c == pos.space) return true;
            return false;
        }
    }
    return false;
}

} // namespace

bool is_valid_position(const Digraph& g, GameVariant variant, const Position& pos) {
    if (structurally_valid(g, variant, pos)) return true;
    return is_visible(variant) && pos.stack.empty() && pos.space == g.vertices();
}

bool is_special_start(const Digraph& g, GameVariant variant, const Position& pos) {
    return is_visible(variant) && pos.stack.empty() && pos.space == g.vertices() &&
           !structurally_valid(g, variant, pos);
}

std::vector<SearcherStack> searcher_moves(const Digraph& g, const Position& pos, int k) {
    std::vector<SearcherStack> out;
    if (pos.stack.size() < k)
        for (int v : g.vertices() - pos.stack.letters())
            out.push_back(pos.stack.pushed(v));
    if (!pos.stack.empty()) out.push_back(pos.stack.popped());
    return out;
}

std::vector<SearcherStack> legal_stack_moves(const Digraph& g, GameVariant variant,
                                             const Position& pos, int k) {
    if (is_special_start(g, variant, pos)) return {SearcherStack{}};
    return searcher_moves(g, pos, k);
}

std::vector<VertexSet> fugitive_responses(const Digraph& g, GameVariant variant,
                                          const Position& pos, const SearcherStack& next) {
    if (pos.space.empty()) return {VertexSet{}};

    VertexSet persisting = pos.stack.letters() & next.letters();
    GraphView interim = full_view(g).without(persisting); // fugitive relocates here
    GraphView residue = full_view(g).without(next.letters()); // and must settle here

    std::vector<VertexSet> out;
    switch (variant) {
        case GameVariant::i:
            out.push_back(reach_from(interim, pos.space) - next.letters());
            break;
        case GameVariant::isc: {
            VertexSet r;
            for (const VertexSet& c : scc_decompose(interim).components)
                if (c.intersects(pos.space)) r |= c;
            out.push_back(r - next.letters());
            break;
        }
        case GameVariant::v: {
            VertexSet hot = reach_from(interim, pos.space);
            for (const VertexSet& c : scc_decompose(residue).components)
                if (c.intersects(hot)) out.push_back(reach_from(residue, c));
            // drop reach-closures nested inside another candidate
            std::vector<VertexSet> maximal;
            for (const VertexSet& r : out) {
                bool dominated = false;
                for (const VertexSet& other : out)
                    if (r.is_proper_subset_of(other)) { dominated = true; break; }
                if (!dominated) maximal.push_back(r);
            }
            out = std::move(maximal);
            break;
        }
        case GameVariant::vsc: {
            VertexSet hot;
            for (const VertexSet& c : scc_decompose(interim).components)
                if (c.intersects(pos.space)) hot |= c;
            for (const VertexSet& c : scc_decompose(residue).components)
                if (c.intersects(hot)) out.push_back(c);
            break;
        }
    }
    if (out.empty() || (out.size() == 1 && out[0].empty())) return {VertexSet{}};
    return out;
}

bool is_successor(const Digraph& g, GameVariant variant, const Position& pos,
                  const Position& next) {
    bool special = is_special_start(g, variant, pos);
    if (special) {
        if (!next.stack.empty()) return false;
    } else {
        int d = next.stack.size() - pos.stack.size();
        if (d == 1) {
            if (!pos.stack.is_prefix_of(next.stack)) return false;
        } else if (d == -1) {
            if (!next.stack.is_prefix_of(pos.stack)) return false;
        } else {
            return false;
        }
    }
    if (!is_valid_position(g, variant, next)) return false;
    if (is_special_start(g, variant, next)) return false;
    if (special) return true; // any valid space may be picked before the first placement

    VertexSet persisting = pos.stack.letters() & next.stack.letters();
    GraphView interim = full_view(g).without(persisting);
    if (is_component_confined(variant)) {
        SccDecomposition dec = scc_decompose(interim);
        for (int v : next.space) {
            int c = dec.comp_of[v];
            if (c < 0 || !dec.components[c].intersects(pos.space)) return false;
        }
        return true;
    }
    return reach_from(interim, pos.space).contains_all(next.space);
}

namespace {

struct MoveRec {
    SearcherStack next;
    std::vector<int> succ;
};

struct GameGraphData {
    std::vector<Position> positions;
    std::unordered_map<Position, int, PositionHash> index;
    std::vector<std::vector<MoveRec>> moves; // empty for capture positions
};

GameGraphData build_game_graph(const Digraph& g, const SolveOptions& opt, int k) {
    GameGraphData gg;
    auto intern = [&gg](const Position& p) {
        auto it = gg.index.find(p);
        if (it != gg.index.end()) return it->second;
        int id = static_cast<int>(gg.positions.size());
        gg.index.emplace(p, id);
        gg.positions.push_back(p);
        gg.moves.emplace_back();
        return id;
    };
    intern(start_position(g));
    for (size_t head = 0; head < gg.positions.size(); ++head) {
        Position pos = gg.positions[head];
        if (pos.space.empty()) continue;
        std::vector<MoveRec> recs;
        for (SearcherStack& next : legal_stack_moves(g, opt.variant, pos, k)) {
            if (opt.stationary && next.size() < pos.stack.size()) continue;
            std::vector<VertexSet> resp = fugitive_responses(g, opt.variant, pos, next);
            if (opt.monotone) {
                bool shrinks = true;
                for (VertexSet r : resp)
                    if (!pos.space.contains_all(r)) { shrinks = false; break; }
                if (!shrinks) continue;
            }
            MoveRec rec{std::move(next), {}};
            for (VertexSet r : resp) rec.succ.push_back(intern({rec.next, r}));
            recs.push_back(std::move(rec));
        }
        gg.moves[head] = std::move(recs);
    }
    return gg;
}

// Rounds that positions enter the searcher's winning region: capture
// positions at 0, and a position at round r+1 once some move has all its
// fugitive answers won by round r. Positions left at -1 are fugitive wins.
std::vector<int> attractor_levels(const GameGraphData& gg) {
    int m = static_cast<int>(gg.positions.size());
    std::vector<int> level(m, -1);
    std::vector<std::vector<int>> pending(m);
    std::vector<std::vector<std::pair<int, int>>> preds(m);
    std::vector<int> queue;
    for (int p = 0; p < m; ++p) {
        if (gg.positions[p].space.empty()) {
            level[p] = 0;
            queue.push_back(p);
            continue;
        }
        pending[p].resize(gg.moves[p].size());
        for (size_t mi = 0; mi < gg.moves[p].size(); ++mi) {
            pending[p][mi] = static_cast<int>(gg.moves[p][mi].succ.size());
            for (int s : gg.moves[p][mi].succ)
                preds[s].push_back({p, static_cast<int>(mi)});
        }
    }
    for (size_t at = 0; at < queue.size(); ++at) {
        int s = queue[at];
        for (auto [p, mi] : preds[s]) {
            if (level[p] >= 0) continue;
            if (--pending[p][mi] == 0) {
                level[p] = level[s] + 1;
                queue.push_back(p);
            }
        }
    }
    return level;
}

} // namespace

FixedKOutcome solve_fixed_k(const Digraph& g, const SolveOptions& opt, int k) {
    if (k < 0) throw std::invalid_argument("searcher count must be nonnegative");
    GameGraphData gg = build_game_graph(g, opt, k);
    std::vector<int> level = attractor_levels(gg);

    FixedKOutcome out;
    out.reachable_positions = static_cast<int>(gg.positions.size());
    out.searcher_wins = level[0] >= 0;
    for (int p = 0; p < static_cast<int>(gg.positions.size()); ++p) {
        const Position& pos = gg.positions[p];
        if (pos.space.empty() || gg.moves[p].empty()) continue;
        const MoveRec* chosen = nullptr;
        if (level[p] > 0) {
            // first move in canonical order whose every answer is strictly
            // closer to capture; one exists by the attractor round rule
            for (const MoveRec& mr : gg.moves[p]) {
                bool good = true;
                for (int s : mr.succ)
                    if (level[s] < 0 || level[s] >= level[p]) { good = false; break; }
                if (good) { chosen = &mr; break; }
            }
            assert(chosen != nullptr);
        }
        if (chosen == nullptr) chosen = &gg.moves[p][0];
        out.strategy.emplace(pos, chosen->next);
    }
    return out;
}

SolveReport solve(const Digraph& g, const SolveOptions& opt) {
    for (int k = 1; k <= g.vertex_count(); ++k) {
        FixedKOutcome fk = solve_fixed_k(g, opt, k);
        if (fk.searcher_wins)
            return {opt.variant, opt.monotone, opt.stationary, k, std::move(fk.strategy)};
    }
    // n searchers can always place every vertex, so this is unreachable
    throw std::logic_error("no winning searcher strategy found with n searchers");
}

int search_number(const Digraph& g, const SolveOptions& opt) {
    for (int k = 1; k <= g.vertex_count(); ++k)
        if (solve_fixed_k(g, opt, k).searcher_wins) return k;
    throw std::logic_error("no winning searcher strategy found with n searchers");
}

SearchNumbers all_search_numbers(const Digraph& g) {
    SearchNumbers out;
    out.lifo_i = search_number(g, {GameVariant::i, false, false});
    out.lifo_isc = search_number(g, {GameVariant::isc, false, false});
    out.lifo_v = search_number(g, {GameVariant::v, false, false});
    out.lifo_vsc = search_number(g, {GameVariant::vsc, false, false});
    out.lifo_mi = search_number(g, {GameVariant::i, true, false});
    out.lifo_misc = search_number(g, {GameVariant::isc, true, false});
    out.lifo_mv = search_number(g, {GameVariant::v, true, false});
    out.lifo_mvsc = search_number(g, {GameVariant::vsc, true, false});
    out.sstat_vsc = search_number(g, {GameVariant::vsc, false, true});
    return out;
}

VertexSet FugitiveStrategy::respond(const Digraph& g, GameVariant variant, const Position& pos,
                                    const SearcherStack& next) const {
    if (next.size() < order) {
        auto it = table.find(next.word());
        if (it != table.end()) return it->second;
        throw StrategyError("fugitive strategy has no entry for stack " + next.to_string());
    }
    // deeper than the covered stacks: concede the first canonical answer
    return fugitive_responses(g, variant, pos, next).front();
}

PlayTrace play(const Digraph& g, GameVariant variant, int k, const SearcherAgent& searcher,
               const FugitiveStrategy* fugitive) {
    if (is_visible(variant) && fugitive == nullptr)
        throw StrategyError("visible variants need an explicit fugitive strategy");

    PlayTrace trace;
    trace.variant = variant;
    trace.k = k;
    Position pos = start_position(g);
    trace.steps.push_back(pos);
    std::unordered_set<Position, PositionHash> seen{pos};
    size_t script_at = 0;

    for (;;) {
        if (pos.space.empty()) {
            trace.winner = Winner::searcher;
            trace.note = "capture";
            return trace;
        }
        std::vector<SearcherStack> legal = legal_stack_moves(g, variant, pos, k);
        if (legal.empty()) {
            trace.winner = Winner::fugitive;
            trace.note = "searcher has no legal move";
            return trace;
        }

        SearcherStack next;
        if (const StrategyTable* table = std::get_if<StrategyTable>(&searcher)) {
            auto it = table->find(pos);
            if (it == table->end())
                throw StrategyError("searcher strategy has no entry for position " +
                                    pos.to_string());
            next = it->second;
        } else {
            const SearcherScript& script = std::get<SearcherScript>(searcher);
            if (script_at >= script.moves.size()) {
                trace.winner = Winner::fugitive;
                trace.note = "script exhausted";
                return trace;
            }
            ScriptMove mv = script.moves[script_at++];
            if (mv.place) {
                if (mv.vertex < 0 || mv.vertex >= g.vertex_count() ||
                    pos.stack.occupies(mv.vertex))
                    throw StrategyError("script places on unavailable vertex " +
                                        std::to_string(mv.vertex));
                next = pos.stack.pushed(mv.vertex);
            } else {
                if (pos.stack.empty())
                    throw StrategyError("script removes a searcher from an empty stack");
                next = pos.stack.popped();
            }
        }
        if (std::find(legal.begin(), legal.end(), next) == legal.end())
            throw StrategyError("illegal searcher move to " + next.to_string() +
                                " at position " + pos.to_string());

        VertexSet space;
        if (fugitive != nullptr) {
            space = fugitive->respond(g, variant, pos, next);
        } else {
            std::vector<VertexSet> resp = fugitive_responses(g, variant, pos, next);
            assert(resp.size() == 1); // invisible fugitives answer deterministically
            space = resp.front();
        }
        Position np{next, space};
        if (!is_successor(g, variant, pos, np))
            throw StrategyError("fugitive response " + space.to_string() +
                                " is not a valid successor at position " + pos.to_string());

        trace.steps.push_back(np);
        if (!seen.insert(np).second) {
            trace.winner = Winner::fugitive;
            trace.note = "position repeated";
            return trace;
        }
        pos = np;
    }
}

ReplayResult replay_script(const Digraph& g, GameVariant variant, const SearcherScript& script,
                           int k) {
    if (is_visible(variant))
        throw std::invalid_argument("script replay is only defined for the invisible variants");
    if (k < 0) k = g.vertex_count();

    ReplayResult rr;
    rr.trace = play(g, variant, k, SearcherAgent{script}, nullptr);
    rr.monotone = true;
    for (size_t i = 0; i < rr.trace.steps.size(); ++i) {
        rr.max_depth = std::max(rr.max_depth, rr.trace.steps[i].stack.size());
        if (i > 0 && !rr.trace.steps[i - 1].space.contains_all(rr.trace.steps[i].space))
            rr.monotone = false;
    }
    return rr;
}

} // namespace lifo
