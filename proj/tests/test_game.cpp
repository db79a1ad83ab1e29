#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lifo/certificates.hpp"
#include "lifo/digraph.hpp"
#include "lifo/equiv.hpp"
#include "lifo/errors.hpp"
#include "lifo/game.hpp"
#include "lifo/io.hpp"
#include "oracles.hpp"

using namespace lifo;

namespace {

VertexSet vs(std::initializer_list<int> xs) {
    VertexSet s;
    for (int x : xs) s = s.with(x);
    return s;
}

Digraph three_cycle() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

Digraph path3() { return Digraph(3, {{0, 1}, {1, 2}}); }

// 0 <-> 1 -> 2 <-> 3
Digraph two_two_cycles() {
    return Digraph(4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}});
}

Digraph bidirected_clique(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) edges.push_back({u, v});
    return Digraph(n, edges);
}

bool contains_response(const std::vector<VertexSet>& responses, VertexSet r) {
    for (VertexSet x : responses)
        if (x == r) return true;
    return false;
}

} // namespace

TEST_CASE("variant names round-trip") {
    CHECK(variant_name(GameVariant::i) == "i");
    CHECK(variant_name(GameVariant::isc) == "isc");
    CHECK(variant_name(GameVariant::v) == "v");
    CHECK(variant_name(GameVariant::vsc) == "vsc");
    for (GameVariant variant : kAllVariants)
        CHECK(variant_from_name(variant_name(variant)) == variant);
    CHECK_THROWS_AS(variant_from_name("visible"), std::invalid_argument);

    CHECK(is_visible(GameVariant::v));
    CHECK(is_visible(GameVariant::vsc));
    CHECK_FALSE(is_visible(GameVariant::i));
    CHECK(is_component_confined(GameVariant::isc));
    CHECK(is_component_confined(GameVariant::vsc));
    CHECK_FALSE(is_component_confined(GameVariant::v));
}

TEST_CASE("searcher stacks push, pop and print") {
    SearcherStack s;
    CHECK(s.empty());
    CHECK(s.to_string() == "<>");

    SearcherStack t = s.pushed(2).pushed(0).pushed(1);
    CHECK(t.word() == std::vector<int>{2, 0, 1});
    CHECK(t.to_string() == "<2,0,1>");
    CHECK(t.letters() == vs({0, 1, 2}));
    CHECK(t.top() == 1);
    CHECK(t.occupies(0));
    CHECK_FALSE(t.occupies(3));

    SearcherStack u = t.popped();
    CHECK(u.word() == std::vector<int>{2, 0});
    CHECK(u.is_prefix_of(t));
    CHECK_FALSE(t.is_prefix_of(u));
    CHECK(s.is_prefix_of(t));

    CHECK_THROWS_AS(SearcherStack({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SearcherStack({-1}), std::invalid_argument);
    CHECK_THROWS_AS(SearcherStack({64}), std::invalid_argument);
}

TEST_CASE("raw searcher moves enumerate pushes then pop") {
    Digraph g = three_cycle();

    std::vector<SearcherStack> from_start = searcher_moves(g, start_position(g), 2);
    REQUIRE(from_start.size() == 3);
    CHECK(from_start[0].word() == std::vector<int>{0});
    CHECK(from_start[1].word() == std::vector<int>{1});
    CHECK(from_start[2].word() == std::vector<int>{2});

    Position full{SearcherStack({1, 2}), vs({0})};
    std::vector<SearcherStack> from_full = searcher_moves(g, full, 2);
    REQUIRE(from_full.size() == 1);
    CHECK(from_full[0].word() == std::vector<int>{1});

    Position mid{SearcherStack({1}), vs({0, 2})};
    std::vector<SearcherStack> from_mid = searcher_moves(g, mid, 2);
    REQUIRE(from_mid.size() == 3);
    CHECK(from_mid[0].word() == std::vector<int>{1, 0});
    CHECK(from_mid[1].word() == std::vector<int>{1, 2});
    CHECK(from_mid[2].empty());

    CHECK(searcher_moves(g, start_position(g), 0).empty());
}

TEST_CASE("position validity per variant") {
    Digraph g = two_two_cycles();
    auto valid = [&](GameVariant variant, SearcherStack stack, VertexSet space) {
        return is_valid_position(g, variant, Position{stack, space});
    };
    SearcherStack eps;

    SUBCASE("invisible free movement needs a successor-closed space") {
        CHECK(valid(GameVariant::i, eps, g.vertices()));
        CHECK(valid(GameVariant::i, eps, vs({2, 3})));
        CHECK(valid(GameVariant::i, eps, VertexSet{}));
        CHECK_FALSE(valid(GameVariant::i, eps, vs({0, 1}))); // 1 -> 2 leaves
        CHECK_FALSE(valid(GameVariant::i, eps, vs({3})));    // 3 -> 2 leaves
    }

    SUBCASE("component-confined invisible needs a union of components") {
        CHECK(valid(GameVariant::isc, eps, vs({0, 1})));
        CHECK(valid(GameVariant::isc, eps, vs({2, 3})));
        CHECK(valid(GameVariant::isc, eps, g.vertices()));
        CHECK_FALSE(valid(GameVariant::isc, eps, vs({0})));
        CHECK_FALSE(valid(GameVariant::isc, eps, vs({0, 1, 2})));
    }

    SUBCASE("visible free movement also needs a unique initial component") {
        CHECK(valid(GameVariant::v, eps, g.vertices()));
        CHECK(valid(GameVariant::v, eps, vs({2, 3})));
        CHECK_FALSE(valid(GameVariant::v, eps, vs({0, 1})));
    }

    SUBCASE("visible confined needs one whole component of the residue") {
        CHECK(valid(GameVariant::vsc, eps, vs({0, 1})));
        CHECK(valid(GameVariant::vsc, eps, vs({2, 3})));
        CHECK_FALSE(valid(GameVariant::vsc, eps, vs({0})));
        // residue without vertex 0 has components {1}, {2,3}
        CHECK(valid(GameVariant::vsc, SearcherStack({0}), vs({1})));
        // the start (eps, V) stays admissible even though V spans two components
        CHECK(valid(GameVariant::vsc, eps, g.vertices()));
        CHECK(is_special_start(g, GameVariant::vsc, start_position(g)));
    }

    SUBCASE("searchers and fugitive never share a vertex") {
        for (GameVariant variant : kAllVariants)
            CHECK_FALSE(valid(variant, SearcherStack({0}), vs({0, 1})));
    }

    SUBCASE("spaces outside the vertex range are rejected") {
        CHECK_FALSE(valid(GameVariant::i, eps, vs({5})));
    }
}

TEST_CASE("special start pins the stack and frees the fugitive") {
    SUBCASE("confined visible game on a graph with two components") {
        Digraph g = two_two_cycles();
        Position start = start_position(g);
        REQUIRE(is_special_start(g, GameVariant::vsc, start));

        std::vector<SearcherStack> moves = legal_stack_moves(g, GameVariant::vsc, start, 2);
        REQUIRE(moves.size() == 1);
        CHECK(moves[0].empty());

        std::vector<VertexSet> responses =
            fugitive_responses(g, GameVariant::vsc, start, SearcherStack{});
        REQUIRE(responses.size() == 2);
        CHECK(contains_response(responses, vs({0, 1})));
        CHECK(contains_response(responses, vs({2, 3})));

        CHECK(is_successor(g, GameVariant::vsc, start, Position{SearcherStack{}, vs({0, 1})}));
        CHECK(is_successor(g, GameVariant::vsc, start, Position{SearcherStack{}, vs({2, 3})}));
        CHECK_FALSE(is_successor(g, GameVariant::vsc, start, start));
        CHECK_FALSE(is_successor(g, GameVariant::vsc, start, Position{SearcherStack{}, vs({0})}));
    }

    SUBCASE("free visible game on two isolated vertices") {
        Digraph g(2, {});
        Position start = start_position(g);
        REQUIRE(is_special_start(g, GameVariant::v, start));
        std::vector<VertexSet> responses =
            fugitive_responses(g, GameVariant::v, start, SearcherStack{});
        REQUIRE(responses.size() == 2);
        CHECK(contains_response(responses, vs({0})));
        CHECK(contains_response(responses, vs({1})));
    }

    SUBCASE("a path has a unique initial component, so its start is ordinary") {
        Digraph g = path3();
        CHECK_FALSE(is_special_start(g, GameVariant::v, start_position(g)));
        std::vector<SearcherStack> moves =
            legal_stack_moves(g, GameVariant::v, start_position(g), 1);
        REQUIRE(moves.size() == 3);
        CHECK(moves[0].word() == std::vector<int>{0});
    }

    SUBCASE("a strongly connected graph never starts special") {
        Digraph g = three_cycle();
        CHECK_FALSE(is_special_start(g, GameVariant::vsc, start_position(g)));
    }
}

TEST_CASE("canonical fugitive responses") {
    SUBCASE("invisible response is the reachable set minus the new stack") {
        Digraph g = three_cycle();
        std::vector<VertexSet> r =
            fugitive_responses(g, GameVariant::i, start_position(g), SearcherStack({0}));
        REQUIRE(r.size() == 1);
        CHECK(r[0] == vs({1, 2}));
    }

    SUBCASE("confined invisible response unions the components meeting the space") {
        Digraph g = two_two_cycles();
        std::vector<VertexSet> r =
            fugitive_responses(g, GameVariant::isc, start_position(g), SearcherStack({0}));
        REQUIRE(r.size() == 1);
        CHECK(r[0] == vs({1, 2, 3}));
    }

    SUBCASE("visible confined offers one candidate per component") {
        Digraph g = three_cycle();
        std::vector<VertexSet> r =
            fugitive_responses(g, GameVariant::vsc, start_position(g), SearcherStack({0}));
        REQUIRE(r.size() == 2);
        CHECK(contains_response(r, vs({1})));
        CHECK(contains_response(r, vs({2})));
    }

    SUBCASE("visible free candidates are inclusion-maximal reach closures") {
        // on the path 0 -> 1 -> 2, placing at 2 leaves closures {0,1} and {1};
        // only the maximal one survives
        Digraph g = path3();
        std::vector<VertexSet> r = fugitive_responses(
            g, GameVariant::v, start_position(g), SearcherStack({2}));
        REQUIRE(r.size() == 1);
        CHECK(r[0] == vs({0, 1}));

        // out-star: deleting the center leaves incomparable closures
        Digraph star(3, {{0, 1}, {0, 2}});
        std::vector<VertexSet> rs = fugitive_responses(
            star, GameVariant::v, start_position(star), SearcherStack({0}));
        REQUIRE(rs.size() == 2);
        CHECK(contains_response(rs, vs({1})));
        CHECK(contains_response(rs, vs({2})));
    }

    SUBCASE("removing a searcher can grow the invisible space back") {
        Digraph g = three_cycle();
        Position pos{SearcherStack({0}), vs({1, 2})};
        std::vector<VertexSet> r =
            fugitive_responses(g, GameVariant::i, pos, SearcherStack{});
        REQUIRE(r.size() == 1);
        CHECK(r[0] == g.vertices());
    }

    SUBCASE("a cornered fugitive is captured") {
        Digraph k1(1, {});
        std::vector<VertexSet> r =
            fugitive_responses(k1, GameVariant::i, start_position(k1), SearcherStack({0}));
        REQUIRE(r.size() == 1);
        CHECK(r[0].empty());
    }

    SUBCASE("the capture position only answers with capture") {
        Digraph g = three_cycle();
        Position captured{SearcherStack({0}), VertexSet{}};
        std::vector<VertexSet> r =
            fugitive_responses(g, GameVariant::i, captured, SearcherStack{});
        REQUIRE(r.size() == 1);
        CHECK(r[0].empty());
    }
}

TEST_CASE("successor relation follows the definitions") {
    Digraph g = three_cycle();
    Position start = start_position(g);

    CHECK(is_successor(g, GameVariant::i, start, Position{SearcherStack({0}), vs({1, 2})}));
    // {1} is not successor-closed in the residue, so it is not even a position
    CHECK_FALSE(is_successor(g, GameVariant::i, start, Position{SearcherStack({0}), vs({1})}));
    // two placements at once
    CHECK_FALSE(is_successor(g, GameVariant::i, start, Position{SearcherStack({0, 1}), vs({2})}));
    // the stack must change outside the special start
    Position mid{SearcherStack({0}), vs({1, 2})};
    CHECK_FALSE(is_successor(g, GameVariant::i, mid, mid));
    CHECK(is_successor(g, GameVariant::i, mid, Position{SearcherStack({0, 1}), vs({2})}));
    CHECK(is_successor(g, GameVariant::i, mid, start));

    Digraph h = two_two_cycles();
    Position left{SearcherStack{}, vs({0, 1})};
    CHECK(is_successor(h, GameVariant::vsc, left, Position{SearcherStack({0}), vs({1})}));
    CHECK(is_successor(h, GameVariant::vsc, left, Position{SearcherStack({2}), vs({0, 1})}));
    // {3} is a component of the residue but shares no component with {0,1}
    CHECK_FALSE(is_successor(h, GameVariant::vsc, left, Position{SearcherStack({2}), vs({3})}));
}

TEST_CASE("fixed searcher budgets") {
    SUBCASE("one searcher clears a path") {
        Digraph g = path3();
        CHECK(solve_fixed_k(g, {GameVariant::i, false, false}, 1).searcher_wins);
        CHECK_FALSE(solve_fixed_k(g, {GameVariant::i, false, false}, 0).searcher_wins);
    }

    SUBCASE("a cycle needs two searchers") {
        Digraph g = three_cycle();
        FixedKOutcome lost = solve_fixed_k(g, {GameVariant::vsc, false, false}, 1);
        CHECK_FALSE(lost.searcher_wins);
        CHECK(lost.reachable_positions > 0);

        FixedKOutcome won = solve_fixed_k(g, {GameVariant::vsc, false, false}, 2);
        CHECK(won.searcher_wins);
        CHECK(won.strategy.count(start_position(g)) == 1);
    }

    SUBCASE("a bidirected triangle needs three searchers") {
        Digraph g = bidirected_clique(3);
        CHECK_FALSE(solve_fixed_k(g, {GameVariant::v, false, false}, 2).searcher_wins);
        CHECK(solve_fixed_k(g, {GameVariant::v, false, false}, 3).searcher_wins);
    }

    SUBCASE("negative budgets are rejected") {
        CHECK_THROWS_AS(solve_fixed_k(path3(), {GameVariant::i, false, false}, -1),
                        std::invalid_argument);
    }
}

TEST_CASE("solve and search numbers on reference families") {
    SUBCASE("acyclic graphs need one searcher in the nine standard games") {
        Digraph g = path3();
        for (GameVariant variant : kAllVariants)
            for (bool monotone : {false, true})
                CHECK(search_number(g, {variant, monotone, false}) == 1);
        CHECK(search_number(g, {GameVariant::vsc, false, true}) == 1);
    }

    SUBCASE("stationary searchers outside vsc can need more than the rank") {
        // with removals forbidden and no component structure to exploit, the
        // searchers must blanket the path
        Digraph g = path3();
        CHECK(search_number(g, {GameVariant::i, false, true}) == 3);
        CHECK(search_number(g, {GameVariant::isc, false, true}) == 3);
        CHECK(search_number(g, {GameVariant::v, false, true}) == 2);
    }

    SUBCASE("single vertex") {
        Digraph k1(1, {});
        SearchNumbers nums = all_search_numbers(k1);
        CHECK(nums.all_equal(1));
    }

    SUBCASE("directed triangle") {
        Digraph g = three_cycle();
        SearchNumbers nums = all_search_numbers(g);
        CHECK(nums.all_equal(2));
        CHECK(search_number(g, {GameVariant::vsc, false, true}) == 2);
        CHECK(search_number(g, {GameVariant::v, true, false}) == 2);
    }

    SUBCASE("bidirected cliques") {
        CHECK(all_search_numbers(bidirected_clique(3)).all_equal(3));
        CHECK(all_search_numbers(bidirected_clique(4)).all_equal(4));
    }

    SUBCASE("solve returns the witness table for the minimal budget") {
        Digraph g = three_cycle();
        SolveReport rep = solve(g, {GameVariant::vsc, false, false});
        CHECK(rep.search_number == 2);
        CHECK(rep.variant == GameVariant::vsc);
        REQUIRE(rep.strategy.count(start_position(g)) == 1);
        CHECK(rep.strategy.at(start_position(g)).size() == 1);
    }
}

TEST_CASE("restricted games never get easier") {
    std::vector<Digraph> samples;
    samples.push_back(path3());
    samples.push_back(three_cycle());
    samples.push_back(two_two_cycles());
    samples.push_back(bidirected_clique(3));
    samples.push_back(generate_random({5, 0.4, 7}));
    samples.push_back(generate_random({6, 0.3, 11}));

    for (const Digraph& g : samples) {
        SearchNumbers n = all_search_numbers(g);
        // monotone dominates plain
        CHECK(n.lifo_i <= n.lifo_mi);
        CHECK(n.lifo_isc <= n.lifo_misc);
        CHECK(n.lifo_v <= n.lifo_mv);
        CHECK(n.lifo_vsc <= n.lifo_mvsc);
        // visibility helps the searcher
        CHECK(n.lifo_v <= n.lifo_i);
        CHECK(n.lifo_vsc <= n.lifo_isc);
        CHECK(n.lifo_mv <= n.lifo_mi);
        CHECK(n.lifo_mvsc <= n.lifo_misc);
        // component confinement helps the searcher
        CHECK(n.lifo_isc <= n.lifo_i);
        CHECK(n.lifo_vsc <= n.lifo_v);
        CHECK(n.lifo_misc <= n.lifo_mi);
        CHECK(n.lifo_mvsc <= n.lifo_mv);
        // stationary strategies are monotone
        CHECK(n.lifo_mvsc <= n.sstat_vsc);
    }
}

TEST_CASE("deleting a vertex never raises a search number") {
    std::vector<Digraph> samples;
    samples.push_back(three_cycle());
    samples.push_back(two_two_cycles());
    samples.push_back(bidirected_clique(4));
    samples.push_back(generate_random({6, 0.5, 3}));

    for (const Digraph& g : samples) {
        SearchNumbers whole = all_search_numbers(g);
        for (int v : g.vertices()) {
            GraphView rest = full_view(g).without(v);
            if (rest.empty()) continue;
            auto [sub, ids] = compact(rest);
            SearchNumbers part = all_search_numbers(sub);
            auto w = whole.named();
            auto p = part.named();
            for (size_t i = 0; i < w.size(); ++i) {
                CAPTURE(w[i].first);
                CAPTURE(v);
                CHECK(p[i].second <= w[i].second);
            }
        }
    }
}

TEST_CASE("successor spaces shrink with the fugitive space") {
    // for S inside R with a common stack, every canonical answer from (X, S)
    // sits inside a canonical answer from (X, R)
    for (int n = 1; n <= 3; ++n) {
        for (uint64_t mask = 0; mask < digraph_family_size(n); ++mask) {
            Digraph g = nth_digraph(n, mask);
            std::vector<SearcherStack> stacks = {SearcherStack{}};
            for (int a = 0; a < n; ++a) {
                stacks.push_back(SearcherStack({a}));
                for (int b = 0; b < n; ++b)
                    if (b != a) stacks.push_back(SearcherStack({a, b}));
            }
            for (GameVariant variant : kAllVariants) {
                for (const SearcherStack& stack : stacks) {
                    uint64_t avail = (g.vertices() - stack.letters()).bits();
                    for (uint64_t rb = 0;; rb = (rb - avail) & avail) {
                        VertexSet r{rb};
                        Position big{stack, r};
                        if (is_valid_position(g, variant, big) &&
                            !is_special_start(g, variant, big)) {
                            for (uint64_t sb = 0;; sb = (sb - rb) & rb) {
                                VertexSet s{sb};
                                Position small{stack, s};
                                if (is_valid_position(g, variant, small) &&
                                    !is_special_start(g, variant, small)) {
                                    for (const SearcherStack& mv :
                                         legal_stack_moves(g, variant, big, 3)) {
                                        auto rr = fugitive_responses(g, variant, big, mv);
                                        auto ss = fugitive_responses(g, variant, small, mv);
                                        for (VertexSet x : ss) {
                                            bool covered = false;
                                            for (VertexSet y : rr)
                                                if (x.is_subset_of(y)) covered = true;
                                            CAPTURE(n);
                                            CAPTURE(mask);
                                            CAPTURE(variant_name(variant));
                                            CAPTURE(big.to_string());
                                            CAPTURE(small.to_string());
                                            CHECK(covered);
                                        }
                                    }
                                }
                                if (sb == rb) break;
                            }
                        }
                        if (rb == avail) break;
                    }
                }
            }
        }
    }
}

TEST_CASE("engine agrees with the definition-level oracle") {
    for (int n = 1; n <= 3; ++n) {
        for (uint64_t mask = 0; mask < digraph_family_size(n); ++mask) {
            Digraph g = nth_digraph(n, mask);
            for (GameVariant variant : kAllVariants) {
                for (bool monotone : {false, true}) {
                    for (bool stationary : {false, true}) {
                        int fast = search_number(g, {variant, monotone, stationary});
                        int slow = oracle::naive_search_number(g, variant, monotone, stationary);
                        CAPTURE(n);
                        CAPTURE(mask);
                        CAPTURE(variant_name(variant));
                        CAPTURE(monotone);
                        CAPTURE(stationary);
                        CHECK(fast == slow);
                    }
                }
            }
        }
    }
}

TEST_CASE("plays are refereed end to end") {
    Digraph g = three_cycle();

    SUBCASE("a synthesized script captures on a directed triangle") {
        SearcherScript script = synthesize_search_script(g, cycle_rank(g).witness);
        std::vector<ScriptMove> expected = {{true, 0}, {true, 1}, {false, -1},
                                            {true, 2}, {false, -1}, {false, -1}};
        CHECK(script.moves == expected);

        ReplayResult rr = replay_script(g, GameVariant::i, script);
        CHECK(rr.trace.winner == Winner::searcher);
        CHECK(rr.trace.note == "capture");
        CHECK(rr.max_depth == 2);
        CHECK(rr.monotone);

        PlayTrace confined = play(g, GameVariant::isc, 2, SearcherAgent{script}, nullptr);
        CHECK(confined.winner == Winner::searcher);
    }

    SUBCASE("single placement captures on a single vertex") {
        Digraph k1(1, {});
        SearcherScript script{{{true, 0}}};
        PlayTrace trace = play(k1, GameVariant::i, 1, SearcherAgent{script}, nullptr);
        CHECK(trace.winner == Winner::searcher);
        CHECK(trace.note == "capture");
        REQUIRE(trace.steps.size() == 2);
        CHECK(trace.steps.back().space.empty());
    }

    SUBCASE("one searcher against the haven loops forever") {
        LifoHaven haven = shelter_to_haven(g, build_shelter(g));
        FugitiveStrategy fugitive = haven_to_fugitive_strategy(g, haven);
        StrategyTable table = solve_fixed_k(g, {GameVariant::vsc, false, false}, 1).strategy;
        PlayTrace trace = play(g, GameVariant::vsc, 1, SearcherAgent{table}, &fugitive);
        CHECK(trace.winner == Winner::fugitive);
        CHECK(trace.note == "position repeated");
    }

    SUBCASE("a script that walks off the end loses") {
        SearcherScript script{{{true, 0}}};
        ReplayResult rr = replay_script(path3(), GameVariant::i, script, 1);
        CHECK(rr.trace.winner == Winner::fugitive);
        CHECK(rr.trace.note == "script exhausted");
    }

    SUBCASE("no searchers, no moves") {
        PlayTrace trace = play(path3(), GameVariant::i, 0, SearcherAgent{StrategyTable{}}, nullptr);
        CHECK(trace.winner == Winner::fugitive);
        CHECK(trace.note == "searcher has no legal move");
    }

    SUBCASE("visible variants need a fugitive strategy") {
        StrategyTable table = solve_fixed_k(g, {GameVariant::vsc, false, false}, 2).strategy;
        CHECK_THROWS_WITH_AS(play(g, GameVariant::vsc, 2, SearcherAgent{table}, nullptr),
                             doctest::Contains("explicit fugitive"), StrategyError);
    }

    SUBCASE("a gap in the searcher table is reported with its position") {
        LifoHaven haven = shelter_to_haven(g, build_shelter(g));
        FugitiveStrategy fugitive = haven_to_fugitive_strategy(g, haven);
        StrategyTable table = solve_fixed_k(g, {GameVariant::vsc, false, false}, 2).strategy;
        PlayTrace won = play(g, GameVariant::vsc, 2, SearcherAgent{table}, &fugitive);
        REQUIRE(won.winner == Winner::searcher);
        REQUIRE(won.steps.size() >= 2);
        table.erase(won.steps[1]);
        CHECK_THROWS_WITH_AS(play(g, GameVariant::vsc, 2, SearcherAgent{table}, &fugitive),
                             doctest::Contains("no entry for position"), StrategyError);
    }

    SUBCASE("an illegal table move is rejected") {
        LifoHaven haven = shelter_to_haven(g, build_shelter(g));
        FugitiveStrategy fugitive = haven_to_fugitive_strategy(g, haven);
        StrategyTable table;
        table[start_position(g)] = SearcherStack({0, 1});
        CHECK_THROWS_WITH_AS(play(g, GameVariant::vsc, 2, SearcherAgent{table}, &fugitive),
                             doctest::Contains("illegal searcher move"), StrategyError);
    }

    SUBCASE("a gap in the fugitive table is reported with its stack") {
        StrategyTable table = solve_fixed_k(g, {GameVariant::vsc, false, false}, 2).strategy;
        FugitiveStrategy sparse;
        sparse.order = 2;
        sparse.table[{}] = g.vertices();
        CHECK_THROWS_WITH_AS(play(g, GameVariant::vsc, 2, SearcherAgent{table}, &sparse),
                             doctest::Contains("no entry for stack"), StrategyError);
    }

    SUBCASE("an invalid fugitive response is rejected") {
        StrategyTable table = solve_fixed_k(g, {GameVariant::vsc, false, false}, 2).strategy;
        SearcherStack first = table.at(start_position(g));
        FugitiveStrategy bad;
        bad.order = 2;
        // answer the first placement with a set that is not a component
        bad.table[{}] = g.vertices();
        bad.table[first.word()] = g.vertices() - first.letters();
        CHECK_THROWS_WITH_AS(play(g, GameVariant::vsc, 2, SearcherAgent{table}, &bad),
                             doctest::Contains("fugitive response"), StrategyError);
    }

    SUBCASE("script replay is undefined for visible variants") {
        SearcherScript script{{{true, 0}}};
        CHECK_THROWS_AS(replay_script(g, GameVariant::v, script), std::invalid_argument);
    }
}

TEST_CASE("winning tables replay to capture across variants") {
    std::vector<Digraph> samples;
    samples.push_back(three_cycle());
    samples.push_back(two_two_cycles());
    samples.push_back(bidirected_clique(3));

    // an empty table of order zero always answers with the first canonical
    // response, which is legal in every variant
    FugitiveStrategy canonical;

    for (const Digraph& g : samples) {
        LifoHaven haven = shelter_to_haven(g, build_shelter(g));
        FugitiveStrategy retreating = haven_to_fugitive_strategy(g, haven);
        for (GameVariant variant : kAllVariants) {
            SolveReport rep = solve(g, {variant, false, false});
            // haven entries are components, so they are only playable in vsc
            const FugitiveStrategy* fug = variant == GameVariant::vsc ? &retreating
                                          : is_visible(variant)       ? &canonical
                                                                      : nullptr;
            PlayTrace trace = play(g, variant, rep.search_number, SearcherAgent{rep.strategy}, fug);
            CAPTURE(variant_name(variant));
            CHECK(trace.winner == Winner::searcher);
        }

        // the haven survives below its order in the confined visible game
        SolveReport rep = solve(g, {GameVariant::vsc, false, false});
        REQUIRE(rep.search_number == haven.order);
        if (rep.search_number >= 2) {
            int k = rep.search_number - 1;
            StrategyTable losing = solve_fixed_k(g, {GameVariant::vsc, false, false}, k).strategy;
            PlayTrace lost = play(g, GameVariant::vsc, k, SearcherAgent{losing}, &retreating);
            CHECK(lost.winner == Winner::fugitive);
        }
    }
}
