#include "lifo/equiv.hpp"

#include <atomic>
#include <cassert>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "lifo/certificates.hpp"
#include "lifo/cyclerank.hpp"
#include "lifo/errors.hpp"
#include "lifo/game.hpp"
#include "lifo/io.hpp"

namespace lifo {

namespace {

std::string describe(const Digraph& g) {
    std::ostringstream ss;
    ss << g.vertex_count() << " vertices, edges:";
    for (auto [u, v] : g.edges()) ss << " " << u << ">" << v;
    return ss.str();
}

std::string fail_msg(const char* what, const std::string& detail) {
    return std::string(what) + ": " + detail;
}

} // namespace

EquivReport check_instance(const Digraph& g) {
    EquivReport rep;
    CycleRankSolver solver(g);
    rep.rank = solver.rank();
    auto fail = [&](std::string msg) {
        rep.pass = false;
        rep.failure = std::move(msg);
        return rep;
    };

    // The forest witness must verify and have depth == rank.
    try {
        int depth = verify_elimination_forest(g, solver.witness());
        if (depth != rep.rank)
            return fail(fail_msg("forest depth disagrees with rank",
                                 std::to_string(depth) + " vs " + std::to_string(rep.rank)));
    } catch (const CertificateError& e) {
        return fail(fail_msg("forest witness rejected", e.what()));
    }

    // All nine game numbers must equal rank + 1.
    SearchNumbers nums = all_search_numbers(g);
    if (!nums.all_equal(rep.rank + 1)) {
        std::ostringstream ss;
        for (auto [name, value] : nums.named()) ss << " " << name << "=" << value;
        return fail(fail_msg("search numbers disagree with 1 + rank", "rank=" +
                                 std::to_string(rep.rank) + ss.str()));
    }

    // Obstructions: shelter of thickness rank + 1, haven of the same order.
    StrongShelter shelter;
    try {
        shelter = build_shelter(g);
        int thickness = verify_shelter(g, shelter);
        if (thickness != rep.rank + 1)
            return fail(fail_msg("shelter thickness disagrees with 1 + rank",
                                 std::to_string(thickness)));
    } catch (const CertificateError& e) {
        return fail(fail_msg("shelter construction failed", e.what()));
    }
    LifoHaven haven;
    try {
        haven = shelter_to_haven(g, shelter);
        if (haven.order != rep.rank + 1)
            return fail(fail_msg("haven order disagrees with 1 + rank",
                                 std::to_string(haven.order)));
    } catch (const CertificateError& e) {
        return fail(fail_msg("haven construction failed", e.what()));
    }

    // The synthesized script must win both invisible variants monotonically
    // with peak stack depth exactly rank + 1.
    SearcherScript script = synthesize_search_script(g, solver.witness());
    for (GameVariant variant : {GameVariant::i, GameVariant::isc}) {
        ReplayResult rr;
        try {
            rr = replay_script(g, variant, script);
        } catch (const StrategyError& e) {
            return fail(fail_msg("script replay error", e.what()));
        }
        if (rr.trace.winner != Winner::searcher)
            return fail(fail_msg("script loses", "variant " + variant_name(variant) + ", " +
                                     rr.trace.note));
        if (!rr.monotone)
            return fail(fail_msg("script replay is not monotone", variant_name(variant)));
        if (rr.max_depth != rep.rank + 1)
            return fail(fail_msg("script stack depth disagrees with 1 + rank",
                                 variant_name(variant) + " depth " +
                                     std::to_string(rr.max_depth)));
    }

    // Duality: with only rank searchers the solver loses, and the haven
    // fugitive defeats the solver's own optimal table in live play.
    if (rep.rank >= 1) {
        SolveOptions opt{GameVariant::vsc, false, false};
        FixedKOutcome under = solve_fixed_k(g, opt, rep.rank);
        if (under.searcher_wins)
            return fail("vsc searcher wins with rank searchers, expected a loss");
        FugitiveStrategy rho = haven_to_fugitive_strategy(g, haven);
        PlayTrace tr;
        try {
            tr = play(g, GameVariant::vsc, rep.rank, under.strategy, &rho);
        } catch (const StrategyError& e) {
            return fail(fail_msg("duality play error", e.what()));
        }
        if (tr.winner != Winner::fugitive)
            return fail(fail_msg("haven fugitive lost against rank searchers", tr.note));
    }

    return rep;
}

uint64_t digraph_family_size(int n) {
    assert(n >= 1 && n <= 8);
    return uint64_t{1} << (uint64_t{1} * n * (n - 1));
}

Digraph nth_digraph(int n, uint64_t mask) {
    assert(n >= 1 && n <= 8);
    assert(mask < digraph_family_size(n));
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (mask >> bit & 1) edges.push_back({u, v});
            ++bit;
        }
    return Digraph(n, edges);
}

namespace {

// Runs check_instance over an indexed family, claiming indices atomically.
// Failures land in a per-index slot so the first one is deterministic.
template <typename MakeGraph>
HarnessResult run_indexed(uint64_t count, int jobs, MakeGraph make_graph) {
    HarnessResult result;
    result.checked = count;
    if (count == 0) return result;

    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : (hw ? hw : 1);
    if (workers > count) workers = static_cast<unsigned>(count);

    std::vector<std::optional<std::string>> failures(count);
    std::atomic<uint64_t> next{0};
    std::atomic<uint64_t> executed{0};
    std::atomic<uint64_t> fail_floor{count}; // lowest failing index so far

    auto worker = [&] {
        for (;;) {
            uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            if (i > fail_floor.load()) continue; // a smaller index already failed
            Digraph g = make_graph(i);
            std::optional<std::string> failure;
            try {
                EquivReport rep = check_instance(g);
                if (!rep.pass) failure = rep.failure;
            } catch (const std::exception& e) {
                failure = std::string("unexpected exception: ") + e.what();
            }
            executed.fetch_add(1);
            if (failure) {
                failures[i] = *failure + " [" + describe(g) + "]";
                uint64_t prev = fail_floor.load();
                while (i < prev && !fail_floor.compare_exchange_weak(prev, i)) {
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    result.checked = executed.load();

    for (uint64_t i = 0; i < count; ++i)
        if (failures[i]) {
            result.pass = false;
            result.detail = "instance " + std::to_string(i) + ": " + *failures[i];
            return result;
        }
    return result;
}

} // namespace

HarnessResult run_exhaustive(int max_n, int jobs) {
    if (max_n < 1 || max_n > 5)
        throw std::invalid_argument("run_exhaustive: max_n must be in [1, 5]");
    uint64_t total = 0;
    for (int n = 1; n <= max_n; ++n) total += digraph_family_size(n);

    // Map a flat index to (n, mask).
    auto make_graph = [max_n](uint64_t i) {
        for (int n = 1; n <= max_n; ++n) {
            uint64_t size = digraph_family_size(n);
            if (i < size) return nth_digraph(n, i);
            i -= size;
        }
        assert(false);
        return Digraph(1, {});
    };
    return run_indexed(total, jobs, make_graph);
}

HarnessResult run_random(int n, double p, int count, uint64_t seed, int jobs) {
    if (count < 0) throw std::invalid_argument("run_random: count must be nonnegative");
    auto make_graph = [n, p, seed](uint64_t i) {
        return generate_random({n, p, seed + i});
    };
    return run_indexed(static_cast<uint64_t>(count), jobs, make_graph);
}

} // namespace lifo
