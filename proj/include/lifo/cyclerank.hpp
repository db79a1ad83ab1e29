#pragma once

#include <map>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lifo/digraph.hpp"

namespace lifo {

/**
 * Witness for an upper bound on cycle rank. Each node records a vertex whose
 * deletion splits its scope; children cover exactly the components of the
 * residue that still contain a cycle. Acyclic residues carry no node, so the
 * forest depth (nodes on the longest root-to-leaf path) bounds the rank.
 */
struct EliminationNode {
    int vertex;
    VertexSet scope;
    std::vector<EliminationNode> children;

    int depth() const {
        int d = 0;
        for (const EliminationNode& c : children) d = std::max(d, c.depth());
        return d + 1;
    }
};

struct EliminationForest {
    std::vector<EliminationNode> roots;

    int depth() const {
        int d = 0;
        for (const EliminationNode& r : roots) d = std::max(d, r.depth());
        return d;
    }
};

struct RankResult {
    int rank;
    EliminationForest witness;
};

/**
 * Exact cycle rank: 0 for acyclic graphs; 1 + min over single-vertex
 * deletions for strongly connected graphs with a cycle; otherwise the max
 * over strongly connected components.
 *
 * Results for strongly connected vertex subsets are memoized, so one solver
 * instance amortizes across repeated queries on subgraphs of the same host.
 * The memo is guarded by a mutex; concurrent readers of a shared solver are
 * safe, values for a key are unique so replays are benign.
 */
class CycleRankSolver {
public:
    explicit CycleRankSolver(const Digraph& g) : g_(&g) {}

    int rank() const { return rank_of(full_view(*g_)); }
    int rank_of(GraphView view) const;

    // rank_of(view) <= k, computed with budgeted search instead of full rank
    bool decision(GraphView view, int k) const;

    // Rebuilds the optimal witness from memoized vertex choices.
    EliminationForest witness() const { return witness_of(full_view(*g_)); }
    EliminationForest witness_of(GraphView view) const;

private:
    struct Entry {
        int rank;
        int pick; // minimizing deletion vertex, lowest id on ties
    };

    Entry rank_scc(VertexSet comp) const;
    EliminationNode node_for(VertexSet comp) const;

    const Digraph* g_;
    mutable std::unordered_map<uint64_t, Entry> memo_;
    mutable std::map<std::pair<uint64_t, int>, char> decision_memo_;
    mutable std::mutex mutex_;
};

RankResult cycle_rank(const Digraph& g);
bool cycle_rank_decision(const Digraph& g, int k);

/**
 * Independent structural check of a witness. Returns the forest depth, which
 * is an upper bound on (and for optimal witnesses equal to) the cycle rank.
 * Throws CertificateError naming the failing node path otherwise.
 */
int verify_elimination_forest(const Digraph& g, const EliminationForest& f);

} // namespace lifo
