#pragma once

#include <map>
#include <vector>

#include "lifo/cyclerank.hpp"
#include "lifo/digraph.hpp"
#include "lifo/game.hpp"

namespace lifo {

/**
 * Obstruction dual to shallow elimination forests: a collection of nonempty
 * strongly connected vertex sets such that below every member, the maximal
 * proper members have empty common intersection. A fugitive can survive
 * forever against too few searchers by retreating through the collection.
 */
struct StrongShelter {
    std::vector<VertexSet> sets;
};

/**
 * Checks both shelter conditions and returns the thickness: the minimal
 * number of sets on a containment chain that cannot be extended (computed
 * over the cover relation of the collection). Throws CertificateError naming
 * the offending set(s) otherwise.
 */
int verify_shelter(const Digraph& g, const StrongShelter& s);

/**
 * Builds a shelter of thickness exactly cycle_rank(g) + 1. Members are
 * "cores": strongly connected sets whose rank drops under every one-vertex
 * deletion. Containment between cores forces a strict rank drop, which
 * yields the empty-intersection condition. The result is re-verified before
 * returning; a CertificateError reports any gap between the achieved and the
 * requested thickness.
 */
StrongShelter build_shelter(const Digraph& g);

/**
 * Escape policy: for every repetition-free searcher stack X with |X| <
 * order, a nonempty strongly connected component of g minus the occupied
 * vertices. Extending the stack may only shrink the assigned component.
 */
struct LifoHaven {
    int order = 0;
    std::map<std::vector<int>, VertexSet> table;
};

/**
 * Converts a shelter of thickness t into a haven of the same order t:
 * descend to a maximal proper member avoiding each newly placed vertex and
 * report the component around it. Ties resolve to the lexicographically
 * least eligible set. Verifies the shelter first and the haven after.
 */
LifoHaven shelter_to_haven(const Digraph& g, const StrongShelter& s);

/**
 * Checks domain completeness (every repetition-free word shorter than the
 * order has an entry), that every entry is exactly a nonempty strongly
 * connected component of the residual graph, and containment along every
 * stored prefix pair. Throws CertificateError naming the failing word(s).
 */
void verify_haven(const Digraph& g, const LifoHaven& h);

// Verifies the haven, then wraps its table as a playable fugitive strategy
// (stacks at least `order` deep fall back to a canonical response).
FugitiveStrategy haven_to_fugitive_strategy(const Digraph& g, const LifoHaven& h);

/**
 * Turns an elimination forest into a searcher script that wins both
 * invisible variants with a monotone trace: components of the current scope
 * are cleared in topological order, guarding each nontrivial component with
 * a searcher on its forest vertex while the residue is cleared recursively.
 * Maximum stack depth is depth(f) + 1. Verifies the forest first.
 */
SearcherScript synthesize_search_script(const Digraph& g, const EliminationForest& f);

} // namespace lifo
