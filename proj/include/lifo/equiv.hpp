#pragma once

#include <cstdint>
#include <string>

#include "lifo/digraph.hpp"

namespace lifo {

/**
 * One-instance check that the nine game numbers, the elimination forest, the
 * shelter, the haven, the synthesized script and the duality play all agree
 * with cycle rank. pass == false carries the first failing property.
 */
struct EquivReport {
    bool pass = true;
    int rank = 0;
    std::string failure;
};

EquivReport check_instance(const Digraph& g);

// Labeled digraphs on n vertices, one per subset of the n(n-1) ordered
// pairs. Pairs are indexed in (u, v) lexicographic order, u outer.
uint64_t digraph_family_size(int n);
Digraph nth_digraph(int n, uint64_t mask);

struct HarnessResult {
    uint64_t checked = 0;
    bool pass = true;
    std::string detail; // first counterexample, with its edge list
};

/**
 * check_instance over every labeled digraph with 1..max_n vertices.
 * jobs <= 0 picks the hardware concurrency. Deterministic: the reported
 * counterexample is the first in enumeration order regardless of jobs.
 */
HarnessResult run_exhaustive(int max_n, int jobs = 0);

// check_instance over `count` seeded random instances: instance i uses seed
// `seed + i`. Same determinism contract as run_exhaustive.
HarnessResult run_random(int n, double p, int count, uint64_t seed, int jobs = 0);

} // namespace lifo
