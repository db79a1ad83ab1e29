#include "lifo/cyclerank.hpp"

#include <algorithm>
#include <cassert>

#include "lifo/errors.hpp"

namespace lifo {

int CycleRankSolver::rank_of(GraphView view) const {
    assert(view.host == g_);
    int best = 0;
    for (const VertexSet& comp : scc_decompose(view).components)
        if (comp.size() >= 2) best = std::max(best, rank_scc(comp).rank);
    return best;
}

CycleRankSolver::Entry CycleRankSolver::rank_scc(VertexSet comp) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(comp.bits());
        if (it != memo_.end()) return it->second;
    }

    // min over deletions; candidates are scanned in ascending id order and
    // only strict improvements are kept, so ties resolve to the lowest id
    Entry best{comp.size(), -1};
    for (int v : comp) {
        GraphView residue{g_, comp.without(v)};
        SccDecomposition dec = scc_decompose(residue);
        int lower = 0;
        for (const VertexSet& c : dec.components)
            if (c.size() >= 2) { lower = 1; break; }
        if (1 + lower >= best.rank) continue; // cannot beat the incumbent
        int r = 0;
        for (const VertexSet& c : dec.components)
            if (c.size() >= 2) r = std::max(r, rank_scc(c).rank);
        if (1 + r < best.rank) best = {1 + r, v};
        if (best.rank == 1) break;
    }

    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(comp.bits(), best);
    return best;
}

bool CycleRankSolver::decision(GraphView view, int k) const {
    assert(view.host == g_);
    if (k < 0) return false;
    for (const VertexSet& comp : scc_decompose(view).components) {
        if (comp.size() < 2) continue;
        if (k == 0) return false;

        auto key = std::make_pair(comp.bits(), k);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = decision_memo_.find(key);
            if (it != decision_memo_.end()) {
                if (it->second) continue;
                return false;
            }
            auto known = memo_.find(comp.bits());
            if (known != memo_.end()) {
                if (known->second.rank <= k) continue;
                return false;
            }
        }

        bool ok = false;
        for (int v : comp) {
            if (decision(GraphView{g_, comp.without(v)}, k - 1)) { ok = true; break; }
        }
        {
            std::lock_guard<std::mutex> lock(mutex_);
            decision_memo_.emplace(key, ok ? 1 : 0);
        }
        if (!ok) return false;
    }
    return true;
}

EliminationNode CycleRankSolver::node_for(VertexSet comp) const {
    Entry e = rank_scc(comp);
    EliminationNode node{e.pick, comp, {}};
    for (const VertexSet& c : scc_decompose(GraphView{g_, comp.without(e.pick)}).components)
        if (c.size() >= 2) node.children.push_back(node_for(c));
    return node;
}

EliminationForest CycleRankSolver::witness_of(GraphView view) const {
    EliminationForest f;
    for (const VertexSet& comp : scc_decompose(view).components)
        if (comp.size() >= 2) f.roots.push_back(node_for(comp));
    return f;
}

RankResult cycle_rank(const Digraph& g) {
    CycleRankSolver solver(g);
    return {solver.rank(), solver.witness()};
}

bool cycle_rank_decision(const Digraph& g, int k) {
    CycleRankSolver solver(g);
    return solver.decision(full_view(g), k);
}

namespace {

// children must partition exactly the cyclic components of the residue
void check_cover(const Digraph& g, VertexSet residue,
                 const std::vector<EliminationNode>& nodes, const std::string& path) {
    std::vector<VertexSet> expected;
    for (const VertexSet& c : scc_decompose(GraphView{&g, residue}).components)
        if (c.size() >= 2) expected.push_back(c);

    if (nodes.size() != expected.size())
        throw CertificateError(path + ": expected " + std::to_string(expected.size()) +
                               " nodes for the cyclic components, found " +
                               std::to_string(nodes.size()));
    for (const EliminationNode& node : nodes) {
        bool found = false;
        for (const VertexSet& c : expected)
            if (c == node.scope) { found = true; break; }
        if (!found)
            throw CertificateError(path + ": scope " + node.scope.to_string() +
                                   " is not a cyclic component of the residue");
    }
    // sizes match and expected sets are pairwise distinct, so it is a bijection
    // unless the certificate repeats a scope
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i].scope == nodes[j].scope)
                throw CertificateError(path + ": duplicate scope " + nodes[i].scope.to_string());
}

int check_node(const Digraph& g, const EliminationNode& node, const std::string& path) {
    if (node.scope.empty())
        throw CertificateError(path + ": empty scope");
    if (!g.vertices().contains_all(node.scope))
        throw CertificateError(path + ": scope contains an unknown vertex id");
    if (!is_strongly_connected(GraphView{&g, node.scope}))
        throw CertificateError(path + ": scope " + node.scope.to_string() +
                               " is not strongly connected");
    if (node.vertex < 0 || !node.scope.contains(node.vertex))
        throw CertificateError(path + ": deletion vertex " + std::to_string(node.vertex) +
                               " is not in scope " + node.scope.to_string());

    check_cover(g, node.scope.without(node.vertex), node.children, path);
    int depth = 0;
    for (size_t i = 0; i < node.children.size(); ++i)
        depth = std::max(depth,
                         check_node(g, node.children[i], path + ".children[" + std::to_string(i) + "]"));
    return depth + 1;
}

} // namespace

int verify_elimination_forest(const Digraph& g, const EliminationForest& f) {
    check_cover(g, g.vertices(), f.roots, "roots");
    int depth = 0;
    for (size_t i = 0; i < f.roots.size(); ++i)
        depth = std::max(depth, check_node(g, f.roots[i], "roots[" + std::to_string(i) + "]"));
    return depth;
}

} // namespace lifo
