#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lifo/vertex_set.hpp"

namespace lifo {

/**
 * Simple directed graph: no self-loops, no parallel edges, dense vertex ids
 * 0..n-1. Immutable after construction. At most 64 vertices so that vertex
 * sets fit one machine word.
 */
class Digraph {
public:
    static constexpr int kMaxVertices = 64;

    // labels may be empty, in which case vertex v is labelled to_string(v).
    // Throws std::invalid_argument on bad ids, self-loops or duplicates.
    Digraph(int n, const std::vector<std::pair<int, int>>& edges,
            std::vector<std::string> labels = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }
    VertexSet vertices() const { return VertexSet::first_n(n_); }

    VertexSet out(int v) const { return out_[v]; }
    VertexSet in(int v) const { return in_[v]; }
    bool has_edge(int u, int v) const { return out_[u].contains(v); }

    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // edges sorted by (u, v)
    std::vector<std::pair<int, int>> edges() const;

private:
    int n_;
    int edge_count_;
    std::vector<VertexSet> out_;
    std::vector<VertexSet> in_;
    std::vector<std::string> labels_;
};

/**
 * A vertex-induced subgraph, represented as the host graph plus the set of
 * surviving vertices. Cheap to copy; never materializes adjacency.
 */
struct GraphView {
    const Digraph* host;
    VertexSet verts;

    int size() const { return verts.size(); }
    bool empty() const { return verts.empty(); }
    VertexSet out(int v) const { return host->out(v) & verts; }
    VertexSet in(int v) const { return host->in(v) & verts; }
    GraphView without(VertexSet drop) const { return {host, verts - drop}; }
    GraphView without(int v) const { return {host, verts.without(v)}; }
    GraphView restrict_to(VertexSet keep) const { return {host, verts & keep}; }
};

inline GraphView full_view(const Digraph& g) { return {&g, g.vertices()}; }

// View of g with `drop` removed. Throws std::invalid_argument if drop
// contains an id >= vertex_count.
GraphView induced_subgraph(const Digraph& g, VertexSet drop);

/**
 * Strongly connected components of a view, listed in topological order of
 * the condensation (every edge between distinct components goes from an
 * earlier to a later component... the reverse of Tarjan completion order).
 */
struct SccDecomposition {
    std::vector<VertexSet> components; // topologically ordered
    std::vector<int> comp_of;          // vertex -> component index, -1 outside the view
    std::vector<int> topo_order;       // identity permutation, kept explicit

    int count() const { return static_cast<int>(components.size()); }
};

SccDecomposition scc_decompose(GraphView view);

// True iff the view is nonempty and has exactly one strongly connected component.
bool is_strongly_connected(GraphView view);

// Vertices reachable from seeds (seeds included) by paths inside the view.
VertexSet reach_from(GraphView view, VertexSet seeds);

// True iff no edge of g leaves h (h need not be inside any view).
bool is_successor_closed(const Digraph& g, VertexSet h);

// True iff no edge of the view leaves h ∩ view.
bool is_successor_closed(GraphView view, VertexSet h);

// Components of the view with no incoming edge from the rest of the view.
std::vector<VertexSet> initial_components(GraphView view);

// True iff the view contains a cycle, i.e. some component has >= 2 vertices.
bool has_any_cycle(GraphView view);

// Materialize a view as a standalone Digraph with dense ids.
// Second element maps new ids to host ids (ascending).
std::pair<Digraph, std::vector<int>> compact(GraphView view);

} // namespace lifo
