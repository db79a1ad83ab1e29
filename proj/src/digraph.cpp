#include "lifo/digraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace lifo {

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& edges,
                 std::vector<std::string> labels)
    : n_(n), edge_count_(0), out_(n), in_(n), labels_(std::move(labels)) {
    if (n < 1 || n > kMaxVertices)
        throw std::invalid_argument("vertex count must be in [1, 64], got " + std::to_string(n));
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
        throw std::invalid_argument("label count does not match vertex count");
    if (labels_.empty()) {
        labels_.reserve(n);
        for (int v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
    }
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) +
                                        ", " + std::to_string(v) + ")");
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (out_[u].contains(v))
            throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " +
                                        std::to_string(v) + ")");
        out_[u] |= VertexSet::single(v);
        in_[v] |= VertexSet::single(u);
        ++edge_count_;
    }
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v : out_[u]) es.emplace_back(u, v);
    return es;
}

GraphView induced_subgraph(const Digraph& g, VertexSet drop) {
    if (!g.vertices().contains_all(drop))
        throw std::invalid_argument("dropped set contains a vertex id >= " +
                                    std::to_string(g.vertex_count()));
    return {&g, g.vertices() - drop};
}

namespace {

// Tarjan; components are appended in completion order (reverse topological).
struct TarjanState {
    const GraphView& view;
    std::vector<int> index, low;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    std::vector<VertexSet> comps;

    explicit TarjanState(const GraphView& v)
        : view(v), index(v.host->vertex_count(), -1), low(v.host->vertex_count(), 0),
          on_stack(v.host->vertex_count(), false) {}

    void dfs(int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : view.out(v)) {
            if (index[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            VertexSet comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp |= VertexSet::single(w);
            } while (w != v);
            comps.push_back(comp);
        }
    }
};

} // namespace

SccDecomposition scc_decompose(GraphView view) {
    TarjanState st(view);
    for (int v : view.verts)
        if (st.index[v] < 0) st.dfs(v);
    std::reverse(st.comps.begin(), st.comps.end());

    SccDecomposition dec;
    dec.components = std::move(st.comps);
    dec.comp_of.assign(view.host->vertex_count(), -1);
    for (int i = 0; i < dec.count(); ++i)
        for (int v : dec.components[i]) dec.comp_of[v] = i;
    dec.topo_order.resize(dec.count());
    for (int i = 0; i < dec.count(); ++i) dec.topo_order[i] = i;
    return dec;
}

bool is_strongly_connected(GraphView view) {
    if (view.empty()) return false;
    // reach both ways from one vertex; cheaper than full decomposition
    int s = view.verts.lowest();
    VertexSet fwd = reach_from(view, VertexSet::single(s));
    if (fwd != view.verts) return false;
    VertexSet back = VertexSet::single(s);
    VertexSet frontier = back;
    while (!frontier.empty()) {
        VertexSet next;
        for (int v : frontier) next |= view.in(v);
        next -= back;
        back |= next;
        frontier = next;
    }
    return back == view.verts;
}

VertexSet reach_from(GraphView view, VertexSet seeds) {
    VertexSet r = seeds & view.verts;
    VertexSet frontier = r;
    while (!frontier.empty()) {
        VertexSet next;
        for (int v : frontier) next |= view.out(v);
        next -= r;
        r |= next;
        frontier = next;
    }
    return r;
}

bool is_successor_closed(const Digraph& g, VertexSet h) {
    for (int v : h)
        if (!(g.out(v) - h).empty()) return false;
    return true;
}

bool is_successor_closed(GraphView view, VertexSet h) {
    for (int v : h & view.verts)
        if (!(view.out(v) - h).empty()) return false;
    return true;
}

std::vector<VertexSet> initial_components(GraphView view) {
    SccDecomposition dec = scc_decompose(view);
    std::vector<VertexSet> out;
    for (const VertexSet& comp : dec.components) {
        bool initial = true;
        for (int v : comp) {
            if (!(view.in(v) - comp).empty()) {
                initial = false;
                break;
            }
        }
        if (initial) out.push_back(comp);
    }
    return out;
}

bool has_any_cycle(GraphView view) {
    for (const VertexSet& comp : scc_decompose(view).components)
        if (comp.size() >= 2) return true;
    return false;
}

std::pair<Digraph, std::vector<int>> compact(GraphView view) {
    if (view.empty()) throw std::invalid_argument("cannot compact an empty view");
    std::vector<int> new_to_old = view.verts.to_vector();
    std::vector<int> old_to_new(view.host->vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(new_to_old.size()); ++i)
        old_to_new[new_to_old[i]] = i;

    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;
    for (int u : view.verts) {
        labels.push_back(view.host->label(u));
        for (int v : view.out(u)) edges.emplace_back(old_to_new[u], old_to_new[v]);
    }
    return {Digraph(static_cast<int>(new_to_old.size()), edges, std::move(labels)),
            std::move(new_to_old)};
}

} // namespace lifo
