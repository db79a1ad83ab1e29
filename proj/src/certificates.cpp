#include "lifo/certificates.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdio> // TEMP
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lifo/errors.hpp"
#include "sat_solver.hpp"

namespace lifo {

namespace {

constexpr uint64_t kHavenEntryCap = 1ull << 22;

// Number of repetition-free words shorter than `order` over n vertices,
// saturating just past the cap.
uint64_t haven_domain_size(int n, int order) {
    uint64_t total = 0, perm = 1;
    for (int j = 0; j < order; ++j) {
        total += perm;
        if (total > kHavenEntryCap) return kHavenEntryCap + 1;
        if (j < n) perm *= static_cast<uint64_t>(n - j);
        if (perm > kHavenEntryCap) perm = kHavenEntryCap + 1;
        if (j >= n) perm = 0; // no repetition-free words longer than n
    }
    return total;
}

} // namespace

int verify_shelter(const Digraph& g, const StrongShelter& s) {
    const std::vector<VertexSet>& sets = s.sets;
    if (sets.empty()) throw CertificateError("shelter has no sets");
    size_t m = sets.size();
    for (size_t i = 0; i < m; ++i) {
        VertexSet a = sets[i];
        if (a.empty()) throw CertificateError("shelter contains an empty set");
        if (!g.vertices().contains_all(a))
            throw CertificateError("shelter set " + a.to_string() +
                                   " contains an unknown vertex id");
        if (!is_strongly_connected({&g, a}))
            throw CertificateError("shelter set " + a.to_string() + " is not strongly connected");
        for (size_t j = i + 1; j < m; ++j)
            if (sets[j] == a) throw CertificateError("duplicate shelter set " + a.to_string());
    }

    std::vector<std::vector<bool>> proper(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            proper[i][j] = sets[i].is_proper_subset_of(sets[j]);
    std::vector<std::vector<bool>> cover(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (!proper[i][j]) continue;
            bool direct = true;
            for (size_t c = 0; c < m && direct; ++c)
                if (proper[i][c] && proper[c][j]) direct = false;
            cover[i][j] = direct;
        }

    for (size_t j = 0; j < m; ++j) {
        VertexSet inter = sets[j];
        bool any = false;
        for (size_t i = 0; i < m; ++i)
            if (cover[i][j]) {
                any = true;
                inter = inter & sets[i];
            }
        if (any && !inter.empty())
            throw CertificateError("maximal members below shelter set " + sets[j].to_string() +
                                   " all share " + inter.to_string());
    }

    // minimal length of an inextensible containment chain, over the covers
    std::vector<size_t> by_size(m);
    std::iota(by_size.begin(), by_size.end(), size_t{0});
    std::sort(by_size.begin(), by_size.end(),
              [&sets](size_t a, size_t b) { return sets[a].size() < sets[b].size(); });
    std::vector<int> minlen(m, 0);
    for (size_t j : by_size) {
        int best = 0;
        for (size_t i = 0; i < m; ++i)
            if (cover[i][j] && (best == 0 || minlen[i] < best)) best = minlen[i];
        minlen[j] = best + 1;
    }
    int thickness = 0;
    for (size_t j = 0; j < m; ++j) {
        bool maximal = true;
        for (size_t c = 0; c < m && maximal; ++c)
            if (proper[j][c]) maximal = false;
        if (maximal && (thickness == 0 || minlen[j] < thickness)) thickness = minlen[j];
    }
    assert(thickness > 0);
    return thickness;
}

namespace {

constexpr size_t kShelterSetCap = 1 << 14;
constexpr int kShelterRepairBudget = 1 << 10;
constexpr int kShelterAttemptCap = 32;
constexpr int kExactCompCap = 18;
constexpr size_t kExactSetCap = 2048;
constexpr size_t kExactPairCap = size_t{1} << 18;
constexpr int64_t kExactConflictCap = int64_t{1} << 21;

/**
 * Builds the shelter top-down from minimal full-rank sets. Every member Y of
 * rank r gets, per vertex v, one minimal rank-(r-1) child inside Y minus v,
 * so the maximal members below Y avoid every vertex of Y in turn. Minimal
 * members never nest at equal rank, which keeps those children maximal.
 *
 * The union of the branches is not yet a thickness-(rank+1) collection: a
 * member of one branch can sit directly below a larger member of another
 * with nothing in between, letting a maximal chain skip ranks, and a large
 * member can shadow every small member below a set Y that avoids some vertex
 * w, leaving w in all of Y's maximal lower members. The repair loop fixes
 * both locally until the collection verifies: a cover whose ends are two or
 * more ranks apart gains a strongly connected set strictly between them
 * (preferring candidates that swallow the fewest existing members), and a
 * shared vertex w below Y is cleared by adding an unshadowed component of Y
 * minus w, removing the members that shadow every such component if it has
 * to. Removed sets are never re-added, so every round strictly grows the set
 * of members ever seen and the loop cannot cycle. The trade-off is that a
 * removal can starve a later repair, so the builder is parameterized by a
 * vertex priority order and the caller retries with reshuffled priorities.
 */
class ShelterBuilder {
public:
    ShelterBuilder(const Digraph& g, uint64_t salt) : g_(&g), solver_(g) {
        prio_.resize(g.vertex_count());
        std::iota(prio_.begin(), prio_.end(), 0);
        if (salt != 0) {
            uint64_t state = salt;
            auto next = [&state] {
                state += 0x9e3779b97f4a7c15ull;
                uint64_t z = state;
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
                return z ^ (z >> 31);
            };
            std::vector<int> order = prio_;
            for (size_t i = order.size() - 1; i > 0; --i)
                std::swap(order[i], order[next() % (i + 1)]);
            for (size_t i = 0; i < order.size(); ++i) prio_[order[i]] = static_cast<int>(i);
        }
    }

    StrongShelter run() {
        int t = solver_.rank();
        std::optional<VertexSet> top = find_core(g_->vertices(), t);
        assert(top.has_value());
        top_ = *top;
        add(top_);
        size_t diverged = 0;
        for (int round = 0; round < kShelterRepairBudget; ++round) {
            for (; emitted_ < order_.size(); ++emitted_)
                if (live_.count(order_[emitted_].bits())) emit_children(order_[emitted_]);
            if (diverged == 0) diverged = 2 * live_.size() + 64;
            if (live_.size() > diverged)
                throw CertificateError("shelter repair diverged past " +
                                       std::to_string(diverged) + " sets");
            if (!repair(t)) {
                StrongShelter s;
                for (uint64_t bits : live_) s.sets.push_back(VertexSet(bits));
                return s;
            }
        }
        throw CertificateError("shelter construction did not converge after " +
                               std::to_string(kShelterRepairBudget) + " repairs");
    }

private:
    int rank_of(VertexSet w) { return w.size() == 1 ? 0 : solver_.rank_of({g_, w}); }

    std::vector<int> ordered(VertexSet s) const {
        std::vector<int> vs;
        for (int v : s) vs.push_back(v);
        std::sort(vs.begin(), vs.end(), [this](int a, int b) { return prio_[a] < prio_[b]; });
        return vs;
    }

    int min_prio(VertexSet s) const {
        int best = std::numeric_limits<int>::max();
        for (int v : s) best = std::min(best, prio_[v]);
        return best;
    }

    std::vector<VertexSet> ordered_components(GraphView view) const {
        std::vector<VertexSet> comps = scc_decompose(view).components;
        std::sort(comps.begin(), comps.end(), [this](const VertexSet& a, const VertexSet& b) {
            return min_prio(a) < min_prio(b);
        });
        return comps;
    }

    // A minimal strongly connected subset of `scope` with rank exactly
    // `target`, found by greedily taking the first rank-preserving shrink in
    // priority order. Minimality pins the rank: one deletion drops rank by at
    // most one, so an unshrinkable set cannot sit above the target.
    std::optional<VertexSet> find_core(VertexSet scope, int target) {
        if (target == 0) {
            for (int v : ordered(scope))
                if (!tabu_.count(VertexSet::single(v).bits())) return VertexSet::single(v);
            return std::nullopt;
        }
        std::optional<VertexSet> cur;
        for (const VertexSet& c : ordered_components({g_, scope}))
            if (c.size() >= 2 && solver_.rank_of({g_, c}) >= target) {
                cur = c;
                break;
            }
        if (!cur) return std::nullopt;
        for (bool shrunk = true; shrunk;) {
            shrunk = false;
            for (int v : ordered(*cur)) {
                for (const VertexSet& c : ordered_components({g_, cur->without(v)}))
                    if (c.size() >= 2 && solver_.rank_of({g_, c}) >= target) {
                        cur = c;
                        shrunk = true;
                        break;
                    }
                if (shrunk) break;
            }
        }
        if (tabu_.count(cur->bits())) return std::nullopt;
        return cur;
    }

    bool add(VertexSet w) {
        if (tabu_.count(w.bits()) || !live_.insert(w.bits()).second) return false;
        if (live_.size() > kShelterSetCap)
            throw CertificateError("shelter construction needs more than " +
                                   std::to_string(kShelterSetCap) + " sets");
        order_.push_back(w);
        return true;
    }

    void remove(VertexSet w) {
        live_.erase(w.bits());
        tabu_.insert(w.bits());
    }

    void emit_children(VertexSet w) {
        int r = rank_of(w);
        if (r == 0) return;
        for (int v : ordered(w))
            if (std::optional<VertexSet> c = find_core(w.without(v), r - 1)) add(*c);
    }

    // One verification-and-repair round over the live collection; reports
    // whether anything changed (false once the collection is clean).
    bool repair(int t) {
        std::vector<VertexSet> sets;
        for (uint64_t bits : live_) sets.push_back(VertexSet(bits));
        size_t m = sets.size();
        std::vector<size_t> by_size(m);
        std::iota(by_size.begin(), by_size.end(), size_t{0});
        std::sort(by_size.begin(), by_size.end(),
                  [&sets](size_t a, size_t b) { return sets[a].size() < sets[b].size(); });
        // the covers below j are the maximal proper subsets of j; scanning by
        // descending size keeps the found maxima as a small antichain filter
        std::vector<std::vector<size_t>> covers_below(m);
        for (size_t j = 0; j < m; ++j) {
            for (auto it = by_size.rbegin(); it != by_size.rend(); ++it) {
                size_t i = *it;
                if (!sets[i].is_proper_subset_of(sets[j])) continue;
                bool maximal = true;
                for (size_t k : covers_below[j])
                    if (sets[i].is_subset_of(sets[k])) {
                        maximal = false;
                        break;
                    }
                if (maximal) covers_below[j].push_back(i);
            }
        }
        std::vector<int> minlen(m, 1);
        size_t top = by_size.back();
        assert(sets[top] == top_);
        for (size_t j : by_size) {
            int best = 0;
            for (size_t i : covers_below[j])
                if (best == 0 || minlen[i] < best) best = minlen[i];
            minlen[j] = best + 1;
        }

        if (minlen[top] < t + 1) {
            // minimal sets upward from each member to the top, to tell which
            // covers lie on a shortest maximal chain
            const int far = static_cast<int>(m) + 2;
            std::vector<int> uplen(m, far);
            uplen[top] = 1;
            for (auto it = by_size.rbegin(); it != by_size.rend(); ++it) {
                size_t j = *it;
                for (size_t i : covers_below[j]) uplen[i] = std::min(uplen[i], uplen[j] + 1);
            }
            std::vector<int> rank(m);
            for (size_t i = 0; i < m; ++i) rank[i] = rank_of(sets[i]);
            // every chain shorter than t+1 contains a cover skipping a rank,
            // and that cover is critical (on a shortest maximal chain)
            std::vector<std::pair<size_t, size_t>> skips;
            for (size_t j = 0; j < m; ++j)
                for (size_t i : covers_below[j])
                    if (rank[j] >= rank[i] + 2) skips.emplace_back(i, j);
            std::stable_sort(skips.begin(), skips.end(),
                             [&](const std::pair<size_t, size_t>& a,
                                 const std::pair<size_t, size_t>& b) {
                                 bool ca = minlen[a.first] + uplen[a.second] == minlen[top];
                                 bool cb = minlen[b.first] + uplen[b.second] == minlen[top];
                                 if (ca != cb) return ca;
                                 return sets[a.first].bits() < sets[b.first].bits();
                             });
            for (auto [i, j] : skips)
                if (insert_between(sets[i], sets[j], sets)) return true;
            // no splitting set is available for any rank-skipping cover; drop
            // one end of a critical skip and let later rounds rebuild around it
            for (auto [i, j] : skips) {
                if (minlen[i] + uplen[j] != minlen[top]) continue;
                remove(sets[j] == top_ ? sets[i] : sets[j]);
                return true;
            }
            throw CertificateError("shelter construction cannot extend a chain of " +
                                   std::to_string(minlen[top]) + " sets to " +
                                   std::to_string(t + 1));
        }

        for (size_t j = 0; j < m; ++j) {
            if (sets[j].size() < 2) continue;
            VertexSet inter = sets[j];
            bool any = false;
            for (size_t i : covers_below[j]) {
                any = true;
                inter = inter & sets[i];
            }
            if (!any) {
                size_t before = live_.size();
                emit_children(sets[j]);
                if (live_.size() > before) return true;
                throw CertificateError("shelter construction cannot support " +
                                       sets[j].to_string());
            }
            if (inter.empty()) continue;
            if (free_below(sets[j], ordered(inter).front(), sets)) return true;
            // every component below this member is spent; the member itself
            // has to go, and its parents will re-seed replacements
            if (sets[j] != top_) {
                remove(sets[j]);
                return true;
            }
            throw CertificateError("shelter construction cannot free " + inter.to_string() +
                                   " below " + sets[j].to_string());
        }
        return false;
    }

    // Break the cover lower < upper by inserting a strongly connected set
    // strictly between the two, preferring minimal strict supersets of the
    // lower end that strictly contain as few other members as possible.
    bool insert_between(VertexSet lower, VertexSet upper, const std::vector<VertexSet>& sets) {
        std::vector<VertexSet> cands;
        std::set<uint64_t> seen;
        for (int u : ordered(upper - lower)) {
            SccDecomposition dec = scc_decompose({g_, upper.without(u)});
            VertexSet grown = dec.components[dec.comp_of[lower.lowest()]];
            if (grown == lower) continue;
            if (seen.insert(grown.bits()).second) cands.push_back(grown);
            // shrink toward a minimal strongly connected strict superset
            for (bool shrunk = true; shrunk;) {
                shrunk = false;
                for (int v : ordered(grown - lower)) {
                    SccDecomposition sub = scc_decompose({g_, grown.without(v)});
                    VertexSet c = sub.components[sub.comp_of[lower.lowest()]];
                    if (c != lower) {
                        grown = c;
                        shrunk = true;
                        break;
                    }
                }
            }
            if (seen.insert(grown.bits()).second) cands.push_back(grown);
        }
        std::vector<std::pair<int, VertexSet>> scored;
        for (const VertexSet& c : cands) {
            int swallowed = 0;
            for (const VertexSet& s : sets)
                if (s.is_proper_subset_of(c) && !s.is_subset_of(lower)) ++swallowed;
            scored.emplace_back(swallowed, c);
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const std::pair<int, VertexSet>& a, const std::pair<int, VertexSet>& b) {
                             if (a.first != b.first) return a.first < b.first;
                             return a.second.size() < b.second.size();
                         });
        for (const auto& [swallowed, c] : scored)
            if (add(c)) return true;
        return false;
    }

    // All maximal lower members of y share w. Only a component of y minus w
    // can sit below y and avoid w while staying maximal, so add one; if every
    // component lies strictly under some member (which then contains w), pick
    // the component with the fewest such shadowing members and remove them.
    bool free_below(VertexSet y, int w, const std::vector<VertexSet>& sets) {
        std::vector<VertexSet> comps = ordered_components({g_, y.without(w)});
        std::stable_sort(comps.begin(), comps.end(), [this](const VertexSet& a, const VertexSet& b) {
            return rank_of(a) > rank_of(b);
        });
        std::vector<std::pair<VertexSet, std::vector<VertexSet>>> shadowed;
        for (const VertexSet& c : comps) {
            if (tabu_.count(c.bits())) continue;
            std::vector<VertexSet> shadow;
            for (const VertexSet& d : sets)
                if (c.is_proper_subset_of(d) && d.is_proper_subset_of(y)) shadow.push_back(d);
            if (shadow.empty()) {
                if (add(c)) return true;
                continue;
            }
            shadowed.emplace_back(c, std::move(shadow));
        }
        std::stable_sort(shadowed.begin(), shadowed.end(),
                         [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
        for (auto& [c, shadow] : shadowed) {
            for (VertexSet d : shadow) remove(d);
            add(c);
            return true;
        }
        return false;
    }

    const Digraph* g_;
    CycleRankSolver solver_;
    std::vector<int> prio_;
    VertexSet top_;
    std::set<uint64_t> live_;
    std::set<uint64_t> tabu_;
    std::vector<VertexSet> order_;
    size_t emitted_ = 0;
};

/**
 * Exact fallback for graphs where the guided builder gives up: encode "some
 * collection of strongly connected sets is a shelter of thickness >= want"
 * as a satisfiability instance over the strongly connected subsets of one
 * rank-realizing component and hand it to the clause-learning solver.
 *
 * Per candidate set S there is a selector x_S, flags for "no member below"
 * and "no member above", and per nested pair A < S a cover flag y_{A,S} that
 * holds exactly when both ends are members and nothing sits between them.
 * Unary counters chain through covers so that dn_{S,k} means a chain of k
 * members ends at S and up_{S,k} means one of k members starts there; every
 * cover is required to lie on a chain of at least `want` members, maximal
 * members must complete a full chain downward, and minimal members must not
 * have two below. The second shelter property is one clause per member and
 * vertex w: some cover below S avoids w. The search space and solver effort
 * are capped, so the caller learns one of: a model (returned as a shelter),
 * proven impossibility over this component, or an exhausted budget.
 */
std::optional<StrongShelter> exact_shelter_search(const Digraph& g, int want, bool& attempted) {
    attempted = false;
    if (want < 2) return std::nullopt;

    CycleRankSolver solver(g);
    VertexSet comp;
    int comp_rank = -1;
    for (const VertexSet& c : scc_decompose({&g, g.vertices()}).components) {
        int r = c.size() == 1 ? 0 : solver.rank_of({&g, c});
        if (r > comp_rank || (r == comp_rank && c.bits() < comp.bits())) {
            comp = c;
            comp_rank = r;
        }
    }
    if (comp.size() > kExactCompCap) return std::nullopt;

    std::vector<int> verts;
    for (int v : comp) verts.push_back(v);
    int n = static_cast<int>(verts.size());
    std::vector<uint64_t> sc;
    for (uint64_t m = 1; m < (uint64_t{1} << n); ++m) {
        uint64_t bits = 0;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1) bits |= uint64_t{1} << verts[i];
        VertexSet s(bits);
        if (s.size() == 1 || scc_decompose({&g, s}).count() == 1) sc.push_back(bits);
        if (sc.size() > kExactSetCap) return std::nullopt;
    }
    std::sort(sc.begin(), sc.end());
    int m = static_cast<int>(sc.size());
    int L = want;

    auto subset = [](uint64_t a, uint64_t b) { return (a & b) == a; };
    auto proper = [&subset](uint64_t a, uint64_t b) { return subset(a, b) && a != b; };

    int next = 0;
    std::vector<int> x(m), nb(m), na(m);
    for (int i = 0; i < m; ++i) x[i] = next++;
    for (int i = 0; i < m; ++i) nb[i] = next++;
    for (int i = 0; i < m; ++i) na[i] = next++;
    auto grid = [&](int base, int i, int k) { return base + i * (L - 1) + (k - 2); };
    int dn0 = next;
    next += m * (L - 1);
    int up0 = next;
    next += m * (L - 1);
    std::map<std::pair<int, int>, int> yvar;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
        for (int s = 0; s < m; ++s)
            if (proper(sc[a], sc[s])) {
                if (pairs.size() >= kExactPairCap) return std::nullopt;
                yvar[{a, s}] = next++;
                pairs.emplace_back(a, s);
            }
    attempted = true;

    SatSolver sat(next);
    auto P = [](int v) { return SatSolver::pos(v); };
    auto N = [](int v) { return SatSolver::neg(v); };

    // nb_s and na_s hold exactly when no member sits below / above s
    for (int s = 0; s < m; ++s) {
        std::vector<int> some_below{P(nb[s])}, some_above{P(na[s])};
        for (int t = 0; t < m; ++t) {
            if (proper(sc[t], sc[s])) {
                sat.add_clause({N(nb[s]), N(x[t])});
                some_below.push_back(P(x[t]));
            }
            if (proper(sc[s], sc[t])) {
                sat.add_clause({N(na[s]), N(x[t])});
                some_above.push_back(P(x[t]));
            }
        }
        sat.add_clause(some_below);
        sat.add_clause(some_above);
    }

    // y_{a,s} holds exactly when a and s are members with nothing between
    for (auto [a, s] : pairs) {
        int y = yvar.at({a, s});
        std::vector<int> rev{P(y), N(x[a]), N(x[s])};
        sat.add_clause({N(y), P(x[a])});
        sat.add_clause({N(y), P(x[s])});
        for (int t = 0; t < m; ++t)
            if (proper(sc[a], sc[t]) && proper(sc[t], sc[s])) {
                sat.add_clause({N(y), N(x[t])});
                rev.push_back(P(x[t]));
            }
        sat.add_clause(rev);
    }

    // chain counters: monotone, propagated across covers, pinned at the ends
    for (int s = 0; s < m; ++s) {
        for (int k = 3; k <= L; ++k) {
            sat.add_clause({N(grid(dn0, s, k)), P(grid(dn0, s, k - 1))});
            sat.add_clause({N(grid(up0, s, k)), P(grid(up0, s, k - 1))});
        }
        sat.add_clause({N(x[s]), N(nb[s]), N(grid(dn0, s, 2))});
        sat.add_clause({N(x[s]), N(na[s]), N(grid(up0, s, 2))});
        sat.add_clause({N(x[s]), N(na[s]), P(grid(dn0, s, L))});
    }
    for (auto [a, s] : pairs) {
        int y = yvar.at({a, s});
        for (int k = 3; k <= L; ++k) {
            sat.add_clause({N(y), N(grid(dn0, s, k)), P(grid(dn0, a, k - 1))});
            sat.add_clause({N(y), N(grid(up0, a, k)), P(grid(up0, s, k - 1))});
        }
        // every maximal chain through this cover carries at least L members
        for (int j = 1; j <= L - 2; ++j)
            sat.add_clause({N(y), P(grid(dn0, a, j + 1)), P(grid(up0, s, L - j))});
    }

    // below every member with members below, each vertex w is avoided by
    // some maximal lower member
    for (int s = 0; s < m; ++s)
        for (int w : VertexSet(sc[s])) {
            uint64_t avoid = sc[s] & ~(uint64_t{1} << w);
            std::vector<int> cl{N(x[s]), P(nb[s])};
            for (int a = 0; a < m; ++a)
                if (subset(sc[a], avoid)) cl.push_back(P(yvar.at({a, s})));
            sat.add_clause(cl);
        }

    std::vector<int> any;
    for (int i = 0; i < m; ++i) any.push_back(P(x[i]));
    sat.add_clause(any);

    // TEMP instrumentation
    std::fprintf(stderr, "[exact] m=%d pairs=%zu vars=%d clauses=%zu\n", m, pairs.size(), next,
                 sat.clause_count());
    int res = sat.solve(kExactConflictCap);
    std::fprintf(stderr, "[exact] res=%d conflicts=%lld clauses_after=%zu\n", res,
                 static_cast<long long>(sat.conflicts()), sat.clause_count());
    if (res != 1) return std::nullopt;
    StrongShelter out;
    for (int i = 0; i < m; ++i)
        if (sat.value(x[i])) out.sets.push_back(VertexSet(sc[i]));
    return out;
}

} // namespace

StrongShelter build_shelter(const Digraph& g) {
    int want = CycleRankSolver(g).rank() + 1;
    std::string first_error;
    for (uint64_t attempt = 0; attempt < kShelterAttemptCap; ++attempt) {
        StrongShelter s;
        try {
            s = ShelterBuilder(g, attempt).run();
        } catch (const CertificateError& e) {
            if (first_error.empty()) first_error = e.what();
            continue;
        }
        int got = verify_shelter(g, s);
        if (got != want)
            throw CertificateError("constructed shelter has thickness " + std::to_string(got) +
                                   ", expected " + std::to_string(want));
        return s;
    }
    bool attempted = false;
    if (std::optional<StrongShelter> s = exact_shelter_search(g, want, attempted)) {
        int got = verify_shelter(g, *s);
        if (got == want) return *s;
    }
    throw CertificateError(first_error + " (tried " + std::to_string(kShelterAttemptCap) +
                           " vertex orderings" +
                           (attempted ? " and an exact search)" : "; too large for exact search)"));
}

LifoHaven shelter_to_haven(const Digraph& g, const StrongShelter& s) {
    int t = verify_shelter(g, s);
    int n = g.vertex_count();
    if (haven_domain_size(n, t) > kHavenEntryCap)
        throw CertificateError("haven of order " + std::to_string(t) + " on " +
                               std::to_string(n) + " vertices needs too many entries");

    const std::vector<VertexSet>& sets = s.sets;
    auto maximal_below = [&sets](VertexSet top, bool whole_collection) {
        std::vector<VertexSet> out;
        for (VertexSet b : sets) {
            if (whole_collection ? false : !b.is_proper_subset_of(top)) continue;
            bool maximal = true;
            for (VertexSet c : sets) {
                if (whole_collection) {
                    if (b.is_proper_subset_of(c)) { maximal = false; break; }
                } else if (b.is_proper_subset_of(c) && c.is_proper_subset_of(top)) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) out.push_back(b);
        }
        return out;
    };
    auto lex_least = [](const std::vector<VertexSet>& candidates) {
        VertexSet best = candidates.front();
        for (VertexSet c : candidates)
            if (lex_less(c, best)) best = c;
        return best;
    };

    VertexSet top_anchor = lex_least(maximal_below(VertexSet{}, true));

    LifoHaven h;
    h.order = t;
    // breadth-first over stacks: each frame carries the anchor set it tracks
    struct Frame {
        std::vector<int> word;
        VertexSet used;
        VertexSet anchor;
    };
    std::vector<Frame> frontier{{{}, VertexSet{}, top_anchor}};
    while (!frontier.empty()) {
        std::vector<Frame> next_frontier;
        for (const Frame& f : frontier) {
            GraphView residue = full_view(g).without(f.used);
            SccDecomposition dec = scc_decompose(residue);
            int c = dec.comp_of[f.anchor.lowest()];
            assert(c >= 0 && dec.components[c].contains_all(f.anchor));
            h.table.emplace(f.word, dec.components[c]);

            if (static_cast<int>(f.word.size()) + 1 >= t) continue;
            std::vector<VertexSet> maximal = maximal_below(f.anchor, false);
            for (int v = 0; v < n; ++v) {
                if (f.used.contains(v)) continue;
                std::vector<VertexSet> eligible;
                for (VertexSet b : maximal)
                    if (!b.contains(v)) eligible.push_back(b);
                if (eligible.empty())
                    throw CertificateError("shelter descent stuck below " +
                                           f.anchor.to_string() + " avoiding vertex " +
                                           std::to_string(v));
                Frame nf;
                nf.word = f.word;
                nf.word.push_back(v);
                nf.used = f.used.with(v);
                nf.anchor = lex_least(eligible);
                next_frontier.push_back(std::move(nf));
            }
        }
        frontier = std::move(next_frontier);
    }

    verify_haven(g, h);
    return h;
}

void verify_haven(const Digraph& g, const LifoHaven& h) {
    int n = g.vertex_count();
    if (h.order < 1) throw CertificateError("haven order must be at least 1");
    if (haven_domain_size(n, h.order) > kHavenEntryCap)
        throw CertificateError("haven of order " + std::to_string(h.order) + " on " +
                               std::to_string(n) + " vertices is too large to verify");

    for (const auto& [word, space] : h.table) {
        SearcherStack stack;
        try {
            stack = SearcherStack(word);
        } catch (const std::invalid_argument& e) {
            throw CertificateError(std::string("bad haven stack: ") + e.what());
        }
        if (stack.size() >= h.order)
            throw CertificateError("haven stack " + stack.to_string() +
                                   " is not shorter than the order");
        if (!g.vertices().contains_all(stack.letters()))
            throw CertificateError("haven stack " + stack.to_string() +
                                   " names an unknown vertex");
        if (space.empty())
            throw CertificateError("haven entry for " + stack.to_string() + " is empty");
        if (!g.vertices().contains_all(space))
            throw CertificateError("haven entry for " + stack.to_string() +
                                   " contains an unknown vertex id");
        GraphView residue = full_view(g).without(stack.letters());
        SccDecomposition dec = scc_decompose(residue);
        int c = dec.comp_of[space.lowest()];
        if (c < 0 || !(dec.components[c] == space))
            throw CertificateError("haven entry " + space.to_string() + " for stack " +
                                   stack.to_string() +
                                   " is not a strongly connected component of the remainder");
    }

    // domain completeness over repetition-free words
    std::vector<int> word;
    auto visit = [&](auto&& self, VertexSet used) -> void {
        if (h.table.find(word) == h.table.end())
            throw CertificateError("haven table is missing stack " +
                                   SearcherStack(word).to_string());
        if (static_cast<int>(word.size()) + 1 >= h.order) return;
        for (int v = 0; v < n; ++v) {
            if (used.contains(v)) continue;
            word.push_back(v);
            self(self, used.with(v));
            word.pop_back();
        }
    };
    visit(visit, VertexSet{});

    // containment along every proper prefix pair
    for (const auto& [w, space] : h.table) {
        for (size_t len = 0; len < w.size(); ++len) {
            std::vector<int> prefix(w.begin(), w.begin() + static_cast<long>(len));
            auto it = h.table.find(prefix);
            if (it == h.table.end()) continue; // unreachable after completeness
            if (!it->second.contains_all(space))
                throw CertificateError("haven entry for " + SearcherStack(w).to_string() +
                                       " is not contained in the entry for " +
                                       SearcherStack(prefix).to_string());
        }
    }
}

FugitiveStrategy haven_to_fugitive_strategy(const Digraph& g, const LifoHaven& h) {
    verify_haven(g, h);
    return FugitiveStrategy{h.order, h.table};
}

namespace {

void collect_nodes(const EliminationNode& node, std::map<uint64_t, const EliminationNode*>& out) {
    out.emplace(node.scope.bits(), &node);
    for (const EliminationNode& c : node.children) collect_nodes(c, out);
}

void emit_script(const Digraph& g, GraphView view,
                 const std::map<uint64_t, const EliminationNode*>& by_scope,
                 SearcherScript& script) {
    for (const VertexSet& comp : scc_decompose(view).components) {
        if (comp.size() == 1) {
            script.moves.push_back({true, comp.lowest()});
            script.moves.push_back({false, -1});
            continue;
        }
        const EliminationNode* node = by_scope.at(comp.bits());
        script.moves.push_back({true, node->vertex});
        emit_script(g, {&g, comp.without(node->vertex)}, by_scope, script);
        script.moves.push_back({false, -1});
    }
}

} // namespace

SearcherScript synthesize_search_script(const Digraph& g, const EliminationForest& f) {
    verify_elimination_forest(g, f);
    std::map<uint64_t, const EliminationNode*> by_scope;
    for (const EliminationNode& r : f.roots) collect_nodes(r, by_scope);
    SearcherScript script;
    emit_script(g, full_view(g), by_scope, script);
    return script;
}

} // namespace lifo
