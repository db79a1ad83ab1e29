#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

namespace lifo {

/**
 * Conflict-driven clause-learning SAT solver used by the exact certificate
 * search. Variables are dense ints in [0, nvars); a literal is 2v for the
 * positive and 2v+1 for the negated form. Implements two-literal watches,
 * first-unique-implication-point learning, exponentially decayed variable
 * activities, phase saving, and Luby-scheduled restarts.
 */
class SatSolver {
public:
    explicit SatSolver(int nvars)
        : nvars_(nvars), assign_(nvars, -1), level_(nvars, -1), reason_(nvars, -1),
          activity_(nvars, 0.0), phase_(nvars, 0), watches_(2 * nvars), bin_(2 * nvars),
          heap_pos_(nvars) {
        heap_.resize(nvars);
        for (int v = 0; v < nvars; ++v) {
            heap_[v] = v;
            heap_pos_[v] = v;
        }
    }

    static int pos(int v) { return 2 * v; }
    static int neg(int v) { return 2 * v + 1; }

    void add_clause(std::vector<int> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (size_t i = 0; i + 1 < lits.size(); ++i)
            if ((lits[i] ^ 1) == lits[i + 1]) return; // tautology
        if (lits.empty()) {
            ok_ = false;
            return;
        }
        if (lits.size() == 1) {
            units_.push_back(lits[0]);
            return;
        }
        if (lits.size() == 2) {
            bin_[lits[0]].push_back(lits[1]);
            bin_[lits[1]].push_back(lits[0]);
            return;
        }
        clauses_.push_back(std::move(lits));
        int ci = static_cast<int>(clauses_.size()) - 1;
        watches_[clauses_[ci][0]].push_back(ci);
        watches_[clauses_[ci][1]].push_back(ci);
    }

    // 1 satisfiable (model readable via value()), 0 unsatisfiable,
    // -1 conflict budget exhausted
    int solve(int64_t max_conflicts = -1) {
        if (!ok_) return 0;
        for (int u : units_)
            if (!enqueue(u, -1)) return 0;
        units_.clear();
        if (propagate() != -1) return 0;
        n_problem_ = clauses_.size();
        lbd_.assign(clauses_.size(), 0);
        size_t reduce_limit = 20000;
        stat_conflicts_ = 0;
        int64_t conflicts = 0;
        int luby_idx = 1;
        int64_t restart_limit = 64 * luby(luby_idx);
        for (;;) {
            int confl = propagate();
            if (confl != -1) {
                ++conflicts;
                ++stat_conflicts_;
                if (max_conflicts >= 0 && stat_conflicts_ > max_conflicts) return -1;
                if (decision_level() == 0) return 0;
                std::vector<int> learned;
                int back_level = 0;
                int lbd = 0;
                analyze(confl, learned, back_level, lbd);
                backtrack(back_level);
                if (learned.size() == 1) {
                    bool fine = enqueue(learned[0], -1);
                    assert(fine);
                    (void)fine;
                } else if (learned.size() == 2) {
                    bin_[learned[0]].push_back(learned[1]);
                    bin_[learned[1]].push_back(learned[0]);
                    bool fine = enqueue(learned[0], (learned[1] << 1) | 1);
                    assert(fine);
                    (void)fine;
                } else {
                    clauses_.push_back(learned);
                    lbd_.push_back(lbd);
                    int ci = static_cast<int>(clauses_.size()) - 1;
                    watches_[clauses_[ci][0]].push_back(ci);
                    watches_[clauses_[ci][1]].push_back(ci);
                    bool fine = enqueue(clauses_[ci][0], ci << 1);
                    assert(fine);
                    (void)fine;
                }
                decay_activities();
                if (conflicts >= restart_limit) {
                    conflicts = 0;
                    restart_limit = 64 * luby(++luby_idx);
                    backtrack(0);
                    if (clauses_.size() - n_problem_ >= reduce_limit) {
                        reduce_db();
                        reduce_limit += reduce_limit / 5;
                    }
                }
            } else {
                int v = pick_branch();
                if (v == -1) return 1;
                trail_lim_.push_back(static_cast<int>(trail_.size()));
                bool fine = enqueue(phase_[v] ? pos(v) : neg(v), -1);
                assert(fine);
                (void)fine;
            }
        }
    }

    bool value(int v) const { return assign_[v] == 1; }

    size_t clause_count() const { return clauses_.size(); }
    int64_t conflicts() const { return stat_conflicts_; }

    // initial branching polarity for a variable; overwritten by phase saving
    void suggest_phase(int v, bool value) { phase_[v] = value ? 1 : 0; }

private:
    // Luby restart sequence 1,1,2,1,1,2,4,... by zero-based index
    static int64_t luby(int x) {
        int64_t size = 1;
        int seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) >> 1;
            --seq;
            x = x % size;
        }
        return int64_t{1} << seq;
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    int lit_value(int lit) const {
        int a = assign_[lit >> 1];
        if (a == -1) return -1;
        return (lit & 1) ? 1 - a : a;
    }

    bool enqueue(int lit, int reason) {
        int v = lit >> 1;
        int want = (lit & 1) ? 0 : 1;
        if (assign_[v] != -1) return assign_[v] == want;
        assign_[v] = want;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(lit);
        return true;
    }

    // unit propagation; returns a tagged antecedent for the falsified clause
    // (see reason_ tagging below) or -1 when a fixed point is reached
    int propagate() {
        while (qhead_ < trail_.size()) {
            int lit = trail_[qhead_++];
            int falsified = lit ^ 1;
            for (int q : bin_[falsified]) {
                int val = lit_value(q);
                if (val == 1) continue;
                if (val == 0) {
                    bin_confl_[0] = falsified;
                    bin_confl_[1] = q;
                    return -2;
                }
                bool fine = enqueue(q, (falsified << 1) | 1);
                assert(fine);
                (void)fine;
            }
            std::vector<int>& watch = watches_[falsified];
            size_t keep = 0;
            for (size_t wi = 0; wi < watch.size(); ++wi) {
                int ci = watch[wi];
                std::vector<int>& c = clauses_[ci];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    watch[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k)
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                if (moved) continue;
                watch[keep++] = ci;
                if (!enqueue(c[0], ci << 1)) {
                    for (size_t wj = wi + 1; wj < watch.size(); ++wj) watch[keep++] = watch[wj];
                    watch.resize(keep);
                    return ci << 1;
                }
            }
            watch.resize(keep);
        }
        return -1;
    }

    // first-unique-implication-point conflict analysis; also computes the
    // learned clause's literal-block-distance (number of distinct decision
    // levels), used to rank clauses for database reduction
    void analyze(int confl, std::vector<int>& learned, int& back_level, int& lbd) {
        learned.clear();
        learned.push_back(-1); // slot for the asserting literal
        if (seen_.size() != static_cast<size_t>(nvars_)) seen_.assign(nvars_, 0);
        int counter = 0;
        int idx = static_cast<int>(trail_.size()) - 1;
        int lit = -1;
        int cur = confl;
        for (;;) {
            int two[2];
            const int* beg;
            const int* end;
            if (cur == -2) {
                two[0] = bin_confl_[0];
                two[1] = bin_confl_[1];
                beg = two;
                end = two + 2;
            } else if (cur & 1) {
                two[0] = cur >> 1;
                beg = two;
                end = two + 1;
            } else {
                beg = clauses_[cur >> 1].data();
                end = beg + clauses_[cur >> 1].size();
            }
            for (const int* it = beg; it != end; ++it) {
                int q = *it;
                if (q == lit) continue;
                int v = q >> 1;
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump_activity(v);
                    if (level_[v] == decision_level())
                        ++counter;
                    else
                        learned.push_back(q);
                }
            }
            while (!seen_[trail_[idx] >> 1]) --idx;
            lit = trail_[idx];
            seen_[lit >> 1] = 0;
            --idx;
            if (--counter == 0) break;
            cur = reason_[lit >> 1];
            assert(cur != -1);
        }
        learned[0] = lit ^ 1;
        // drop literals whose reason clause is covered by the rest of the
        // learned clause (self-subsumption)
        std::vector<char> keep(learned.size(), 1);
        for (size_t i = 1; i < learned.size(); ++i) {
            int v = learned[i] >> 1;
            int r = reason_[v];
            bool redundant = r != -1;
            if (redundant && (r & 1)) {
                int pv = (r >> 1) >> 1;
                redundant = seen_[pv] || level_[pv] == 0;
            } else if (redundant) {
                for (int p : clauses_[r >> 1]) {
                    if (p == (learned[i] ^ 1)) continue;
                    int pv = p >> 1;
                    if (!seen_[pv] && level_[pv] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (redundant) keep[i] = 0;
        }
        for (size_t i = 1; i < learned.size(); ++i) seen_[learned[i] >> 1] = 0;
        size_t kept = 1;
        for (size_t i = 1; i < learned.size(); ++i)
            if (keep[i]) learned[kept++] = learned[i];
        learned.resize(kept);
        back_level = 0;
        if (learned.size() > 1) {
            size_t best = 1;
            for (size_t i = 2; i < learned.size(); ++i)
                if (level_[learned[i] >> 1] > level_[learned[best] >> 1]) best = i;
            std::swap(learned[1], learned[best]);
            back_level = level_[learned[1] >> 1];
        }
        ++level_stamp_id_;
        if (level_stamp_.size() != static_cast<size_t>(nvars_) + 1)
            level_stamp_.assign(nvars_ + 1, 0);
        lbd = 1; // the asserting literal sits at the current level
        level_stamp_[decision_level()] = level_stamp_id_;
        for (size_t i = 1; i < learned.size(); ++i) {
            int lv = level_[learned[i] >> 1];
            if (level_stamp_[lv] != level_stamp_id_) {
                level_stamp_[lv] = level_stamp_id_;
                ++lbd;
            }
        }
    }

    void backtrack(int target) {
        if (decision_level() <= target) return;
        size_t lim = trail_lim_[target];
        for (size_t i = trail_.size(); i-- > lim;) {
            int v = trail_[i] >> 1;
            phase_[v] = assign_[v];
            assign_[v] = -1;
            reason_[v] = -1;
            level_[v] = -1;
            heap_reinsert(v);
        }
        trail_.resize(lim);
        trail_lim_.resize(target);
        qhead_ = lim;
    }

    // discard the worse half of the learned clauses by literal-block
    // distance; only called at decision level zero so no clause can be the
    // reason of an assignment above the root level
    void reduce_db() {
        assert(decision_level() == 0);
        std::vector<char> locked(clauses_.size(), 0);
        for (int lit : trail_) {
            int r = reason_[lit >> 1];
            if (r >= 0 && !(r & 1)) locked[r >> 1] = 1;
        }
        std::vector<int> victims;
        for (size_t ci = n_problem_; ci < clauses_.size(); ++ci)
            if (!locked[ci] && lbd_[ci] > 3) victims.push_back(static_cast<int>(ci));
        std::sort(victims.begin(), victims.end(),
                  [this](int a, int b) { return lbd_[a] > lbd_[b]; });
        victims.resize(victims.size() / 2);
        std::vector<char> drop(clauses_.size(), 0);
        for (int ci : victims) drop[ci] = 1;
        std::vector<int> remap(clauses_.size(), -1);
        size_t next = 0;
        for (size_t ci = 0; ci < clauses_.size(); ++ci)
            if (!drop[ci]) {
                remap[ci] = static_cast<int>(next);
                if (next != ci) {
                    clauses_[next] = std::move(clauses_[ci]);
                    lbd_[next] = lbd_[ci];
                }
                ++next;
            }
        clauses_.resize(next);
        lbd_.resize(next);
        for (std::vector<int>& w : watches_) w.clear();
        for (size_t ci = 0; ci < clauses_.size(); ++ci) {
            watches_[clauses_[ci][0]].push_back(static_cast<int>(ci));
            watches_[clauses_[ci][1]].push_back(static_cast<int>(ci));
        }
        for (int lit : trail_) {
            int& r = reason_[lit >> 1];
            if (r >= 0 && !(r & 1)) r = remap[r >> 1] << 1;
        }
    }

    // max-heap over variable activities, lazily cleaned of assigned vars
    bool heap_less(int a, int b) const { return activity_[a] < activity_[b]; }

    void sift_up(int i) {
        int v = heap_[i];
        while (i > 0) {
            int parent = (i - 1) >> 1;
            if (!heap_less(heap_[parent], v)) break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void sift_down(int i) {
        int v = heap_[i];
        size_t n = heap_.size();
        for (;;) {
            size_t kid = 2 * static_cast<size_t>(i) + 1;
            if (kid >= n) break;
            if (kid + 1 < n && heap_less(heap_[kid], heap_[kid + 1])) ++kid;
            if (!heap_less(v, heap_[kid])) break;
            heap_[i] = heap_[kid];
            heap_pos_[heap_[i]] = i;
            i = static_cast<int>(kid);
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void heap_reinsert(int v) {
        if (heap_pos_[v] >= 0) return;
        heap_.push_back(v);
        heap_pos_[v] = static_cast<int>(heap_.size()) - 1;
        sift_up(heap_pos_[v]);
    }

    int pick_branch() {
        while (!heap_.empty()) {
            int v = heap_[0];
            int last = heap_.back();
            heap_.pop_back();
            heap_pos_[v] = -1;
            if (!heap_.empty() && v != last) {
                heap_[0] = last;
                heap_pos_[last] = 0;
                sift_down(0);
            }
            if (assign_[v] == -1) return v;
        }
        return -1;
    }

    void bump_activity(int v) {
        activity_[v] += bump_;
        if (activity_[v] > 1e100) {
            for (double& a : activity_) a *= 1e-100;
            bump_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0) sift_up(heap_pos_[v]);
    }

    void decay_activities() { bump_ /= 0.95; }

    int nvars_;
    bool ok_ = true;
    std::vector<int> assign_, level_, reason_;
    std::vector<double> activity_;
    std::vector<char> phase_;
    double bump_ = 1.0;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> units_;
    std::vector<std::vector<int>> bin_; // bin_[l]: partners of binary clauses holding l
    int bin_confl_[2] = {-1, -1};       // literals of a falsified binary clause
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    std::vector<char> seen_;
    std::vector<int64_t> level_stamp_;
    std::vector<int> lbd_;
    int64_t level_stamp_id_ = 0;
    int64_t stat_conflicts_ = 0;
    size_t n_problem_ = 0;
    size_t qhead_ = 0;
};

} // namespace lifo
