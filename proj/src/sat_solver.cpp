#include "moco/sat_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace moco {

namespace {

constexpr int kInvalidLit = 0;

// splitmix64; used only to jitter initial activities when a seed is set.
uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SatSolver::SatSolver(SolverConfig cfg) : cfg_(cfg) {
    watches_.resize(2);
    assigns_.resize(1, kUndef);
    level_.resize(1, 0);
    reason_.resize(1, kNoReason);
    activity_.resize(1, 0.0);
    polarity_.resize(1, 0);
    seen_.resize(1, 0);
    heap_pos_.resize(1, -1);
}

//=============================================================================
// Variables and clauses
//=============================================================================

int SatSolver::new_var() {
    int v = ++nvars_;
    watches_.resize(2 * nvars_ + 2);
    assigns_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    double act = 0.0;
    if (cfg_.seed != 0)
        act = static_cast<double>(mix64(cfg_.seed ^ static_cast<uint64_t>(v)) >> 40) * 1e-13;
    activity_.push_back(act);
    polarity_.push_back(0);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    heap_insert(v);
    return v;
}

void SatSolver::ensure_vars(int n) {
    while (nvars_ < n) new_var();
}

void SatSolver::attach(int cref) {
    const auto& c = db_[cref].lits;
    assert(c.size() >= 2);
    watches_[(~c[0]).code].push_back({cref, c[1]});
    watches_[(~c[1]).code].push_back({cref, c[0]});
}

void SatSolver::add_clause(Clause c) {
    assert(decision_level() == 0);
    if (!ok_) return;
    for (Lit l : c) ensure_vars(var_of(l));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    // trivially satisfied
    for (size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i].code == (c[i + 1].code ^ 1)) return;
    Clause kept;
    for (Lit l : c) {
        int8_t v = value(l);
        if (v == kTrue) return;
        if (v != kFalse) kept.push_back(l);
    }
    if (kept.empty()) {
        ok_ = false;
        return;
    }
    if (kept.size() == 1) {
        enqueue(kept[0], kNoReason);
        ok_ = (propagate() == kNoReason);
        return;
    }
    db_.push_back({std::move(kept), 0.0, false, false});
    attach(static_cast<int>(db_.size()) - 1);
}

//=============================================================================
// Assignment trail
//=============================================================================

void SatSolver::enqueue(Lit p, int from) {
    int v = var_of(p);
    assert(assigns_[v] == kUndef);
    assigns_[v] = is_neg(p) ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(p);
}

void SatSolver::cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
        int v = var_of(trail_[i]);
        polarity_[v] = (assigns_[v] == kTrue);
        assigns_[v] = kUndef;
        reason_[v] = kNoReason;
        heap_insert(v);
    }
    qhead_ = static_cast<size_t>(trail_lim_[lvl]);
    trail_.resize(static_cast<size_t>(trail_lim_[lvl]));
    trail_lim_.resize(static_cast<size_t>(lvl));
}

int SatSolver::propagate() {
    int confl = kNoReason;
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        stats_.propagations++;
        auto& ws = watches_[p.code];
        size_t i = 0, j = 0;
        while (i < ws.size()) {
            Watcher w = ws[i];
            if (db_[w.cref].deleted) {  // dropped lazily
                ++i;
                continue;
            }
            if (value(w.blocker) == kTrue) {
                ws[j++] = ws[i++];
                continue;
            }
            auto& lits = db_[w.cref].lits;
            Lit false_lit = ~p;
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            assert(lits[1] == false_lit);
            ++i;
            Lit first = lits[0];
            if (first != w.blocker && value(first) == kTrue) {
                ws[j++] = {w.cref, first};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < lits.size(); ++k) {
                if (value(lits[k]) != kFalse) {
                    lits[1] = lits[k];
                    lits[k] = false_lit;
                    watches_[(~lits[1]).code].push_back({w.cref, first});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // unit or conflicting
            ws[j++] = {w.cref, first};
            if (value(first) == kFalse) {
                confl = w.cref;
                qhead_ = trail_.size();
                while (i < ws.size()) ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
        if (confl != kNoReason) break;
    }
    return confl;
}

//=============================================================================
// Conflict analysis
//=============================================================================

bool SatSolver::lit_redundant(Lit q) {
    int cr = reason_[var_of(q)];
    if (cr == kNoReason) return false;
    const auto& c = db_[cr].lits;
    for (size_t k = 1; k < c.size(); ++k) {
        int v = var_of(c[k]);
        if (!seen_[v] && level_[v] > 0) return false;
    }
    return true;
}

void SatSolver::analyze(int confl, Clause& out_learnt, int& out_btlevel) {
    int pathc = 0;
    Lit p;
    p.code = kInvalidLit;
    out_learnt.clear();
    out_learnt.push_back(p);  // slot for the asserting literal
    int index = static_cast<int>(trail_.size()) - 1;
    std::vector<int> to_clear;

    do {
        assert(confl != kNoReason);
        ClauseRec& cr = db_[confl];
        if (cr.learnt) cla_bump(confl);
        for (size_t jj = (p.code == kInvalidLit ? 0 : 1); jj < cr.lits.size(); ++jj) {
            Lit q = cr.lits[jj];
            int v = var_of(q);
            if (!seen_[v] && level_[v] > 0) {
                var_bump(v);
                seen_[v] = 1;
                to_clear.push_back(v);
                if (level_[v] >= decision_level())
                    pathc++;
                else
                    out_learnt.push_back(q);
            }
        }
        while (!seen_[var_of(trail_[static_cast<size_t>(index--)])]) {}
        p = trail_[static_cast<size_t>(index + 1)];
        confl = reason_[var_of(p)];
        seen_[var_of(p)] = 0;
        pathc--;
    } while (pathc > 0);
    out_learnt[0] = ~p;

    size_t j = 1;
    for (size_t i = 1; i < out_learnt.size(); ++i)
        if (!lit_redundant(out_learnt[i])) out_learnt[j++] = out_learnt[i];
    out_learnt.resize(j);

    if (out_learnt.size() == 1) {
        out_btlevel = 0;
    } else {
        size_t max_i = 1;
        for (size_t i = 2; i < out_learnt.size(); ++i)
            if (level_[var_of(out_learnt[i])] > level_[var_of(out_learnt[max_i])]) max_i = i;
        std::swap(out_learnt[1], out_learnt[max_i]);
        out_btlevel = level_[var_of(out_learnt[1])];
    }
    for (int v : to_clear) seen_[v] = 0;
}

// Failed assumption -> subset of the assumptions implying the failure,
// including the failed literal itself. Sorted for canonical output.
std::vector<Lit> SatSolver::analyze_final(Lit failed) {
    std::vector<Lit> core{failed};
    if (decision_level() > 0) {
        seen_[var_of(failed)] = 1;
        for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
            int x = var_of(trail_[static_cast<size_t>(i)]);
            if (!seen_[x]) continue;
            if (reason_[x] == kNoReason) {
                assert(level_[x] > 0);
                core.push_back(trail_[static_cast<size_t>(i)]);
            } else {
                const auto& c = db_[reason_[x]].lits;
                for (size_t k = 1; k < c.size(); ++k)
                    if (level_[var_of(c[k])] > 0) seen_[var_of(c[k])] = 1;
            }
            seen_[x] = 0;
        }
        seen_[var_of(failed)] = 0;
    }
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    return core;
}

//=============================================================================
// Activities
//=============================================================================

void SatSolver::var_bump(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (int x = 1; x <= nvars_; ++x) activity_[x] *= 1e-100;
        var_inc_ *= 1e-100;
    }
    heap_update(v);
}

void SatSolver::var_decay_all() { var_inc_ /= cfg_.var_decay; }

void SatSolver::cla_bump(int cref) {
    db_[cref].activity += cla_inc_;
    if (db_[cref].activity > 1e20) {
        for (auto& rec : db_)
            if (rec.learnt && !rec.deleted) rec.activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

void SatSolver::cla_decay_all() { cla_inc_ /= cfg_.clause_decay; }

//=============================================================================
// Branching heap
//=============================================================================

bool SatSolver::heap_less(int a, int b) const {
    if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
    return a < b;
}

void SatSolver::heap_sift_up(size_t i) {
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (!heap_less(heap_[i], heap_[parent])) break;
        std::swap(heap_[i], heap_[parent]);
        heap_pos_[heap_[i]] = static_cast<int>(i);
        heap_pos_[heap_[parent]] = static_cast<int>(parent);
        i = parent;
    }
}

void SatSolver::heap_sift_down(size_t i) {
    for (;;) {
        size_t l = 2 * i + 1, r = 2 * i + 2, best = i;
        if (l < heap_.size() && heap_less(heap_[l], heap_[best])) best = l;
        if (r < heap_.size() && heap_less(heap_[r], heap_[best])) best = r;
        if (best == i) break;
        std::swap(heap_[i], heap_[best]);
        heap_pos_[heap_[i]] = static_cast<int>(i);
        heap_pos_[heap_[best]] = static_cast<int>(best);
        i = best;
    }
}

void SatSolver::heap_insert(int v) {
    if (heap_pos_[v] != -1) return;
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
}

void SatSolver::heap_update(int v) {
    if (heap_pos_[v] != -1) heap_sift_up(static_cast<size_t>(heap_pos_[v]));
}

int SatSolver::heap_pop() {
    int r = heap_[0];
    heap_pos_[r] = -1;
    if (heap_.size() > 1) {
        heap_[0] = heap_.back();
        heap_pos_[heap_[0]] = 0;
        heap_.pop_back();
        heap_sift_down(0);
    } else {
        heap_.pop_back();
    }
    return r;
}

Lit SatSolver::pick_branch() {
    while (!heap_.empty()) {
        int v = heap_pop();
        if (assigns_[v] == kUndef) return mk_lit(v, polarity_[v] == 0);
    }
    Lit none;
    none.code = kInvalidLit;
    return none;
}

//=============================================================================
// Learnt-clause reduction
//=============================================================================

void SatSolver::reduce_db() {
    std::vector<int> learnts;
    for (size_t i = 0; i < db_.size(); ++i)
        if (db_[i].learnt && !db_[i].deleted) learnts.push_back(static_cast<int>(i));
    std::sort(learnts.begin(), learnts.end(), [this](int a, int b) {
        if (db_[a].activity != db_[b].activity) return db_[a].activity < db_[b].activity;
        return a < b;
    });
    size_t target = learnts.size() / 2;
    for (size_t i = 0; i < target; ++i) {
        int cref = learnts[i];
        if (db_[cref].lits.size() > 2 && !locked(cref)) {
            db_[cref].deleted = true;
            db_[cref].lits.clear();
            db_[cref].lits.shrink_to_fit();
            num_learnts_--;
            stats_.removed++;
        }
    }
    max_learnts_ *= 1.1;
    reduce_count_++;
}

//=============================================================================
// Search
//=============================================================================

SatSolver::SearchStatus SatSolver::search(int64_t conflict_budget,
                                          const std::vector<Lit>& assumptions,
                                          std::vector<Lit>& out_core) {
    int64_t conflict_c = 0;
    for (;;) {
        int confl = propagate();
        if (confl != kNoReason) {
            stats_.conflicts++;
            conflict_c++;
            if ((stats_.conflicts & 1023) == 0 && interrupt_ && interrupt_())
                throw SolveInterrupted();
            if (decision_level() == 0) {
                ok_ = false;
                out_core.clear();
                return SearchStatus::Unsat;
            }
            Clause learnt;
            int bt = 0;
            analyze(confl, learnt, bt);
            cancel_until(bt);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                db_.push_back({std::move(learnt), 0.0, true, false});
                int cref = static_cast<int>(db_.size()) - 1;
                attach(cref);
                num_learnts_++;
                stats_.learned++;
                cla_bump(cref);
                enqueue(db_[cref].lits[0], cref);
            }
            var_decay_all();
            cla_decay_all();
        } else {
            if (conflict_c >= conflict_budget) {
                cancel_until(0);
                stats_.restarts++;
                return SearchStatus::Undef;
            }
            if (num_learnts_ >= static_cast<size_t>(max_learnts_)) reduce_db();

            Lit next;
            next.code = kInvalidLit;
            while (decision_level() < static_cast<int>(assumptions.size())) {
                Lit pa = assumptions[static_cast<size_t>(decision_level())];
                if (value(pa) == kTrue) {
                    new_decision_level();  // already holds; keep level bookkeeping aligned
                } else if (value(pa) == kFalse) {
                    out_core = analyze_final(pa);
                    return SearchStatus::Unsat;
                } else {
                    next = pa;
                    break;
                }
            }
            if (next.code == kInvalidLit) {
                next = pick_branch();
                if (next.code == kInvalidLit) return SearchStatus::Sat;
                stats_.decisions++;
            }
            new_decision_level();
            enqueue(next, kNoReason);
        }
    }
}

SolveResult SatSolver::solve_internal(const std::vector<Lit>& assumptions) {
    stats_.solves++;
    SolveResult res;
    if (!ok_) return res;  // unsat, empty core
    for (Lit a : assumptions) ensure_vars(var_of(a));
    assert(decision_level() == 0);
    if (max_learnts_ < static_cast<double>(db_.size() - num_learnts_) / 3.0)
        max_learnts_ = static_cast<double>(db_.size() - num_learnts_) / 3.0;

    double budget = cfg_.restart_first;
    SearchStatus st = SearchStatus::Undef;
    std::vector<Lit> core;
    try {
        while (st == SearchStatus::Undef) {
            st = search(static_cast<int64_t>(budget), assumptions, core);
            budget *= cfg_.restart_inc;
        }
    } catch (...) {
        cancel_until(0);
        throw;
    }
    if (st == SearchStatus::Sat) {
        res.sat = true;
        res.model.assign(static_cast<size_t>(nvars_) + 1, false);
        for (int v = 1; v <= nvars_; ++v) res.model[static_cast<size_t>(v)] = (assigns_[v] == kTrue);
#ifndef NDEBUG
        for (const auto& rec : db_) {
            if (rec.deleted) continue;
            bool sat = false;
            for (Lit l : rec.lits)
                if (res.model_value(l)) { sat = true; break; }
            assert(sat && "model violates a clause");
        }
        for (Lit a : assumptions) assert(res.model_value(a));
#endif
    } else {
        res.core = std::move(core);
    }
    cancel_until(0);
    return res;
}

std::vector<Lit> SatSolver::minimize_core(std::vector<Lit> core) {
    const std::vector<Lit> snapshot = core;
    for (Lit drop : snapshot) {
        auto it = std::find(core.begin(), core.end(), drop);
        if (it == core.end()) continue;
        std::vector<Lit> cand;
        cand.reserve(core.size() - 1);
        for (Lit l : core)
            if (l != drop) cand.push_back(l);
        SolveResult r = solve_internal(cand);
        if (!r.sat) core = std::move(r.core);
    }
    return core;
}

SolveResult SatSolver::solve(const std::vector<Lit>& assumptions) {
    SolveResult res = solve_internal(assumptions);
    if (!res.sat && cfg_.minimize_cores && res.core.size() > 1)
        res.core = minimize_core(std::move(res.core));
    return res;
}

std::optional<std::vector<int8_t>> SatSolver::propagate_probe(
    const std::vector<Lit>& assumptions) {
    if (!ok_) return std::nullopt;
    for (Lit a : assumptions) ensure_vars(var_of(a));
    assert(decision_level() == 0);
    new_decision_level();
    bool conflict = false;
    for (Lit p : assumptions) {
        int8_t v = value(p);
        if (v == kFalse) {
            conflict = true;
            break;
        }
        if (v == kUndef) enqueue(p, kNoReason);
    }
    if (!conflict) conflict = (propagate() != kNoReason);
    std::optional<std::vector<int8_t>> out;
    if (!conflict) {
        std::vector<int8_t> snap(static_cast<size_t>(nvars_) + 1, 0);
        for (int v = 1; v <= nvars_; ++v) snap[static_cast<size_t>(v)] = assigns_[v];
        out = std::move(snap);
    }
    cancel_until(0);
    return out;
}

//=============================================================================
// DIMACS
//=============================================================================

void SatSolver::load_dimacs(std::istream& in) {
    std::string tok;
    Clause cur;
    bool saw_header = false;
    while (in >> tok) {
        if (tok[0] == 'c') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            long long n = 0, m = 0;
            if (!(in >> fmt >> n >> m) || fmt != "cnf" || n < 0)
                throw std::runtime_error("dimacs: malformed problem line");
            ensure_vars(static_cast<int>(n));
            saw_header = true;
            continue;
        }
        long long d = 0;
        size_t pos = 0;
        try {
            d = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("dimacs: bad token '" + tok + "'");
        }
        if (pos != tok.size()) throw std::runtime_error("dimacs: bad token '" + tok + "'");
        if (d == 0) {
            add_clause(cur);
            cur.clear();
        } else {
            cur.push_back(from_dimacs(static_cast<int>(d)));
        }
    }
    if (!cur.empty()) throw std::runtime_error("dimacs: unterminated clause");
    (void)saw_header;
}

}  // namespace moco
