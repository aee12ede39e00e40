#include "moco/encoder.hpp"

#include <algorithm>
#include <cassert>

namespace moco {

namespace {

//=============================================================================
// Sequential weighted counter for sum(w_i * l_i) <= bound
//=============================================================================

// Register s[i][j] reads "sum of the first i+1 terms >= j". Only the <= b
// direction is enforced: models project exactly onto satisfying assignments,
// spurious-true registers can only overconstrain the auxiliary extension.
void encode_le(const std::vector<PbTerm>& terms, int64_t bound, CnfFormula& out,
               int& next_var) {
    int64_t total = 0;
    for (const PbTerm& t : terms) total += t.weight;
    if (bound < 0) {
        out.add_clause({});
        return;
    }
    if (total <= bound) return;
    // every single term overshoots: all literals forced off
    bool all_over = true;
    for (const PbTerm& t : terms)
        if (t.weight <= bound) { all_over = false; break; }
    if (all_over) {
        for (const PbTerm& t : terms) out.add_clause({~t.lit});
        return;
    }

    const size_t n = terms.size();
    const int64_t k = bound;
    // registers for rows 0..n-2; row n-1 only feeds the overflow clause
    std::vector<std::vector<Lit>> s(n > 0 ? n - 1 : 0);
    for (size_t i = 0; i + 1 < n; ++i) {
        s[i].resize(static_cast<size_t>(k));
        for (int64_t j = 1; j <= k; ++j) {
            out.ensure_var(++next_var);
            s[i][static_cast<size_t>(j - 1)] = mk_lit(next_var, false);
        }
    }
    auto reg = [&](size_t i, int64_t j) { return s[i][static_cast<size_t>(j - 1)]; };

    for (size_t i = 0; i < n; ++i) {
        const int64_t w = terms[i].weight;
        const Lit x = terms[i].lit;
        if (i == 0) {
            if (w > k) {
                out.add_clause({~x});
            } else if (n > 1) {
                for (int64_t j = 1; j <= std::min(w, k); ++j)
                    out.add_clause({~x, reg(0, j)});
            }
            continue;
        }
        if (i + 1 < n) {
            // carry forward
            for (int64_t j = 1; j <= k; ++j)
                out.add_clause({~reg(i - 1, j), reg(i, j)});
            // this term alone
            for (int64_t j = 1; j <= std::min(w, k); ++j)
                out.add_clause({~x, reg(i, j)});
            // this term on top of the prefix
            for (int64_t j = 1; j + w <= k; ++j)
                out.add_clause({~x, ~reg(i - 1, j), reg(i, j + w)});
        }
        // overflow
        if (w > k) {
            out.add_clause({~x});
        } else {
            int64_t j = k + 1 - w;
            if (j >= 1 && j <= k) out.add_clause({~x, ~reg(i - 1, j)});
        }
    }
}

void encode_rel(const std::vector<PbTerm>& terms, PbRel rel, int64_t bound,
                CnfFormula& out, int& next_var) {
    int64_t total = 0;
    for (const PbTerm& t : terms) total += t.weight;
    switch (rel) {
        case PbRel::LessEq:
            encode_le(terms, bound, out, next_var);
            return;
        case PbRel::GreaterEq: {
            if (bound <= 0) return;  // trivially true
            if (bound > total) {
                out.add_clause({});
                return;
            }
            // every term alone reaches the bound: plain clause
            bool clause_shaped = true;
            for (const PbTerm& t : terms)
                if (t.weight < bound) { clause_shaped = false; break; }
            if (clause_shaped) {
                Clause c;
                for (const PbTerm& t : terms) c.push_back(t.lit);
                out.add_clause(std::move(c));
                return;
            }
            // sum(w l) >= b  <=>  sum(w ~l) <= total - b
            std::vector<PbTerm> comp = terms;
            for (PbTerm& t : comp) t.lit = ~t.lit;
            encode_le(comp, total - bound, out, next_var);
            return;
        }
        case PbRel::Equal:
            encode_rel(terms, PbRel::LessEq, bound, out, next_var);
            encode_rel(terms, PbRel::GreaterEq, bound, out, next_var);
            return;
    }
}

//=============================================================================
// Unary counter: balanced merge tree over weighted terms
//=============================================================================

// A node carries the sorted attainable partial sums of its subtree and one
// literal per sum with the fixed reading "subtree sum >= value". Both
// implication directions plus the adjacent-order chain are emitted, so every
// model assigns every node literal exactly.
struct CounterNode {
    std::vector<int64_t> values;
    std::vector<Lit> lits;

    std::optional<Lit> lit_at(int64_t v) const {
        auto it = std::lower_bound(values.begin(), values.end(), v);
        if (it == values.end() || *it != v) return std::nullopt;
        return lits[static_cast<size_t>(it - values.begin())];
    }
    // literal of the smallest value strictly above v, if any
    std::optional<Lit> lit_above(int64_t v) const {
        auto it = std::upper_bound(values.begin(), values.end(), v);
        if (it == values.end()) return std::nullopt;
        return lits[static_cast<size_t>(it - values.begin())];
    }
};

CounterNode merge_nodes(const CounterNode& a, const CounterNode& b, CnfFormula& out,
                        int& next_var) {
    if (a.values.empty()) return b;
    if (b.values.empty()) return a;

    CounterNode n;
    {
        std::vector<int64_t> sums;
        sums.reserve((a.values.size() + 1) * (b.values.size() + 1));
        for (size_t i = 0; i <= a.values.size(); ++i) {
            int64_t av = (i == 0) ? 0 : a.values[i - 1];
            for (size_t j = 0; j <= b.values.size(); ++j) {
                int64_t bv = (j == 0) ? 0 : b.values[j - 1];
                if (av + bv > 0) sums.push_back(av + bv);
            }
        }
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
        n.values = std::move(sums);
    }
    n.lits.reserve(n.values.size());
    for (size_t i = 0; i < n.values.size(); ++i) {
        out.ensure_var(++next_var);
        n.lits.push_back(mk_lit(next_var, false));
    }

    // forward: child sums reached => combined threshold reached
    for (size_t i = 0; i <= a.values.size(); ++i) {
        int64_t av = (i == 0) ? 0 : a.values[i - 1];
        for (size_t j = 0; j <= b.values.size(); ++j) {
            int64_t bv = (j == 0) ? 0 : b.values[j - 1];
            if (av + bv == 0) continue;
            Clause c;
            if (i > 0) c.push_back(~a.lits[i - 1]);
            if (j > 0) c.push_back(~b.lits[j - 1]);
            c.push_back(*n.lit_at(av + bv));
            out.add_clause(std::move(c));
        }
    }
    // converse: child sums capped => next combined threshold unreached
    for (size_t i = 0; i <= a.values.size(); ++i) {
        int64_t av = (i == 0) ? 0 : a.values[i - 1];
        auto a_succ = a.lit_above(av);
        for (size_t j = 0; j <= b.values.size(); ++j) {
            int64_t bv = (j == 0) ? 0 : b.values[j - 1];
            auto b_succ = b.lit_above(bv);
            auto over = n.lit_above(av + bv);
            if (!over) continue;
            Clause c;
            if (a_succ) c.push_back(*a_succ);
            if (b_succ) c.push_back(*b_succ);
            c.push_back(~*over);
            out.add_clause(std::move(c));
        }
    }
    // order chain
    for (size_t i = 0; i + 1 < n.lits.size(); ++i)
        out.add_clause({~n.lits[i + 1], n.lits[i]});
    return n;
}

CounterNode build_counter(const std::vector<PbTerm>& terms, size_t lo, size_t hi,
                          CnfFormula& out, int& next_var) {
    if (lo == hi) return {};
    if (hi - lo == 1) {
        CounterNode leaf;
        leaf.values = {terms[lo].weight};
        leaf.lits = {terms[lo].lit};
        return leaf;
    }
    size_t mid = lo + (hi - lo) / 2;
    CounterNode a = build_counter(terms, lo, mid, out, next_var);
    CounterNode b = build_counter(terms, mid, hi, out, next_var);
    return merge_nodes(a, b, out, next_var);
}

}  // namespace

CnfFormula encode_pb_constraint(const PbConstraint& c, int& next_var) {
    CnfFormula out;
    out.ensure_var(next_var);
    encode_rel(c.terms, c.rel, c.bound, out, next_var);
    return out;
}

CnfFormula encode_constraints(const MocoInstance& inst, int& next_var) {
    CnfFormula out;
    out.ensure_var(inst.num_vars);
    next_var = std::max(next_var, inst.num_vars);
    for (const PbConstraint& c : inst.constraints) {
        CnfFormula frag = encode_pb_constraint(c, next_var);
        out.append(frag);
    }
    for (const Clause& c : inst.clause_constraints) out.add_clause(c);
    return out;
}

EncodedInstance encode(const MocoInstance& inst, const EncoderConfig& cfg) {
    EncodedInstance enc;
    enc.num_original_vars = inst.num_vars;
    int next_var = inst.num_vars;
    enc.cnf = encode_constraints(inst, next_var);

    for (const ObjectiveFunction& f : inst.objectives) {
        CounterNode root = build_counter(f.terms, 0, f.terms.size(), enc.cnf, next_var);
        CounterOutputs c;
        c.values = root.values;
        c.lits = root.lits;
        c.upper_bound = f.upper_bound();
        assert(c.values.empty() || c.values.back() == c.upper_bound);
        if (c.upper_bound > cfg.attainable_cap) c.exact_values = false;
        enc.counters.push_back(std::move(c));
    }
    return enc;
}

}  // namespace moco
