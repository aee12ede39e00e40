#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moco {

//=============================================================================
// Literals
//=============================================================================

// Variables are dense positive ints 1..n. A literal packs the variable and
// its polarity into one int: code = 2*var + neg. Codes 0/1 are unused so a
// literal's code can index watch lists directly.
struct Lit {
    int code = 0;

    Lit() = default;

    bool operator==(const Lit& o) const { return code == o.code; }
    bool operator!=(const Lit& o) const { return code != o.code; }
    bool operator<(const Lit& o) const { return code < o.code; }
};

inline Lit mk_lit(int var, bool negated = false) {
    assert(var >= 1);
    Lit l;
    l.code = 2 * var + (negated ? 1 : 0);
    return l;
}

inline Lit operator~(Lit l) {
    Lit r;
    r.code = l.code ^ 1;
    return r;
}

inline int var_of(Lit l) { return l.code >> 1; }
inline bool is_neg(Lit l) { return l.code & 1; }

// DIMACS-style signed int: +v for the positive literal, -v for the negation.
inline int to_dimacs(Lit l) { return is_neg(l) ? -var_of(l) : var_of(l); }
inline Lit from_dimacs(int d) {
    assert(d != 0);
    return d > 0 ? mk_lit(d, false) : mk_lit(-d, true);
}

inline std::string to_string(Lit l) {
    return (is_neg(l) ? "~x" : "x") + std::to_string(var_of(l));
}

//=============================================================================
// Assignments
//=============================================================================

// Total assignment over problem variables; index var-1.
using Assignment = std::vector<bool>;

inline bool lit_value(Lit l, const Assignment& a) {
    int v = var_of(l);
    assert(v >= 1 && static_cast<size_t>(v) <= a.size());
    return a[v - 1] != is_neg(l);
}

// Renders an assignment as a 0/1 string, variable 1 first.
inline std::string to_bitstring(const Assignment& a) {
    std::string s;
    s.reserve(a.size());
    for (bool b : a) s.push_back(b ? '1' : '0');
    return s;
}

//=============================================================================
// Clauses and CNF
//=============================================================================

using Clause = std::vector<Lit>;

inline bool is_tautology(const Clause& c) {
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j)
            if (c[i].code == (c[j].code ^ 1)) return true;
    return false;
}

inline bool clause_satisfied(const Clause& c, const Assignment& a) {
    for (Lit l : c)
        if (lit_value(l, a)) return true;
    return false;
}

// Ordered clause list plus a variable-count watermark. Duplicate clauses are
// allowed; tautologies are not.
struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    void ensure_var(int v) {
        if (v > num_vars) num_vars = v;
    }

    void add_clause(Clause c) {
        if (is_tautology(c))
            throw std::invalid_argument("tautological clause");
        for (Lit l : c) ensure_var(var_of(l));
        clauses.push_back(std::move(c));
    }

    void append(const CnfFormula& other) {
        ensure_var(other.num_vars);
        clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
    }
};

//=============================================================================
// Pseudo-Boolean constraints and objectives
//=============================================================================

enum class PbRel { LessEq, GreaterEq, Equal };

inline std::string to_string(PbRel r) {
    switch (r) {
        case PbRel::LessEq: return "<=";
        case PbRel::GreaterEq: return ">=";
        case PbRel::Equal: return "=";
    }
    return "?";
}

struct PbTerm {
    int64_t weight = 0;
    Lit lit;
};

namespace detail {

// Rewrites a signed term sum into an equivalent one with strictly positive
// weights and at most one term per variable. The dropped constant is returned
// so the caller can fold it into a bound or an offset:
//   sum(raw) == sum(normalized) + constant
inline std::pair<std::vector<PbTerm>, int64_t>
normalize_terms(const std::vector<PbTerm>& raw) {
    // net weight on the positive literal of each var
    std::map<int, int64_t> pos_weight;
    int64_t constant = 0;
    for (const PbTerm& t : raw) {
        if (t.weight == 0) continue;
        if (is_neg(t.lit)) {
            // w*~x == w - w*x
            pos_weight[var_of(t.lit)] -= t.weight;
            constant += t.weight;
        } else {
            pos_weight[var_of(t.lit)] += t.weight;
        }
    }
    std::vector<PbTerm> out;
    out.reserve(pos_weight.size());
    for (auto [v, w] : pos_weight) {
        if (w > 0) {
            out.push_back({w, mk_lit(v, false)});
        } else if (w < 0) {
            // -u*x == u*~x - u
            out.push_back({-w, mk_lit(v, true)});
            constant += w;
        }
    }
    return {std::move(out), constant};
}

inline int64_t term_sum(const std::vector<PbTerm>& terms, const Assignment& a) {
    int64_t s = 0;
    for (const PbTerm& t : terms)
        if (lit_value(t.lit, a)) s += t.weight;
    return s;
}

}  // namespace detail

// Linear constraint over literals. Normal form: weights > 0, one term per
// variable, terms sorted by variable.
struct PbConstraint {
    std::vector<PbTerm> terms;
    PbRel rel = PbRel::GreaterEq;
    int64_t bound = 0;

    static PbConstraint make(const std::vector<PbTerm>& raw, PbRel rel, int64_t bound) {
        auto [terms, constant] = detail::normalize_terms(raw);
        PbConstraint c;
        c.terms = std::move(terms);
        c.rel = rel;
        c.bound = bound - constant;
        return c;
    }

    int64_t weight_sum() const {
        int64_t s = 0;
        for (const PbTerm& t : terms) s += t.weight;
        return s;
    }

    bool eval(const Assignment& a) const {
        int64_t s = detail::term_sum(terms, a);
        switch (rel) {
            case PbRel::LessEq: return s <= bound;
            case PbRel::GreaterEq: return s >= bound;
            case PbRel::Equal: return s == bound;
        }
        return false;
    }
};

// Minimization objective in normal form: weights > 0, one term per variable.
// The constant dropped during normalization (and any max->min rewrite) is kept
// as `offset`; engines work on the offset-free value in [0, upper_bound()] and
// reporting adds the offset back.
struct ObjectiveFunction {
    std::vector<PbTerm> terms;
    int64_t offset = 0;

    static ObjectiveFunction make(const std::vector<PbTerm>& raw, int64_t offset = 0) {
        auto [terms, constant] = detail::normalize_terms(raw);
        ObjectiveFunction f;
        f.terms = std::move(terms);
        f.offset = offset + constant;
        return f;
    }

    // max sum(raw) == -min sum(-raw); the recorded offset makes the reported
    // value equal to -(max value).
    static ObjectiveFunction maximize(const std::vector<PbTerm>& raw, int64_t offset = 0) {
        std::vector<PbTerm> flipped = raw;
        for (PbTerm& t : flipped) t.weight = -t.weight;
        return make(flipped, -offset);
    }

    int64_t upper_bound() const {
        int64_t s = 0;
        for (const PbTerm& t : terms) s += t.weight;
        return s;
    }

    // Offset-free value, always in [0, upper_bound()].
    int64_t value(const Assignment& a) const { return detail::term_sum(terms, a); }

    int64_t reported_value(const Assignment& a) const { return value(a) + offset; }
};

using MultiObjective = std::vector<ObjectiveFunction>;

//=============================================================================
// Objective vectors and dominance
//=============================================================================

using ObjectiveVector = std::vector<int64_t>;

inline ObjectiveVector evaluate(const MultiObjective& fs, const Assignment& a) {
    ObjectiveVector y(fs.size());
    for (size_t i = 0; i < fs.size(); ++i) y[i] = fs[i].value(a);
    return y;
}

inline void check_same_dim(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("objective vectors of different length");
}

// a dominates b weakly iff a_i <= b_i for all i (minimization).
inline bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    check_same_dim(a, b);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return weakly_dominates(a, b) && a != b;
}

// L is a lower bound set for U iff every element of U is weakly dominated by
// some element of L.
inline bool is_lower_bound_set(const std::vector<ObjectiveVector>& L,
                               const std::vector<ObjectiveVector>& U) {
    for (const ObjectiveVector& u : U) {
        bool bounded = false;
        for (const ObjectiveVector& l : L)
            if (weakly_dominates(l, u)) { bounded = true; break; }
        if (!bounded) return false;
    }
    return true;
}

//=============================================================================
// Problem instance
//=============================================================================

// Minimize each objective subject to the PB constraints plus, optionally,
// plain clauses over the problem variables (used by relaxation-based search).
struct MocoInstance {
    int num_vars = 0;
    std::vector<PbConstraint> constraints;
    std::vector<Clause> clause_constraints;
    MultiObjective objectives;

    bool feasible(const Assignment& a) const {
        assert(static_cast<int>(a.size()) == num_vars);
        for (const PbConstraint& c : constraints)
            if (!c.eval(a)) return false;
        for (const Clause& c : clause_constraints)
            if (!clause_satisfied(c, a)) return false;
        return true;
    }
};

}  // namespace moco
