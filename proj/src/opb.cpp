#include "moco/opb.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace moco {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

int64_t parse_weight(const std::string& tok, int lineno) {
    size_t pos = 0;
    int64_t w;
    try {
        w = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw OpbParseError(lineno, "expected integer weight, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw OpbParseError(lineno, "expected integer weight, got '" + tok + "'");
    return w;
}

Lit parse_literal(const std::string& tok, int lineno) {
    bool neg = !tok.empty() && tok[0] == '~';
    const std::string body = neg ? tok.substr(1) : tok;
    if (body.size() < 2 || body[0] != 'x')
        throw OpbParseError(lineno, "expected literal like x3 or ~x3, got '" + tok + "'");
    size_t pos = 0;
    long long v;
    try {
        v = std::stoll(body.substr(1), &pos);
    } catch (const std::exception&) {
        throw OpbParseError(lineno, "bad variable index in '" + tok + "'");
    }
    if (pos != body.size() - 1 || v < 1)
        throw OpbParseError(lineno, "bad variable index in '" + tok + "'");
    return mk_lit(static_cast<int>(v), neg);
}

// weight/literal pairs up to (but excluding) toks[end]
std::vector<OpbTermRaw> parse_terms(const std::vector<std::string>& toks, size_t begin,
                                    size_t end, int lineno) {
    if ((end - begin) % 2 != 0)
        throw OpbParseError(lineno, "dangling token in term list");
    std::vector<OpbTermRaw> terms;
    for (size_t i = begin; i < end; i += 2)
        terms.push_back({parse_weight(toks[i], lineno), parse_literal(toks[i + 1], lineno)});
    return terms;
}

}  // namespace

MoOpbDocument parse_mo_opb(std::istream& in) {
    MoOpbDocument doc;
    std::string line;
    int lineno = 0;
    bool objectives_done = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (!line.empty() && line[0] == '*') {
            // header comment may carry the declared size
            auto toks = tokenize(line);
            for (size_t i = 0; i + 1 < toks.size(); ++i)
                if (toks[i] == "#variable=")
                    doc.declared_vars = static_cast<int>(parse_weight(toks[i + 1], lineno));
            continue;
        }
        auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (toks.back() != ";")
            throw OpbParseError(lineno, "missing ';' terminator");
        toks.pop_back();
        if (toks.empty()) throw OpbParseError(lineno, "empty statement");

        if (toks[0] == "min:") {
            if (objectives_done)
                throw OpbParseError(lineno, "objective after first constraint");
            OpbObjective obj;
            obj.terms = parse_terms(toks, 1, toks.size(), lineno);
            doc.objectives.push_back(std::move(obj));
            continue;
        }

        objectives_done = true;
        // find the relation token
        size_t rel_at = toks.size();
        PbRel rel = PbRel::GreaterEq;
        for (size_t i = 0; i < toks.size(); ++i) {
            if (toks[i] == ">=" || toks[i] == "<=" || toks[i] == "=") {
                rel_at = i;
                rel = toks[i] == ">=" ? PbRel::GreaterEq
                    : toks[i] == "<=" ? PbRel::LessEq
                                      : PbRel::Equal;
                break;
            }
        }
        if (rel_at == toks.size())
            throw OpbParseError(lineno, "constraint without relation (>=, <=, =)");
        if (rel_at + 2 != toks.size())
            throw OpbParseError(lineno, "expected a single bound after the relation");

        OpbConstraint c;
        c.terms = parse_terms(toks, 0, rel_at, lineno);
        if (c.terms.empty())
            throw OpbParseError(lineno, "constraint without terms");
        c.rel = rel;
        c.bound = parse_weight(toks[rel_at + 1], lineno);
        doc.constraints.push_back(std::move(c));
    }
    if (doc.objectives.empty())
        throw OpbParseError(lineno, "no objectives: at least one 'min:' line is required");
    return doc;
}

MoOpbDocument parse_mo_opb_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OpbParseError(0, "cannot open '" + path + "'");
    return parse_mo_opb(in);
}

namespace {

void render_terms(std::ostringstream& out, const std::vector<OpbTermRaw>& terms) {
    for (const auto& t : terms)
        out << t.weight << ' ' << to_string(t.lit) << ' ';
}

}  // namespace

std::string render_mo_opb(const MoOpbDocument& doc) {
    int max_var = doc.declared_vars;
    for (const auto& o : doc.objectives)
        for (const auto& t : o.terms) max_var = std::max(max_var, var_of(t.lit));
    for (const auto& c : doc.constraints)
        for (const auto& t : c.terms) max_var = std::max(max_var, var_of(t.lit));

    std::ostringstream out;
    out << "* #variable= " << max_var << " #constraint= " << doc.constraints.size() << "\n";
    for (const auto& o : doc.objectives) {
        out << "min: ";
        render_terms(out, o.terms);
        out << ";\n";
    }
    for (const auto& c : doc.constraints) {
        std::ostringstream line;
        render_terms(line, c.terms);
        line << to_string(c.rel) << ' ' << c.bound << " ;";
        out << line.str() << "\n";
    }
    return out.str();
}

MocoInstance to_instance(const MoOpbDocument& doc) {
    MocoInstance inst;
    int max_var = doc.declared_vars;
    for (const auto& o : doc.objectives)
        for (const auto& t : o.terms) max_var = std::max(max_var, var_of(t.lit));
    for (const auto& c : doc.constraints)
        for (const auto& t : c.terms) max_var = std::max(max_var, var_of(t.lit));
    inst.num_vars = max_var;

    for (const auto& c : doc.constraints) {
        std::vector<PbTerm> raw;
        for (const auto& t : c.terms) raw.push_back({t.weight, t.lit});
        inst.constraints.push_back(PbConstraint::make(raw, c.rel, c.bound));
    }
    for (const auto& o : doc.objectives) {
        std::vector<PbTerm> raw;
        for (const auto& t : o.terms) raw.push_back({t.weight, t.lit});
        inst.objectives.push_back(ObjectiveFunction::make(raw));
    }
    return inst;
}

MoOpbDocument from_instance(const MocoInstance& inst) {
    MoOpbDocument doc;
    doc.declared_vars = inst.num_vars;
    for (const auto& f : inst.objectives) {
        OpbObjective o;
        for (const auto& t : f.terms) o.terms.push_back({t.weight, t.lit});
        doc.objectives.push_back(std::move(o));
    }
    for (const auto& c : inst.constraints) {
        OpbConstraint oc;
        for (const auto& t : c.terms) oc.terms.push_back({t.weight, t.lit});
        oc.rel = c.rel;
        oc.bound = c.bound;
        doc.constraints.push_back(std::move(oc));
    }
    for (const auto& cl : inst.clause_constraints) {
        OpbConstraint oc;
        for (const Lit& l : cl) oc.terms.push_back({1, l});
        oc.rel = PbRel::GreaterEq;
        oc.bound = 1;
        doc.constraints.push_back(std::move(oc));
    }
    return doc;
}

}  // namespace moco
