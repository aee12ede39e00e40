#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "moco/types.hpp"

namespace moco {

//==============================================================================
// Multi-objective OPB files.
//
//   * free-form comment
//   * #variable= 5 #constraint= 3
//   min: 2 x1 3 ~x2 ;
//   1 x1 1 x2 >= 1 ;
//
// Terms are kept raw (signed weights, possibly negated literals); conversion
// to the normalized in-memory model happens in to_instance.
//==============================================================================

struct OpbTermRaw {
    int64_t weight = 0;
    Lit lit;
};

struct OpbObjective {
    std::vector<OpbTermRaw> terms;
};

struct OpbConstraint {
    std::vector<OpbTermRaw> terms;
    PbRel rel = PbRel::GreaterEq;
    int64_t bound = 0;
};

struct MoOpbDocument {
    int declared_vars = 0; // from the #variable= header, 0 when absent
    std::vector<OpbObjective> objectives;
    std::vector<OpbConstraint> constraints;
};

struct OpbParseError : std::runtime_error {
    int line;
    OpbParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

MoOpbDocument parse_mo_opb(std::istream& in);
MoOpbDocument parse_mo_opb_file(const std::string& path);

// Canonical form: header comment, one objective per line, single spaces,
// trailing " ;", LF line endings.
std::string render_mo_opb(const MoOpbDocument& doc);

MocoInstance to_instance(const MoOpbDocument& doc);

// Objective offsets are not representable in the file format and are dropped;
// the emitted document's objective values may differ from reported_value by a
// per-objective constant.
MoOpbDocument from_instance(const MocoInstance& inst);

}  // namespace moco
