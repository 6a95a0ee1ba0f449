#pragma once

#include "sublogic/ast.hpp"

namespace sublogic {

// Extension of c in i as a bitmask over the domain. Atomic names absent from
// i read as the empty extension.
uint64_t evaluate_concept(const Interpretation& i, const CPtr& c);

// Every axiom satisfied, every assertion satisfied, query nonempty if present.
bool check_model(const Interpretation& i, const ProblemInstance& inst);

struct Signature {
    OperatorSet used_operators;
    bool uses_exists = false;
    bool uses_forall = false;
    std::set<std::string> atoms;
    std::set<std::string> roles;
    std::set<std::string> individuals;
};

Signature signature(const ProblemInstance& inst);

// Operator-name -> dual operator. Reuses a declared operator when one has the
// dual table already, otherwise names the dual "_d_<name>".
std::map<std::string, NamedOperator> dual_operator_map(const OperatorSet& ops);

// NNF of (not c): operators replaced by duals, quantifiers swapped, atoms A
// renamed to fresh primed atoms "_d_A". not-shaped operators are consumed
// rather than dualized so the result has no negations above atoms.
CPtr nnf_dualize(const CPtr& c, const std::map<std::string, NamedOperator>& duals);

} // namespace sublogic
