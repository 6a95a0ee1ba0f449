#pragma once

#include <string>

#include "sublogic/ast.hpp"

namespace sublogic {

// Line-oriented instance format, '#' starts a comment:
//
//   operator <name> <arity> <bits>
//   problem csat|tsat|tcsat|osat|ocsat
//   tbox
//     <concept> <= <concept>
//     <concept> == <concept>        # sugar for two GCIs
//   abox
//     <concept> ( <individual> )
//     <role> ( <individual> , <individual> )
//   query <concept>
//
// Concepts: <atomic> | (<opname> C1 ... Cn) | (some <role> C) | (all <role> C).
// User identifiers are [A-Za-z][A-Za-z0-9']*; names starting with '_' are
// reserved for generated symbols but parse fine (reduction outputs reparse).
ProblemInstance parse_instance(const std::string& text);

// Canonical text form; parse_instance(print_instance(x)) == x.
std::string print_instance(const ProblemInstance& inst);

std::string print_concept(const CPtr& c);

// Operator declaration lines only, e.g. for `clone` / `classify` inputs.
// Accepts a full instance file too (ignores everything else).
OperatorSet parse_operators(const std::string& text);

} // namespace sublogic
