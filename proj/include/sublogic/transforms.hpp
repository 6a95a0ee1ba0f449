#pragma once

#include "sublogic/ast.hpp"
#include "sublogic/clones.hpp"

namespace sublogic {

struct TransformReport {
    ProblemKind input_kind;
    ProblemKind output_kind;
    std::vector<std::string> fresh_names;
    int axioms_added = 0;
    int axioms_rewritten = 0;
};

struct TransformResult {
    ProblemInstance instance;
    TransformReport report;
};

// Reduction order: CSAT -> OSAT, TSAT -> TCSAT -> OSAT <-> OCSAT.
TransformResult lift(const ProblemInstance& inst, ProblemKind target);

// Replaces top/bot occurrences by fresh atoms _top/_bot constrained by
// not(_top) <= _top and _bot <= not(_bot); needs negation expressible in the
// non-constant operators.
TransformResult simulate_constants(const ProblemInstance& inst);

// (T, C) to T + {top <= some _R.C} over B + {top}.
TransformResult tcsat_to_tsat(const ProblemInstance& inst);

// Relativizes top to a fresh atom _T: T_T + {C_T <= _T | C in SC(T)},
// query _T. TSAT over B + {top} becomes TCSAT over B.
TransformResult lewis_relativize(const ProblemInstance& inst);

enum class DualizeMode { Tsat, Tcsat };

// Contraposition: operators to duals, quantifiers swapped, axiom sides
// swapped, atoms primed. Tcsat mode keeps the query and adds the
// disjointness axiom (C and C') <= bot.
TransformResult dualize(const ProblemInstance& inst, DualizeMode mode);

// Recompiles every concept into gate atoms with definitional axioms over the
// base B2; requires [declared] = [B2].
TransformResult change_base(const ProblemInstance& inst, const OperatorSet& B2);

// Brings a conjunction/constant TBox with quantifiers into the four normal
// shapes A<=B, (A and B)<=C, QR.A<=B, A<=QR.B.
TransformResult normalize_nf(const ProblemInstance& inst);

// NF7: (A and B)<=C becomes {A <= some _R.top, B <= all _R.A', some _R.A' <= C}.
// Sound in the both-quantifier setting; input must be normalized.
TransformResult eliminate_conjunction_nf7(const ProblemInstance& inst);

// Rewrites Apply nodes whose tables are constants, projections, n-ary
// conjunctions/disjunctions of arguments, or single-argument negations into
// the standard operators and/or/not/top/bot. Throws FragmentError for
// anything else. Fragment solvers use this to accept nonstandard bases.
ProblemInstance standardize_operators(const ProblemInstance& inst);

// Axiom-shape predicate for the normal form (atoms and constants allowed
// as the atomic positions).
bool is_normal_form(const std::vector<Axiom>& tbox);

CPtr term_to_concept(const Term& t, const std::vector<CPtr>& args, const OperatorSet& ops);

} // namespace sublogic
