#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sublogic/ast.hpp"

namespace sublogic {

// Runtime caps, overridable via SUBLOGIC_LIMITS=closure=14,domain=3.
struct Limits {
    int closure_limit = 20;                    // type elimination subconcept cap
    int brute_max_domain = 3;                  // default brute-force domain bound
    uint64_t brute_work_budget = 1u << 22;     // interpretations enumerated per run
};

enum class Status { SAT, UNSAT, UNKNOWN };

const std::string& status_name(Status s);

struct SolveStats {
    int64_t types_generated = 0;
    int64_t rules_fired = 0;
    int64_t decisions = 0;
};

struct SolveResult {
    Status status = Status::UNKNOWN;
    std::optional<Interpretation> model; // present => check_model holds
    std::vector<std::string> witness;    // derivation chain / contradictory cycle
    std::string method;
    SolveStats stats;
};

// Exhaustive model search up to max_domain elements, isomorphism-pruned.
// UNSAT only when the bound is provably sufficient (quantifier-free);
// otherwise UNKNOWN when no model is found.
SolveResult solve_bruteforce(const ProblemInstance& inst, int max_domain,
                             const Limits& limits = {});

// The general decision procedure: candidate types over the subconcept
// closure, iterated elimination of types with unwitnessable role
// obligations. Exact for every kind.
SolveResult solve_typeelim(const ProblemInstance& inst, const Limits& limits = {});

// Quantifier-free fragments inside N: literal implication graph with
// contrapositive edges; unsatisfiable iff some cycle joins a literal and its
// complement. Ontologies split per individual; role assertions are inert.
SolveResult solve_nl_graph(const ProblemInstance& inst);

// TSAT, forall-only, conjunctive operators: implication-set saturation.
SolveResult solve_saturation_forall(const ProblemInstance& inst);

// Exists-only conjunctive fragments, ABox allowed: completion-rule
// saturation in the EL style; individuals become fresh atoms.
SolveResult solve_el_exists(const ProblemInstance& inst);

// Forall-only disjunctive fragments, ABox allowed: dualized (primed atoms,
// disjointness axioms) and handed to the exists-side solver.
SolveResult solve_forall_V(const ProblemInstance& inst);

// Quantifier-free, any operators: propositional encoding with one variable
// block per individual plus one for the query witness, decided by an
// internal DPLL procedure.
SolveResult solve_prop_sat(const ProblemInstance& inst);

enum class Method { Auto, TypeElim, Brute, NlGraph, Saturation, El, ForallV, PropSat };

const std::string& method_name(Method m);
std::optional<Method> method_by_name(const std::string& s);

// Auto picks the cheapest fragment solver the signature admits. cross_check
// reruns with type elimination (and brute force when conclusive) and throws
// DiscrepancyError on any disagreement.
SolveResult dispatch(const ProblemInstance& inst, Method method = Method::Auto,
                     bool cross_check = false, const Limits& limits = {});

} // namespace sublogic
