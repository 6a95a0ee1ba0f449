#pragma once

#include <optional>

#include "sublogic/ast.hpp"
#include "sublogic/generators.hpp"

namespace sublogic::testing {

// Random in-fragment instance inside the oracle limits (closure <= 14 by
// default), or nothing when the draw came out too large.
inline std::optional<ProblemInstance> fragment_instance(const RandomProfile& profile,
                                                        uint64_t seed,
                                                        size_t max_closure = 14) {
    RandomParams params;
    params.atoms = 4;
    params.roles = 2;
    params.axioms = 5;
    params.depth = 2;
    params.individuals = 3;
    params.assertions = 2;
    ProblemInstance inst = gen_random(profile, seed, params);
    if (subconcept_closure(inst).size() > max_closure)
        return std::nullopt;
    return inst;
}

} // namespace sublogic::testing
