#pragma once

#include <array>
#include <cstdint>

#include "sublogic/ast.hpp"
#include "sublogic/clones.hpp"

namespace sublogic {

struct Digraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> edges;
};

struct Hypergraph {
    int nodes = 0;
    struct HEdge {
        std::vector<int> src; // 1 or 2 source nodes
        int dst;
    };
    std::vector<HEdge> edges;
};

// Graph accessibility: T = {A_u <= A_v | (u,v) in E} + {top <= A_s, A_t <= bot}.
// Unsatisfiable iff t is reachable from s.
ProblemInstance gen_gap(const Digraph& g, int s, int t);

// Hypergraph accessibility over {and, top, bot}; unsatisfiable iff t is
// hyper-reachable from S.
ProblemInstance gen_hgap(const Hypergraph& h, const std::vector<int>& sources, int t);

struct Lit3 {
    std::string var;
    bool negated = false;
};

// One-in-three SAT over {xor, top}: satisfiable iff some assignment makes
// exactly one literal per clause true.
ProblemInstance gen_one_in_three(const std::vector<std::array<Lit3, 3>>& clauses);

// Independent combinatorial oracles for the three constructions.
bool gap_reachable(const Digraph& g, int s, int t);
bool hgap_reachable(const Hypergraph& h, const std::vector<int>& sources, int t);
bool one_in_three_satisfiable(const std::vector<std::array<Lit3, 3>>& clauses);

struct RandomProfile {
    ProblemKind kind = ProblemKind::TSAT;
    QuantifierSet q;
    Clone base = Clone::BF; // operators = the clone's standard base
};

struct RandomParams {
    int atoms = 4;
    int roles = 2;
    int axioms = 5;
    int depth = 2;
    int individuals = 2;
    int assertions = 2;
};

// Reproducible from the seed; signature respects the profile.
ProblemInstance gen_random(const RandomProfile& profile, uint64_t seed,
                           const RandomParams& params = {});

Digraph random_digraph(int nodes, int edges, uint64_t seed);
Hypergraph random_hypergraph(int nodes, int edges, uint64_t seed);
std::vector<std::array<Lit3, 3>> random_one_in_three(int vars, int clauses, uint64_t seed);

} // namespace sublogic
