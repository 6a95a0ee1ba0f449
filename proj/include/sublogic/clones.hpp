#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sublogic/truthtable.hpp"

namespace sublogic {

// The named clones: the classically tabulated landmarks of the lattice plus
// the duals and sandwich clones the classifier's completeness argument needs.
// Declaration order is a linear extension of the lattice order (smallest
// first), which is also the order identify_clone checks them in.
enum class Clone {
    I2, I0, I1, I,
    N2, N,
    E0, E1, E,
    V0, V1, V,
    L2, L0, L1, L3, L,
    D2, D1, D,
    S11, S1,
    M2, M0, M1, M,
    R2, R0, R1,
    BF,
};

const std::vector<Clone>& all_clones(); // fixed order, smallest to largest
const std::string& clone_name(Clone c);
std::optional<Clone> clone_by_name(const std::string& name);

// Standard base of the clone, arities <= 3.
const std::vector<NamedOperator>& clone_base(Clone c);

// Exact membership test f in C, any arity <= kArityCap.
bool clone_member(const TruthTable& f, Clone c);

// C1 subseteq C2 in Post's lattice, restricted to the named set.
bool clone_leq(Clone c1, Clone c2);

// The dual clone under f |-> f^d. Total on the named set except the
// S1 family, whose duals (S0 family) are not stored.
std::optional<Clone> clone_dual(Clone c);

struct CloneDescriptor {
    std::optional<Clone> named;
    std::set<Clone> contains; // named C with C subseteq [B]
    std::set<Clone> within;   // named C with [B] subseteq C
    // True when some operator exceeded the closure arity cap and the
    // contains side was computed from variable-identification minors only.
    bool conservative = false;
};

// All n-ary members of [B] as truth tables, 1 <= n <= kClosureArityCap.
std::set<uint64_t> nary_closure(const OperatorSet& B, int n);

// g in [B]? 0-ary g is tested via its unary constant lifting.
bool contains_function(const OperatorSet& B, const TruthTable& g);

// Every base function of c is in [B]?
bool contains_clone(const OperatorSet& B, Clone c);

CloneDescriptor identify_clone(const OperatorSet& B);

// A term over B: an operator application tree over projections x1..xn.
struct Term {
    std::string op;           // empty for a projection
    int var = -1;             // projection index (0-based) when op is empty
    std::vector<Term> kids;

    std::string to_string() const;
    int eval(const OperatorSet& B, const std::vector<int>& args) const;
};

// A term over B that evaluates to g on all inputs. Throws
// NotExpressibleError when g is not in [B].
Term witness_term(const OperatorSet& B, const TruthTable& g);

} // namespace sublogic
