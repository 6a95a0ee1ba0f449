#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sublogic/truthtable.hpp"

namespace sublogic {

struct Concept;
using CPtr = std::shared_ptr<const Concept>;

// Immutable concept AST: atoms, operator applications, and the two
// qualified role restrictions.
struct Concept {
    enum class Kind { Atomic, Apply, Exists, Forall };
    Kind kind;
    std::string name;          // atom name, operator name, or role name
    TruthTable table;          // Apply only
    std::vector<CPtr> children;

    // Canonical text form, also used as the structural-equality key.
    std::string key() const;
};

CPtr atom(const std::string& name);
CPtr apply(const NamedOperator& op, std::vector<CPtr> children);
CPtr apply(const std::string& op_name, const TruthTable& t, std::vector<CPtr> children);
CPtr exists(const std::string& role, CPtr child);
CPtr forall(const std::string& role, CPtr child);

bool structurally_equal(const CPtr& a, const CPtr& b);

struct Axiom {
    CPtr lhs;
    CPtr rhs; // lhs subsumed-by rhs
};

struct Ontology {
    std::vector<Axiom> tbox;
    std::vector<std::pair<CPtr, std::string>> concept_assertions; // C(a)
    struct RoleAssertion {
        std::string role, from, to;
    };
    std::vector<RoleAssertion> role_assertions; // R(a,b)
};

enum class ProblemKind { CSAT, TSAT, TCSAT, OSAT, OCSAT };

struct QuantifierSet {
    bool exists = false;
    bool forall = false;

    static QuantifierSet none() { return {false, false}; }
    static QuantifierSet only_exists() { return {true, false}; }
    static QuantifierSet only_forall() { return {false, true}; }
    static QuantifierSet both() { return {true, true}; }
    bool empty() const { return !exists && !forall; }
    bool single() const { return exists != forall; }
    bool operator==(const QuantifierSet& o) const {
        return exists == o.exists && forall == o.forall;
    }
};

const std::string& kind_name(ProblemKind k);
std::optional<ProblemKind> kind_by_name(const std::string& s);
bool kind_has_query(ProblemKind k);
bool kind_has_abox(ProblemKind k);

struct ProblemInstance {
    ProblemKind kind = ProblemKind::TSAT;
    OperatorSet operators;
    Ontology ontology;
    CPtr query; // null when the kind takes no query

    // Structural validity: query presence matches the kind, every Apply node
    // uses a declared operator at the right arity, ABox only for OSAT/OCSAT.
    void validate() const;

    bool operator==(const ProblemInstance& o) const;
};

// A finite model candidate. Elements are 0..domain_size-1; extensions are
// bitmasks over the domain (so the domain is capped at 64 elements).
struct Interpretation {
    int domain_size = 1;
    std::map<std::string, uint64_t> concept_ext;
    std::map<std::string, std::set<std::pair<int, int>>> role_ext;
    std::map<std::string, int> individuals;

    uint64_t full_mask() const {
        return domain_size >= 64 ? ~uint64_t{0} : (uint64_t{1} << domain_size) - 1;
    }
    std::string to_string() const;
};

// Walks c bottom-up, applying fn to every node (children first).
void for_each_subconcept(const CPtr& c, const std::function<void(const CPtr&)>& fn);

// Distinct subconcepts of all axiom sides, assertions, and the query,
// children before parents, deduplicated structurally.
std::vector<CPtr> subconcept_closure(const ProblemInstance& inst);

// Rewrites c replacing every node whose key matches, bottom-up.
CPtr replace_subconcepts(const CPtr& c,
                         const std::map<std::string, CPtr>& replacement_by_key);

} // namespace sublogic
