#include "sublogic/solvers.hpp"

#include <algorithm>
#include <numeric>

#include "sublogic/clones.hpp"
#include "sublogic/errors.hpp"
#include "sublogic/semantics.hpp"

namespace sublogic {

const std::string& status_name(Status s) {
    static const std::string names[] = {"SAT", "UNSAT", "UNKNOWN"};
    return names[static_cast<size_t>(s)];
}

const std::string& method_name(Method m) {
    static const std::string names[] = {"auto",       "typeelim", "brute",  "nlgraph",
                                        "saturation", "el",       "forallv", "propsat"};
    return names[static_cast<size_t>(m)];
}

std::optional<Method> method_by_name(const std::string& s) {
    for (Method m : {Method::Auto, Method::TypeElim, Method::Brute, Method::NlGraph,
                     Method::Saturation, Method::El, Method::ForallV, Method::PropSat})
        if (method_name(m) == s)
            return m;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

// Lexicographic canonicity under domain permutations: the encoded extension
// assignment must be minimal over its isomorphism orbit.
bool canonical_under_permutation(const std::vector<uint64_t>& atom_masks,
                                 const std::vector<uint64_t>& role_bits, int k) {
    if (k <= 1)
        return true;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        int cmp = 0; // -1: permuted smaller, 1: permuted bigger
        for (uint64_t m : atom_masks) {
            uint64_t pm = 0;
            for (int e = 0; e < k; ++e)
                if ((m >> e) & 1u)
                    pm |= uint64_t{1} << perm[e];
            if (pm != m) {
                cmp = pm < m ? -1 : 1;
                break;
            }
        }
        if (cmp == 0) {
            for (uint64_t rb : role_bits) {
                uint64_t prb = 0;
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b)
                        if ((rb >> (a * k + b)) & 1u)
                            prb |= uint64_t{1} << (perm[a] * k + perm[b]);
                if (prb != rb) {
                    cmp = prb < rb ? -1 : 1;
                    break;
                }
            }
        }
        if (cmp < 0)
            return false;
    }
    return true;
}

} // namespace

SolveResult solve_bruteforce(const ProblemInstance& inst, int max_domain,
                             const Limits& limits) {
    if (max_domain < 1)
        throw ArgumentError("solve_bruteforce: max_domain must be >= 1");
    SolveResult res;
    res.method = "brute";
    Signature sig = signature(inst);
    const bool quantified = sig.uses_exists || sig.uses_forall;
    std::vector<std::string> atoms(sig.atoms.begin(), sig.atoms.end());
    std::vector<std::string> roles(sig.roles.begin(), sig.roles.end());
    std::vector<std::string> inds(sig.individuals.begin(), sig.individuals.end());

    // Quantifier-free instances cannot enforce more elements than the
    // individuals plus one query witness.
    int sufficient = std::max(1, static_cast<int>(inds.size()) + (inst.query ? 1 : 0));
    int upto = quantified ? max_domain : std::min(max_domain, sufficient);

    for (int k = 1; k <= upto; ++k) {
        size_t atom_bits = atoms.size() * static_cast<size_t>(k);
        size_t role_bits_n = quantified ? roles.size() * static_cast<size_t>(k) * k : 0;
        size_t bits = atom_bits + role_bits_n;
        if (bits >= 63 || (uint64_t{1} << bits) > limits.brute_work_budget)
            throw LimitError("solve_bruteforce: signature too large for exhaustive "
                             "enumeration (2^" +
                             std::to_string(bits) + " interpretations exceeds budget " +
                             std::to_string(limits.brute_work_budget) + ")");
        uint64_t total = uint64_t{1} << bits;
        for (uint64_t code = 0; code < total; ++code) {
            res.stats.decisions++;
            std::vector<uint64_t> atom_masks(atoms.size());
            for (size_t ai = 0; ai < atoms.size(); ++ai)
                atom_masks[ai] = (code >> (ai * k)) & ((uint64_t{1} << k) - 1);
            std::vector<uint64_t> role_masks(quantified ? roles.size() : 0);
            for (size_t ri = 0; ri < role_masks.size(); ++ri)
                role_masks[ri] =
                    (code >> (atom_bits + ri * k * k)) & ((uint64_t{1} << (k * k)) - 1);
            if (!canonical_under_permutation(atom_masks, role_masks, k))
                continue;

            Interpretation interp;
            interp.domain_size = k;
            for (size_t ai = 0; ai < atoms.size(); ++ai)
                interp.concept_ext[atoms[ai]] = atom_masks[ai];
            if (quantified) {
                for (size_t ri = 0; ri < roles.size(); ++ri) {
                    auto& pairs = interp.role_ext[roles[ri]];
                    for (int a = 0; a < k; ++a)
                        for (int b = 0; b < k; ++b)
                            if ((role_masks[ri] >> (a * k + b)) & 1u)
                                pairs.insert({a, b});
                }
            } else {
                // Roles are inert without quantifiers; realize exactly the
                // asserted pairs once individuals are placed.
            }

            // Individual placements.
            uint64_t placements = 1;
            for (size_t i = 0; i < inds.size(); ++i)
                placements *= static_cast<uint64_t>(k);
            for (uint64_t pcode = 0; pcode < placements; ++pcode) {
                uint64_t rest = pcode;
                for (const auto& ind : inds) {
                    interp.individuals[ind] = static_cast<int>(rest % k);
                    rest /= k;
                }
                if (!quantified) {
                    interp.role_ext.clear();
                    for (const auto& ra : inst.ontology.role_assertions)
                        interp.role_ext[ra.role].insert(
                            {interp.individuals[ra.from], interp.individuals[ra.to]});
                }
                if (check_model(interp, inst)) {
                    res.status = Status::SAT;
                    res.model = interp;
                    return res;
                }
            }
        }
    }
    if (!quantified && max_domain >= sufficient) {
        res.status = Status::UNSAT;
        res.witness.push_back("exhausted all interpretations up to the sufficient bound " +
                              std::to_string(sufficient));
    } else {
        res.status = Status::UNKNOWN;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Propositional encoding + DPLL

namespace {

class Dpll {
  public:
    int new_var() {
        assign_.push_back(0);
        return static_cast<int>(assign_.size()) - 1;
    }
    void add_clause(std::vector<int> lits) { clauses_.push_back(std::move(lits)); }

    // Unit propagation plus chronological backtracking.
    bool solve(int64_t* decisions) {
        std::vector<int> trail;
        std::vector<size_t> level_marks;
        std::vector<int> decision_var;
        if (!propagate(trail))
            return false;
        while (true) {
            int var = -1;
            for (size_t v = 1; v < assign_.size(); ++v)
                if (assign_[v] == 0) {
                    var = static_cast<int>(v);
                    break;
                }
            if (var < 0)
                return true;
            (*decisions)++;
            level_marks.push_back(trail.size());
            decision_var.push_back(var);
            assign_[var] = 1;
            trail.push_back(var);
            while (!propagate(trail)) {
                // Backtrack to the most recent decision still on "true".
                int flip = -1;
                while (!level_marks.empty()) {
                    size_t mark = level_marks.back();
                    int dv = decision_var.back();
                    bool was_true = assign_[dv] == 1;
                    while (trail.size() > mark) {
                        assign_[trail.back()] = 0;
                        trail.pop_back();
                    }
                    level_marks.pop_back();
                    decision_var.pop_back();
                    if (was_true) {
                        flip = dv;
                        break;
                    }
                }
                if (flip < 0)
                    return false;
                level_marks.push_back(trail.size());
                decision_var.push_back(flip);
                assign_[flip] = -1;
                trail.push_back(flip);
            }
        }
    }

    bool value(int var) const { return assign_[var] > 0; }

  private:
    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses_) {
                int unassigned = 0;
                int unit = 0;
                bool sat = false;
                for (int lit : cl) {
                    int v = lit > 0 ? lit : -lit;
                    int val = assign_[v];
                    if (val == 0) {
                        ++unassigned;
                        unit = lit;
                    } else if ((val > 0) == (lit > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat)
                    continue;
                if (unassigned == 0)
                    return false;
                if (unassigned == 1) {
                    int v = unit > 0 ? unit : -unit;
                    assign_[v] = unit > 0 ? 1 : -1;
                    trail.push_back(v);
                    changed = true;
                }
            }
        }
        return true;
    }

    std::vector<int8_t> assign_{0}; // 1-based; 0 unassigned, 1 true, -1 false
    std::vector<std::vector<int>> clauses_;
};

} // namespace

SolveResult solve_prop_sat(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    if (sig.uses_exists || sig.uses_forall)
        throw FragmentError("solve_prop_sat: instance uses quantifiers");

    SolveResult res;
    res.method = "propsat";
    std::vector<std::string> inds(sig.individuals.begin(), sig.individuals.end());
    const int worlds = static_cast<int>(inds.size()) + 1; // world 0: query witness

    Dpll dpll;
    std::map<std::pair<int, std::string>, int> var_of; // (world, concept key)
    std::function<int(int, const CPtr&)> encode = [&](int w, const CPtr& c) -> int {
        auto key = std::make_pair(w, c->key());
        auto it = var_of.find(key);
        if (it != var_of.end())
            return it->second;
        int g = dpll.new_var();
        var_of[key] = g;
        if (c->kind == Concept::Kind::Atomic)
            return g;
        // Definitional clauses: one clause per table row ties the gate to
        // the operator applied to the children gates.
        std::vector<int> kid_vars;
        for (const auto& k : c->children)
            kid_vars.push_back(encode(w, k));
        int arity = c->table.arity();
        for (int row = 0; row < (1 << arity); ++row) {
            std::vector<int> clause;
            for (int j = 0; j < arity; ++j) {
                bool bj = (row >> (arity - 1 - j)) & 1;
                clause.push_back(bj ? -kid_vars[j] : kid_vars[j]);
            }
            clause.push_back(c->table.row(row) ? g : -g);
            dpll.add_clause(std::move(clause));
        }
        return g;
    };

    for (int w = 0; w < worlds; ++w)
        for (const auto& ax : inst.ontology.tbox)
            dpll.add_clause({-encode(w, ax.lhs), encode(w, ax.rhs)});
    for (const auto& [c, ind] : inst.ontology.concept_assertions) {
        int w = 1 + static_cast<int>(std::find(inds.begin(), inds.end(), ind) - inds.begin());
        dpll.add_clause({encode(w, c)});
    }
    if (inst.query)
        dpll.add_clause({encode(0, inst.query)});

    if (!dpll.solve(&res.stats.decisions)) {
        res.status = Status::UNSAT;
        return res;
    }
    res.status = Status::SAT;
    Interpretation interp;
    interp.domain_size = worlds;
    for (const auto& a : sig.atoms) {
        uint64_t mask = 0;
        for (int w = 0; w < worlds; ++w) {
            auto it = var_of.find({w, a});
            if (it != var_of.end() && dpll.value(it->second))
                mask |= uint64_t{1} << w;
        }
        interp.concept_ext[a] = mask;
    }
    for (size_t i = 0; i < inds.size(); ++i)
        interp.individuals[inds[i]] = static_cast<int>(i) + 1;
    for (const auto& ra : inst.ontology.role_assertions)
        interp.role_ext[ra.role].insert(
            {interp.individuals[ra.from], interp.individuals[ra.to]});
    res.model = interp;
    return res;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

bool all_ops_in(const Signature& sig, Clone c) {
    for (const auto& [name, t] : sig.used_operators.entries())
        if (!clone_member(t, c))
            return false;
    return true;
}

Method pick_method(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    bool ex = sig.uses_exists, fa = sig.uses_forall;
    if (!ex && !fa)
        return all_ops_in(sig, Clone::N) ? Method::NlGraph : Method::PropSat;
    if (ex && !fa && all_ops_in(sig, Clone::E))
        return Method::El;
    if (fa && !ex) {
        if (all_ops_in(sig, Clone::V))
            return Method::ForallV;
        if (all_ops_in(sig, Clone::E) && inst.kind == ProblemKind::TSAT)
            return Method::Saturation;
    }
    return Method::TypeElim;
}

} // namespace

SolveResult dispatch(const ProblemInstance& inst, Method method, bool cross_check,
                     const Limits& limits) {
    Method chosen = method == Method::Auto ? pick_method(inst) : method;
    auto run = [&](Method m) -> SolveResult {
        switch (m) {
        case Method::TypeElim: return solve_typeelim(inst, limits);
        case Method::Brute: return solve_bruteforce(inst, limits.brute_max_domain, limits);
        case Method::NlGraph: return solve_nl_graph(inst);
        case Method::Saturation: return solve_saturation_forall(inst);
        case Method::El: return solve_el_exists(inst);
        case Method::ForallV: return solve_forall_V(inst);
        case Method::PropSat: return solve_prop_sat(inst);
        case Method::Auto: break;
        }
        throw ArgumentError("dispatch: bad method");
    };
    SolveResult primary = run(chosen);
    if (primary.model && !check_model(*primary.model, inst))
        throw DiscrepancyError("method " + primary.method +
                               " produced a model that fails check_model");
    if (!cross_check)
        return primary;

    if (chosen != Method::TypeElim) {
        SolveResult te = run(Method::TypeElim);
        if (te.status != primary.status)
            throw DiscrepancyError("cross-check: " + primary.method + "=" +
                                   status_name(primary.status) + " but typeelim=" +
                                   status_name(te.status));
    }
    if (chosen != Method::Brute) {
        try {
            SolveResult bf = run(Method::Brute);
            if (bf.status != Status::UNKNOWN && bf.status != primary.status)
                throw DiscrepancyError("cross-check: " + primary.method + "=" +
                                       status_name(primary.status) + " but brute=" +
                                       status_name(bf.status));
        } catch (const LimitError&) {
            // brute force out of budget; skip
        }
    }
    return primary;
}

} // namespace sublogic
