#include "sublogic/transforms.hpp"

#include <deque>
#include <functional>

#include "sublogic/errors.hpp"
#include "sublogic/semantics.hpp"

namespace sublogic {

namespace {

NamedOperator std_and() { return {"and", tbl::and2()}; }
NamedOperator std_or() { return {"or", tbl::or2()}; }
NamedOperator std_not() { return {"not", tbl::not1()}; }
NamedOperator std_top() { return {"top", tbl::top0()}; }
NamedOperator std_bot() { return {"bot", tbl::bot0()}; }

// Per-invocation fresh-name source. Candidates are "_tag", "_tag2", ...
class FreshNames {
  public:
    explicit FreshNames(const ProblemInstance& inst) {
        Signature sig = signature(inst);
        used_.insert(sig.atoms.begin(), sig.atoms.end());
        used_.insert(sig.roles.begin(), sig.roles.end());
        used_.insert(sig.individuals.begin(), sig.individuals.end());
        for (const auto& [name, t] : inst.operators.entries())
            used_.insert(name);
    }

    std::string fresh(const std::string& tag, TransformReport* report = nullptr) {
        std::string name = "_" + tag;
        for (int n = 2; used_.count(name); ++n)
            name = "_" + tag + std::to_string(n);
        used_.insert(name);
        if (report)
            report->fresh_names.push_back(name);
        return name;
    }

  private:
    std::set<std::string> used_;
};

// Adds an operator with this table, reusing a declared one when the table
// already exists. Returns the usable operator.
NamedOperator ensure_op(OperatorSet& ops, const NamedOperator& preferred) {
    if (auto existing = ops.name_of(preferred.table))
        return {*existing, preferred.table};
    std::string name = preferred.name;
    for (int n = 2; ops.has(name); ++n)
        name = "_" + preferred.name + (n == 2 ? std::string() : std::to_string(n));
    NamedOperator op{name, preferred.table};
    ops.add(op);
    return op;
}

bool is_const_apply(const CPtr& c, int value) {
    return c->kind == Concept::Kind::Apply && c->table.is_constant() &&
           c->table.constant_value() == value;
}

bool atomic_like(const CPtr& c) {
    return c->kind == Concept::Kind::Atomic ||
           (c->kind == Concept::Kind::Apply && c->table.is_constant());
}

} // namespace

CPtr term_to_concept(const Term& t, const std::vector<CPtr>& args, const OperatorSet& ops) {
    if (t.op.empty())
        return args.at(t.var);
    std::vector<CPtr> kids;
    kids.reserve(t.kids.size());
    for (const auto& k : t.kids)
        kids.push_back(term_to_concept(k, args, ops));
    return apply(t.op, ops.table(t.op), std::move(kids));
}

// ---------------------------------------------------------------------------
// lift

namespace {

bool lift_reachable(ProblemKind from, ProblemKind to) {
    if (from == to)
        return true;
    switch (from) {
    case ProblemKind::CSAT:
    case ProblemKind::TCSAT:
        return to == ProblemKind::OSAT || to == ProblemKind::OCSAT;
    case ProblemKind::TSAT:
        return to == ProblemKind::TCSAT || to == ProblemKind::OSAT || to == ProblemKind::OCSAT;
    case ProblemKind::OSAT:
        return to == ProblemKind::OCSAT;
    case ProblemKind::OCSAT:
        return to == ProblemKind::OSAT;
    }
    return false;
}

} // namespace

TransformResult lift(const ProblemInstance& inst, ProblemKind target) {
    if (!lift_reachable(inst.kind, target))
        throw ArgumentError("lift: unsupported direction " + kind_name(inst.kind) + " -> " +
                            kind_name(target));
    TransformResult res{inst, {inst.kind, target, {}, 0, 0}};
    FreshNames names(inst);
    while (res.instance.kind != target) {
        ProblemInstance& cur = res.instance;
        switch (cur.kind) {
        case ProblemKind::CSAT: { // C satisfiable iff {C(a)} satisfiable
            cur.ontology.concept_assertions.push_back(
                {cur.query, names.fresh("a", &res.report)});
            cur.query = nullptr;
            cur.kind = ProblemKind::OSAT;
            break;
        }
        case ProblemKind::TSAT: { // T satisfiable iff fresh atom sat w.r.t. T
            cur.query = atom(names.fresh("q", &res.report));
            cur.kind = ProblemKind::TCSAT;
            break;
        }
        case ProblemKind::TCSAT: { // (T, C) iff T + {C(a)} satisfiable
            cur.ontology.concept_assertions.push_back(
                {cur.query, names.fresh("a", &res.report)});
            cur.query = nullptr;
            cur.kind = ProblemKind::OSAT;
            break;
        }
        case ProblemKind::OSAT: {
            cur.query = atom(names.fresh("q", &res.report));
            cur.kind = ProblemKind::OCSAT;
            break;
        }
        case ProblemKind::OCSAT: {
            cur.ontology.concept_assertions.push_back(
                {cur.query, names.fresh("a", &res.report)});
            cur.query = nullptr;
            cur.kind = ProblemKind::OSAT;
            break;
        }
        }
    }
    res.instance.validate();
    return res;
}

// ---------------------------------------------------------------------------
// simulate_constants

TransformResult simulate_constants(const ProblemInstance& inst) {
    TransformResult res{inst, {inst.kind, inst.kind, {}, 0, 0}};

    bool any_const = false;
    auto scan = [&](const CPtr& c) {
        for_each_subconcept(c, [&](const CPtr& s) {
            if (s->kind == Concept::Kind::Apply && s->table.is_constant())
                any_const = true;
        });
    };
    for (const auto& ax : inst.ontology.tbox) {
        scan(ax.lhs);
        scan(ax.rhs);
    }
    for (const auto& [c, ind] : inst.ontology.concept_assertions)
        scan(c);
    if (inst.query)
        scan(inst.query);
    if (!any_const)
        return res;

    OperatorSet nonconst;
    for (const auto& [name, t] : inst.operators.entries())
        if (!t.is_constant())
            nonconst.add({name, t});
    Term neg;
    try {
        neg = witness_term(nonconst, tbl::not1());
    } catch (const NotExpressibleError&) {
        throw NotExpressibleError(
            "simulate_constants: negation is not expressible in the non-constant operators");
    }

    FreshNames names(inst);
    std::string top_name = names.fresh("top", &res.report);
    std::string bot_name = names.fresh("bot", &res.report);
    CPtr top_atom = atom(top_name);
    CPtr bot_atom = atom(bot_name);

    std::function<CPtr(const CPtr&)> rw = [&](const CPtr& c) -> CPtr {
        if (c->kind == Concept::Kind::Apply && c->table.is_constant())
            return c->table.constant_value() ? top_atom : bot_atom;
        if (c->children.empty())
            return c;
        std::vector<CPtr> kids;
        for (const auto& k : c->children)
            kids.push_back(rw(k));
        switch (c->kind) {
        case Concept::Kind::Apply: return apply(c->name, c->table, std::move(kids));
        case Concept::Kind::Exists: return exists(c->name, kids[0]);
        case Concept::Kind::Forall: return forall(c->name, kids[0]);
        default: return c;
        }
    };

    ProblemInstance& out = res.instance;
    out.operators = nonconst;
    for (auto& ax : out.ontology.tbox) {
        ax.lhs = rw(ax.lhs);
        ax.rhs = rw(ax.rhs);
    }
    for (auto& [c, ind] : out.ontology.concept_assertions)
        c = rw(c);
    if (out.query)
        out.query = rw(out.query);

    auto neg_of = [&](const CPtr& x) { return term_to_concept(neg, {x}, nonconst); };
    out.ontology.tbox.push_back({neg_of(top_atom), top_atom}); // not T <= T
    out.ontology.tbox.push_back({bot_atom, neg_of(bot_atom)}); // B <= not B
    res.report.axioms_added = 2;
    out.validate();
    return res;
}

// ---------------------------------------------------------------------------
// tcsat_to_tsat

TransformResult tcsat_to_tsat(const ProblemInstance& inst) {
    if (inst.kind != ProblemKind::TCSAT)
        throw ArgumentError("tcsat_to_tsat: input kind must be tcsat");
    TransformResult res{inst, {inst.kind, ProblemKind::TSAT, {}, 1, 0}};
    ProblemInstance& out = res.instance;
    NamedOperator top = ensure_op(out.operators, std_top());
    FreshNames names(inst);
    std::string role = names.fresh("R", &res.report);
    out.ontology.tbox.push_back({apply(top, {}), exists(role, out.query)});
    out.query = nullptr;
    out.kind = ProblemKind::TSAT;
    out.validate();
    return res;
}

// ---------------------------------------------------------------------------
// lewis_relativize

TransformResult lewis_relativize(const ProblemInstance& inst) {
    if (inst.kind != ProblemKind::TSAT)
        throw ArgumentError("lewis_relativize: input kind must be tsat");
    TransformResult res{inst, {inst.kind, ProblemKind::TCSAT, {}, 0, 0}};
    FreshNames names(inst);
    CPtr t_atom = atom(names.fresh("T", &res.report));

    // SC(T): distinct subconcepts in traversal order.
    std::vector<CPtr> sc;
    std::set<std::string> seen;
    for (const auto& ax : inst.ontology.tbox) {
        for (const CPtr& side : {ax.lhs, ax.rhs})
            for_each_subconcept(side, [&](const CPtr& s) {
                if (seen.insert(s->key()).second)
                    sc.push_back(s);
            });
    }

    std::function<CPtr(const CPtr&)> relativize = [&](const CPtr& c) -> CPtr {
        if (is_const_apply(c, 1))
            return t_atom;
        if (c->children.empty())
            return c;
        std::vector<CPtr> kids;
        for (const auto& k : c->children)
            kids.push_back(relativize(k));
        switch (c->kind) {
        case Concept::Kind::Apply: return apply(c->name, c->table, std::move(kids));
        case Concept::Kind::Exists: return exists(c->name, kids[0]);
        case Concept::Kind::Forall: return forall(c->name, kids[0]);
        default: return c;
        }
    };

    ProblemInstance& out = res.instance;
    out.ontology.tbox.clear();
    for (const auto& ax : inst.ontology.tbox)
        out.ontology.tbox.push_back({relativize(ax.lhs), relativize(ax.rhs)});
    for (const auto& c : sc)
        out.ontology.tbox.push_back({relativize(c), t_atom});
    // Roles under a universal restriction must not escape the relativized
    // subdomain: without these guards, dropping non-T successors makes a
    // forall concept true in the restriction that was false before (for
    // example, all r.top <= bot is unsatisfiable while its unguarded
    // relativization is not).
    std::set<std::string> forall_roles;
    for (const auto& c : sc)
        if (c->kind == Concept::Kind::Forall)
            forall_roles.insert(c->name);
    for (const auto& role : forall_roles)
        out.ontology.tbox.push_back({t_atom, forall(role, t_atom)});
    res.report.axioms_added = static_cast<int>(sc.size() + forall_roles.size());

    // The relativized instance no longer mentions top.
    OperatorSet ops;
    for (const auto& [name, t] : inst.operators.entries())
        if (!(t.is_constant() && t.constant_value() == 1))
            ops.add({name, t});
    out.operators = ops;
    out.query = t_atom;
    out.kind = ProblemKind::TCSAT;
    out.validate();
    return res;
}

// ---------------------------------------------------------------------------
// dualize

TransformResult dualize(const ProblemInstance& inst, DualizeMode mode) {
    if (mode == DualizeMode::Tsat && inst.kind != ProblemKind::TSAT)
        throw ArgumentError("dualize: tsat mode needs a tsat instance");
    if (mode == DualizeMode::Tcsat && inst.kind != ProblemKind::TCSAT)
        throw ArgumentError("dualize: tcsat mode needs a tcsat instance");
    TransformResult res{inst, {inst.kind, inst.kind, {}, 0, 0}};
    ProblemInstance& out = res.instance;

    auto duals = dual_operator_map(inst.operators);
    OperatorSet dual_ops;
    for (const auto& [orig, d] : duals)
        dual_ops.add(d);

    std::vector<Axiom> con;
    for (const auto& ax : inst.ontology.tbox)
        con.push_back({nnf_dualize(ax.rhs, duals), nnf_dualize(ax.lhs, duals)});
    res.report.axioms_rewritten = static_cast<int>(con.size());

    if (mode == DualizeMode::Tsat) {
        // Positivized subtrees under even negation blocks keep original
        // operators, so declare both sets.
        out.operators = dual_ops;
        for (const auto& [name, t] : inst.operators.entries())
            out.operators.add({name, t});
        out.ontology.tbox = std::move(con);
        out.validate();
        return res;
    }

    // Tcsat mode: keep the original query; C' is its primed NNF dual,
    // introduced as a defined fresh atom when compound.
    OperatorSet ops = dual_ops;
    for (const auto& [name, t] : inst.operators.entries())
        ops.add({name, t});
    NamedOperator andop = ensure_op(ops, std_and());
    NamedOperator botop = ensure_op(ops, std_bot());

    CPtr cprime = nnf_dualize(inst.query, duals);
    if (cprime->kind != Concept::Kind::Atomic) {
        FreshNames names(inst);
        CPtr def = atom(names.fresh("dq", &res.report));
        con.push_back({def, cprime});
        con.push_back({cprime, def});
        cprime = def;
    }
    con.push_back({apply(andop, {inst.query, cprime}), apply(botop, {})});
    res.report.axioms_added = 1;

    out.operators = ops;
    out.ontology.tbox = std::move(con);
    out.validate();
    return res;
}

// ---------------------------------------------------------------------------
// change_base

TransformResult change_base(const ProblemInstance& inst, const OperatorSet& B2) {
    for (const auto& [name, t] : inst.operators.entries())
        if (!contains_function(B2, t))
            throw NotExpressibleError("change_base: operator '" + name +
                                      "' is not expressible over the target base");
    for (const auto& [name, t] : B2.entries())
        if (!contains_function(inst.operators, t))
            throw NotExpressibleError("change_base: target operator '" + name +
                                      "' is not expressible over the declared base");

    TransformResult res{{}, {inst.kind, inst.kind, {}, 0, 0}};
    ProblemInstance& out = res.instance;
    out.kind = inst.kind;
    out.operators = B2;
    out.ontology.role_assertions = inst.ontology.role_assertions;

    FreshNames names(inst);
    std::map<std::string, Term> op_terms;
    CPtr const_arg; // plug variable for nullary operator circuits

    std::map<std::string, CPtr> gate_of; // subconcept key -> gate atom
    std::vector<Axiom> gate_axioms;
    std::function<CPtr(const CPtr&)> gate = [&](const CPtr& c) -> CPtr {
        auto it = gate_of.find(c->key());
        if (it != gate_of.end())
            return it->second;
        std::vector<CPtr> kid_gates;
        for (const auto& k : c->children)
            kid_gates.push_back(gate(k));
        CPtr g = atom(names.fresh("g", &res.report));
        gate_of[c->key()] = g;
        CPtr def;
        switch (c->kind) {
        case Concept::Kind::Atomic:
            def = c;
            break;
        case Concept::Kind::Apply: {
            auto tit = op_terms.find(c->name);
            if (tit == op_terms.end())
                tit = op_terms.emplace(c->name, witness_term(B2, c->table)).first;
            std::vector<CPtr> args = kid_gates;
            if (args.empty()) {
                if (!const_arg)
                    const_arg = atom(names.fresh("cb", &res.report));
                args.push_back(const_arg);
            }
            def = term_to_concept(tit->second, args, B2);
            break;
        }
        case Concept::Kind::Exists:
            def = exists(c->name, kid_gates[0]);
            break;
        case Concept::Kind::Forall:
            def = forall(c->name, kid_gates[0]);
            break;
        }
        gate_axioms.push_back({g, def});
        gate_axioms.push_back({def, g});
        return g;
    };

    std::vector<Axiom> translated;
    for (const auto& ax : inst.ontology.tbox)
        translated.push_back({gate(ax.lhs), gate(ax.rhs)});
    for (const auto& [c, ind] : inst.ontology.concept_assertions)
        out.ontology.concept_assertions.push_back({gate(c), ind});
    if (inst.query)
        out.query = gate(inst.query);

    out.ontology.tbox = std::move(gate_axioms);
    out.ontology.tbox.insert(out.ontology.tbox.end(), translated.begin(), translated.end());
    res.report.axioms_added = static_cast<int>(out.ontology.tbox.size()) -
                              static_cast<int>(inst.ontology.tbox.size());
    out.validate();
    return res;
}

// ---------------------------------------------------------------------------
// standardize_operators

namespace {

struct StdOps {
    OperatorSet set;
    NamedOperator and_op, or_op, not_op, top_op, bot_op;
    StdOps() : and_op(std_and()), or_op(std_or()), not_op(std_not()),
               top_op(std_top()), bot_op(std_bot()) {}
};

CPtr standardize_concept(const CPtr& c, StdOps& std_ops, std::set<std::string>& used) {
    switch (c->kind) {
    case Concept::Kind::Atomic:
        return c;
    case Concept::Kind::Exists:
        return exists(c->name, standardize_concept(c->children[0], std_ops, used));
    case Concept::Kind::Forall:
        return forall(c->name, standardize_concept(c->children[0], std_ops, used));
    case Concept::Kind::Apply:
        break;
    }
    const TruthTable& t = c->table;
    if (t.is_constant()) {
        const NamedOperator& op = t.constant_value() ? std_ops.top_op : std_ops.bot_op;
        used.insert(op.name);
        return apply(op, {});
    }
    int coord = 0;
    if (t.is_projection(&coord))
        return standardize_concept(c->children[coord], std_ops, used);
    if (t.is_negation_of(&coord)) {
        used.insert(std_ops.not_op.name);
        return apply(std_ops.not_op,
                     {standardize_concept(c->children[coord], std_ops, used)});
    }
    std::vector<int> coords;
    if (t.is_and_of_subset(&coords) || t.is_or_of_subset(&coords)) {
        bool conj = t.is_and_of_subset();
        const NamedOperator& op = conj ? std_ops.and_op : std_ops.or_op;
        CPtr acc = standardize_concept(c->children[coords[0]], std_ops, used);
        for (size_t i = 1; i < coords.size(); ++i) {
            used.insert(op.name);
            acc = apply(op, {acc, standardize_concept(c->children[coords[i]], std_ops, used)});
        }
        return acc;
    }
    throw FragmentError("operator '" + c->name +
                        "' is not a constant, projection, conjunction, disjunction, or negation");
}

} // namespace

ProblemInstance standardize_operators(const ProblemInstance& inst) {
    StdOps std_ops;
    std::set<std::string> used;
    ProblemInstance out;
    out.kind = inst.kind;
    out.ontology.role_assertions = inst.ontology.role_assertions;
    for (const auto& ax : inst.ontology.tbox)
        out.ontology.tbox.push_back({standardize_concept(ax.lhs, std_ops, used),
                                     standardize_concept(ax.rhs, std_ops, used)});
    for (const auto& [c, ind] : inst.ontology.concept_assertions)
        out.ontology.concept_assertions.push_back(
            {standardize_concept(c, std_ops, used), ind});
    if (inst.query)
        out.query = standardize_concept(inst.query, std_ops, used);
    for (const NamedOperator& op :
         {std_ops.and_op, std_ops.or_op, std_ops.not_op, std_ops.top_op, std_ops.bot_op})
        if (used.count(op.name))
            out.operators.add(op);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// normalize_nf

namespace {

bool is_binary_and(const CPtr& c) {
    return c->kind == Concept::Kind::Apply && c->table == tbl::and2();
}

bool is_quantifier(const CPtr& c) {
    return c->kind == Concept::Kind::Exists || c->kind == Concept::Kind::Forall;
}

bool axiom_normal(const Axiom& ax) {
    const CPtr& l = ax.lhs;
    const CPtr& r = ax.rhs;
    if (atomic_like(l) && atomic_like(r))
        return true;
    if (is_binary_and(l) && atomic_like(l->children[0]) && atomic_like(l->children[1]) &&
        atomic_like(r))
        return true;
    if (is_quantifier(l) && atomic_like(l->children[0]) && atomic_like(r))
        return true;
    if (atomic_like(l) && is_quantifier(r) && atomic_like(r->children[0]))
        return true;
    return false;
}

CPtr requantify(const CPtr& q, CPtr child) {
    return q->kind == Concept::Kind::Exists ? exists(q->name, std::move(child))
                                            : forall(q->name, std::move(child));
}

} // namespace

bool is_normal_form(const std::vector<Axiom>& tbox) {
    for (const auto& ax : tbox)
        if (!axiom_normal(ax))
            return false;
    return true;
}

TransformResult normalize_nf(const ProblemInstance& inst) {
    ProblemInstance std_inst = standardize_operators(inst);
    for (const auto& [name, t] : std_inst.operators.entries())
        if (!(t == tbl::and2() || t.is_constant()))
            throw FragmentError("normalize_nf: non-conforming operator '" + name + "'");

    TransformResult res{std_inst, {inst.kind, inst.kind, {}, 0, 0}};
    ProblemInstance& out = res.instance;
    FreshNames names(std_inst);

    std::deque<Axiom> queue(out.ontology.tbox.begin(), out.ontology.tbox.end());
    std::vector<Axiom> done;
    auto define = [&](const CPtr& complex) -> CPtr {
        CPtr a = atom(names.fresh("nf", &res.report));
        queue.push_back({a, complex});
        queue.push_back({complex, a});
        return a;
    };
    while (!queue.empty()) {
        Axiom ax = queue.front();
        queue.pop_front();
        if (axiom_normal(ax)) {
            done.push_back(ax);
            continue;
        }
        res.report.axioms_rewritten++;
        const CPtr& l = ax.lhs;
        const CPtr& r = ax.rhs;
        // NF5: split conjunctions on the right.
        if (is_binary_and(r)) {
            queue.push_back({l, r->children[0]});
            queue.push_back({l, r->children[1]});
            continue;
        }
        // NF4/NF4b: complex filler under a right-hand quantifier.
        if (is_quantifier(r) && !atomic_like(r->children[0])) {
            CPtr a = define(r->children[0]);
            queue.push_back({l, requantify(r, a)});
            continue;
        }
        // NF1: complex conjunct on the left.
        if (is_binary_and(l) &&
            (!atomic_like(l->children[0]) || !atomic_like(l->children[1]))) {
            CPtr c0 = l->children[0];
            CPtr c1 = l->children[1];
            if (!atomic_like(c0))
                c0 = define(c0);
            else
                c1 = define(c1);
            queue.push_back({apply("and", tbl::and2(), {c0, c1}), r});
            continue;
        }
        // NF3/NF3b: complex filler under a left-hand quantifier.
        if (is_quantifier(l) && !atomic_like(l->children[0])) {
            CPtr a = define(l->children[0]);
            queue.push_back({requantify(l, a), r});
            continue;
        }
        // Both sides complex: route through a fresh middle atom.
        if (!atomic_like(l) && !atomic_like(r)) {
            CPtr a = atom(names.fresh("nf", &res.report));
            queue.push_back({l, a});
            queue.push_back({a, r});
            continue;
        }
        throw Error("normalize_nf: no rule applies to axiom " + l->key() + " <= " + r->key());
    }
    out.ontology.tbox = std::move(done);
    // Normalization may have introduced conjunctions or constants.
    std::set<std::string> needed;
    for (const auto& ax : out.ontology.tbox)
        for (const CPtr& side : {ax.lhs, ax.rhs})
            for_each_subconcept(side, [&](const CPtr& s) {
                if (s->kind == Concept::Kind::Apply)
                    needed.insert(s->name);
            });
    if (out.query)
        for_each_subconcept(out.query, [&](const CPtr& s) {
            if (s->kind == Concept::Kind::Apply)
                needed.insert(s->name);
        });
    for (const auto& [c, ind] : out.ontology.concept_assertions)
        for_each_subconcept(c, [&](const CPtr& s) {
            if (s->kind == Concept::Kind::Apply)
                needed.insert(s->name);
        });
    OperatorSet ops;
    for (const std::string& n : needed) {
        if (n == "and") ops.add(std_and());
        else if (n == "top") ops.add(std_top());
        else if (n == "bot") ops.add(std_bot());
        else ops.add({n, std_inst.operators.table(n)});
    }
    out.operators = ops;
    out.validate();
    return res;
}

// ---------------------------------------------------------------------------
// eliminate_conjunction_nf7

TransformResult eliminate_conjunction_nf7(const ProblemInstance& inst) {
    if (!is_normal_form(inst.ontology.tbox))
        throw ArgumentError("eliminate_conjunction_nf7: input TBox is not in normal form");
    TransformResult res{inst, {inst.kind, inst.kind, {}, 0, 0}};
    bool any_conj = false;
    for (const auto& ax : inst.ontology.tbox)
        any_conj = any_conj || is_binary_and(ax.lhs);
    if (!any_conj)
        return res;

    ProblemInstance& out = res.instance;
    FreshNames names(inst);
    NamedOperator top = ensure_op(out.operators, std_top());

    std::vector<Axiom> tbox;
    for (const auto& ax : out.ontology.tbox) {
        if (!is_binary_and(ax.lhs)) {
            tbox.push_back(ax);
            continue;
        }
        CPtr a = ax.lhs->children[0];
        CPtr b = ax.lhs->children[1];
        std::string role = names.fresh("R", &res.report);
        CPtr aprime = atom(names.fresh("p", &res.report));
        tbox.push_back({a, exists(role, apply(top, {}))});
        tbox.push_back({b, forall(role, aprime)});
        tbox.push_back({exists(role, aprime), ax.rhs});
        res.report.axioms_rewritten++;
        res.report.axioms_added += 2;
    }
    out.ontology.tbox = std::move(tbox);

    // Drop the conjunction operator if nothing uses it anymore.
    Signature sig = signature(out);
    OperatorSet ops;
    for (const auto& [name, t] : out.operators.entries())
        if (sig.used_operators.has(name) || t == top.table)
            ops.add({name, t});
    out.operators = ops;
    out.validate();
    return res;
}

} // namespace sublogic
