#include "sublogic/semantics.hpp"

#include "sublogic/errors.hpp"

namespace sublogic {

uint64_t evaluate_concept(const Interpretation& i, const CPtr& c) {
    const uint64_t full = i.full_mask();
    switch (c->kind) {
    case Concept::Kind::Atomic: {
        auto it = i.concept_ext.find(c->name);
        return it == i.concept_ext.end() ? 0 : (it->second & full);
    }
    case Concept::Kind::Apply: {
        std::vector<uint64_t> kids;
        kids.reserve(c->children.size());
        for (const auto& k : c->children)
            kids.push_back(evaluate_concept(i, k));
        uint64_t out = 0;
        for (int e = 0; e < i.domain_size; ++e) {
            int idx = 0;
            for (uint64_t km : kids)
                idx = (idx << 1) | static_cast<int>((km >> e) & 1u);
            if (c->table.row(idx))
                out |= uint64_t{1} << e;
        }
        return out;
    }
    case Concept::Kind::Exists: {
        uint64_t kid = evaluate_concept(i, c->children[0]);
        auto it = i.role_ext.find(c->name);
        uint64_t out = 0;
        if (it != i.role_ext.end())
            for (const auto& [x, y] : it->second)
                if (x < i.domain_size && y < i.domain_size && ((kid >> y) & 1u))
                    out |= uint64_t{1} << x;
        return out;
    }
    case Concept::Kind::Forall: {
        // All R-successors lie in the child extension; no successors counts.
        uint64_t kid = evaluate_concept(i, c->children[0]);
        uint64_t out = full;
        auto it = i.role_ext.find(c->name);
        if (it != i.role_ext.end())
            for (const auto& [x, y] : it->second)
                if (x < i.domain_size && y < i.domain_size && !((kid >> y) & 1u))
                    out &= ~(uint64_t{1} << x);
        return out;
    }
    }
    return 0;
}

bool check_model(const Interpretation& i, const ProblemInstance& inst) {
    for (const auto& ax : inst.ontology.tbox) {
        uint64_t l = evaluate_concept(i, ax.lhs);
        uint64_t r = evaluate_concept(i, ax.rhs);
        if ((l & ~r) != 0)
            return false;
    }
    for (const auto& [c, ind] : inst.ontology.concept_assertions) {
        auto it = i.individuals.find(ind);
        if (it == i.individuals.end())
            return false;
        if (!((evaluate_concept(i, c) >> it->second) & 1u))
            return false;
    }
    for (const auto& ra : inst.ontology.role_assertions) {
        auto fi = i.individuals.find(ra.from);
        auto ti = i.individuals.find(ra.to);
        if (fi == i.individuals.end() || ti == i.individuals.end())
            return false;
        auto rit = i.role_ext.find(ra.role);
        if (rit == i.role_ext.end() || !rit->second.count({fi->second, ti->second}))
            return false;
    }
    if (inst.query && evaluate_concept(i, inst.query) == 0)
        return false;
    return true;
}

Signature signature(const ProblemInstance& inst) {
    Signature sig;
    auto scan = [&](const CPtr& c) {
        for_each_subconcept(c, [&](const CPtr& s) {
            switch (s->kind) {
            case Concept::Kind::Atomic:
                sig.atoms.insert(s->name);
                break;
            case Concept::Kind::Apply:
                sig.used_operators.add({s->name, s->table});
                break;
            case Concept::Kind::Exists:
                sig.uses_exists = true;
                sig.roles.insert(s->name);
                break;
            case Concept::Kind::Forall:
                sig.uses_forall = true;
                sig.roles.insert(s->name);
                break;
            }
        });
    };
    for (const auto& ax : inst.ontology.tbox) {
        scan(ax.lhs);
        scan(ax.rhs);
    }
    for (const auto& [c, ind] : inst.ontology.concept_assertions) {
        scan(c);
        sig.individuals.insert(ind);
    }
    for (const auto& ra : inst.ontology.role_assertions) {
        sig.roles.insert(ra.role);
        sig.individuals.insert(ra.from);
        sig.individuals.insert(ra.to);
    }
    if (inst.query)
        scan(inst.query);
    return sig;
}

std::map<std::string, NamedOperator> dual_operator_map(const OperatorSet& ops) {
    auto standard_name = [](const TruthTable& t) -> std::optional<std::string> {
        if (t == tbl::and2()) return "and";
        if (t == tbl::or2()) return "or";
        if (t == tbl::not1()) return "not";
        if (t == tbl::top0()) return "top";
        if (t == tbl::bot0()) return "bot";
        if (t == tbl::xor2()) return "xor";
        if (t == tbl::eq2()) return "eq";
        return std::nullopt;
    };
    std::map<std::string, NamedOperator> out;
    for (const auto& [name, t] : ops.entries()) {
        TruthTable d = t.dual();
        if (auto existing = ops.name_of(d))
            out[name] = {*existing, d};
        else if (auto std_name = standard_name(d); std_name && !ops.has(*std_name))
            out[name] = {*std_name, d};
        else
            out[name] = {"_d_" + name, d};
    }
    return out;
}

namespace {

// pos(c): c with inner negation blocks resolved, negated atoms primed.
// neg(c): NNF of (not c) under the same renaming.
CPtr nnf_pos(const CPtr& c, const std::map<std::string, NamedOperator>& duals);

CPtr nnf_neg(const CPtr& c, const std::map<std::string, NamedOperator>& duals) {
    switch (c->kind) {
    case Concept::Kind::Atomic:
        return atom("_d_" + c->name);
    case Concept::Kind::Apply: {
        if (c->table.is_negation_of()) {
            int coord = 0;
            c->table.is_negation_of(&coord);
            return nnf_pos(c->children[coord], duals);
        }
        auto it = duals.find(c->name);
        if (it == duals.end())
            throw ArgumentError("nnf_dualize: no dual for operator '" + c->name + "'");
        std::vector<CPtr> kids;
        for (const auto& k : c->children)
            kids.push_back(nnf_neg(k, duals));
        return apply(it->second, std::move(kids));
    }
    case Concept::Kind::Exists:
        return forall(c->name, nnf_neg(c->children[0], duals));
    case Concept::Kind::Forall:
        return exists(c->name, nnf_neg(c->children[0], duals));
    }
    return c;
}

CPtr nnf_pos(const CPtr& c, const std::map<std::string, NamedOperator>& duals) {
    switch (c->kind) {
    case Concept::Kind::Atomic:
        return c;
    case Concept::Kind::Apply: {
        if (c->table.is_negation_of()) {
            int coord = 0;
            c->table.is_negation_of(&coord);
            return nnf_neg(c->children[coord], duals);
        }
        std::vector<CPtr> kids;
        bool changed = false;
        for (const auto& k : c->children) {
            CPtr nk = nnf_pos(k, duals);
            changed = changed || nk != k;
            kids.push_back(std::move(nk));
        }
        return changed ? apply(c->name, c->table, std::move(kids)) : c;
    }
    case Concept::Kind::Exists:
        return exists(c->name, nnf_pos(c->children[0], duals));
    case Concept::Kind::Forall:
        return forall(c->name, nnf_pos(c->children[0], duals));
    }
    return c;
}

} // namespace

CPtr nnf_dualize(const CPtr& c, const std::map<std::string, NamedOperator>& duals) {
    return nnf_neg(c, duals);
}

} // namespace sublogic
