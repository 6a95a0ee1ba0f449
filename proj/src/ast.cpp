#include "sublogic/ast.hpp"

#include <functional>
#include <sstream>

#include "sublogic/errors.hpp"

namespace sublogic {

std::string Concept::key() const {
    switch (kind) {
    case Kind::Atomic:
        return name;
    case Kind::Apply: {
        std::string s = "(" + name;
        for (const auto& c : children)
            s += " " + c->key();
        return s + ")";
    }
    case Kind::Exists:
        return "(some " + name + " " + children[0]->key() + ")";
    case Kind::Forall:
        return "(all " + name + " " + children[0]->key() + ")";
    }
    return {};
}

CPtr atom(const std::string& name) {
    auto c = std::make_shared<Concept>();
    c->kind = Concept::Kind::Atomic;
    c->name = name;
    return c;
}

CPtr apply(const NamedOperator& op, std::vector<CPtr> children) {
    return apply(op.name, op.table, std::move(children));
}

CPtr apply(const std::string& op_name, const TruthTable& t, std::vector<CPtr> children) {
    if (static_cast<int>(children.size()) != t.arity())
        throw ArgumentError("operator '" + op_name + "' applied to " +
                            std::to_string(children.size()) + " arguments, arity is " +
                            std::to_string(t.arity()));
    auto c = std::make_shared<Concept>();
    c->kind = Concept::Kind::Apply;
    c->name = op_name;
    c->table = t;
    c->children = std::move(children);
    return c;
}

CPtr exists(const std::string& role, CPtr child) {
    auto c = std::make_shared<Concept>();
    c->kind = Concept::Kind::Exists;
    c->name = role;
    c->children = {std::move(child)};
    return c;
}

CPtr forall(const std::string& role, CPtr child) {
    auto c = std::make_shared<Concept>();
    c->kind = Concept::Kind::Forall;
    c->name = role;
    c->children = {std::move(child)};
    return c;
}

bool structurally_equal(const CPtr& a, const CPtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return a->key() == b->key();
}

const std::string& kind_name(ProblemKind k) {
    static const std::string names[] = {"csat", "tsat", "tcsat", "osat", "ocsat"};
    return names[static_cast<size_t>(k)];
}

std::optional<ProblemKind> kind_by_name(const std::string& s) {
    for (ProblemKind k : {ProblemKind::CSAT, ProblemKind::TSAT, ProblemKind::TCSAT,
                          ProblemKind::OSAT, ProblemKind::OCSAT})
        if (kind_name(k) == s)
            return k;
    return std::nullopt;
}

bool kind_has_query(ProblemKind k) {
    return k == ProblemKind::CSAT || k == ProblemKind::TCSAT || k == ProblemKind::OCSAT;
}

bool kind_has_abox(ProblemKind k) {
    return k == ProblemKind::OSAT || k == ProblemKind::OCSAT;
}

void ProblemInstance::validate() const {
    if (kind_has_query(kind) != (query != nullptr))
        throw ArgumentError("query must be present exactly for csat/tcsat/ocsat");
    if (!kind_has_abox(kind) &&
        (!ontology.concept_assertions.empty() || !ontology.role_assertions.empty()))
        throw ArgumentError("ABox assertions only allowed for osat/ocsat");
    if (kind == ProblemKind::CSAT && !ontology.tbox.empty())
        throw ArgumentError("csat takes no TBox");
    std::function<void(const CPtr&)> check = [&](const CPtr& c) {
        if (c->kind == Concept::Kind::Apply) {
            if (!operators.has(c->name))
                throw ArgumentError("undeclared operator '" + c->name + "'");
            if (operators.table(c->name) != c->table)
                throw ArgumentError("operator '" + c->name + "' used with a foreign table");
        }
    };
    for (const auto& ax : ontology.tbox) {
        for_each_subconcept(ax.lhs, check);
        for_each_subconcept(ax.rhs, check);
    }
    for (const auto& [c, ind] : ontology.concept_assertions)
        for_each_subconcept(c, check);
    if (query)
        for_each_subconcept(query, check);
}

bool ProblemInstance::operator==(const ProblemInstance& o) const {
    if (kind != o.kind || !(operators == o.operators))
        return false;
    auto keys_eq = [](const CPtr& a, const CPtr& b) {
        if (!a || !b)
            return a == b;
        return a->key() == b->key();
    };
    if (ontology.tbox.size() != o.ontology.tbox.size())
        return false;
    for (size_t i = 0; i < ontology.tbox.size(); ++i)
        if (!keys_eq(ontology.tbox[i].lhs, o.ontology.tbox[i].lhs) ||
            !keys_eq(ontology.tbox[i].rhs, o.ontology.tbox[i].rhs))
            return false;
    if (ontology.concept_assertions.size() != o.ontology.concept_assertions.size())
        return false;
    for (size_t i = 0; i < ontology.concept_assertions.size(); ++i)
        if (!keys_eq(ontology.concept_assertions[i].first,
                     o.ontology.concept_assertions[i].first) ||
            ontology.concept_assertions[i].second != o.ontology.concept_assertions[i].second)
            return false;
    if (ontology.role_assertions.size() != o.ontology.role_assertions.size())
        return false;
    for (size_t i = 0; i < ontology.role_assertions.size(); ++i) {
        const auto& x = ontology.role_assertions[i];
        const auto& y = o.ontology.role_assertions[i];
        if (x.role != y.role || x.from != y.from || x.to != y.to)
            return false;
    }
    return keys_eq(query, o.query);
}

std::string Interpretation::to_string() const {
    std::ostringstream os;
    os << "domain " << domain_size << "\n";
    for (const auto& [name, mask] : concept_ext) {
        os << "concept " << name << " {";
        bool first = true;
        for (int i = 0; i < domain_size; ++i)
            if ((mask >> i) & 1) {
                if (!first) os << " ";
                os << i;
                first = false;
            }
        os << "}\n";
    }
    for (const auto& [name, pairs] : role_ext) {
        os << "role " << name << " {";
        bool first = true;
        for (const auto& [a, b] : pairs) {
            if (!first) os << " ";
            os << "(" << a << "," << b << ")";
            first = false;
        }
        os << "}\n";
    }
    for (const auto& [name, e] : individuals)
        os << "individual " << name << " = " << e << "\n";
    return os.str();
}

void for_each_subconcept(const CPtr& c, const std::function<void(const CPtr&)>& fn) {
    for (const auto& kid : c->children)
        for_each_subconcept(kid, fn);
    fn(c);
}

std::vector<CPtr> subconcept_closure(const ProblemInstance& inst) {
    std::vector<CPtr> out;
    std::set<std::string> seen;
    auto visit = [&](const CPtr& c) {
        for_each_subconcept(c, [&](const CPtr& s) {
            if (seen.insert(s->key()).second)
                out.push_back(s);
        });
    };
    for (const auto& ax : inst.ontology.tbox) {
        visit(ax.lhs);
        visit(ax.rhs);
    }
    for (const auto& [c, ind] : inst.ontology.concept_assertions)
        visit(c);
    if (inst.query)
        visit(inst.query);
    return out;
}

CPtr replace_subconcepts(const CPtr& c,
                         const std::map<std::string, CPtr>& replacement_by_key) {
    auto it = replacement_by_key.find(c->key());
    if (it != replacement_by_key.end())
        return it->second;
    if (c->children.empty())
        return c;
    std::vector<CPtr> kids;
    bool changed = false;
    for (const auto& kid : c->children) {
        CPtr nk = replace_subconcepts(kid, replacement_by_key);
        changed = changed || nk != kid;
        kids.push_back(std::move(nk));
    }
    if (!changed)
        return c;
    switch (c->kind) {
    case Concept::Kind::Apply:
        return apply(c->name, c->table, std::move(kids));
    case Concept::Kind::Exists:
        return exists(c->name, kids[0]);
    case Concept::Kind::Forall:
        return forall(c->name, kids[0]);
    default:
        return c;
    }
}

} // namespace sublogic
