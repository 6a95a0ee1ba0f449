#include "sublogic/generators.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "sublogic/errors.hpp"

namespace sublogic {

namespace {

NamedOperator op_and() { return {"and", tbl::and2()}; }
NamedOperator op_top() { return {"top", tbl::top0()}; }
NamedOperator op_bot() { return {"bot", tbl::bot0()}; }
NamedOperator op_xor() { return {"xor", tbl::xor2()}; }

std::string node_atom(int v) { return "n" + std::to_string(v); }

CPtr fold_and(const NamedOperator& andop, const std::vector<CPtr>& parts) {
    CPtr acc = parts.at(0);
    for (size_t i = 1; i < parts.size(); ++i)
        acc = apply(andop, {acc, parts[i]});
    return acc;
}

CPtr fold_xor(const NamedOperator& xorop, const std::vector<CPtr>& parts) {
    CPtr acc = parts.at(0);
    for (size_t i = 1; i < parts.size(); ++i)
        acc = apply(xorop, {acc, parts[i]});
    return acc;
}

} // namespace

ProblemInstance gen_gap(const Digraph& g, int s, int t) {
    if (s < 0 || s >= g.nodes || t < 0 || t >= g.nodes)
        throw ArgumentError("gen_gap: s and t must be nodes");
    ProblemInstance inst;
    inst.kind = ProblemKind::TSAT;
    inst.operators.add(op_top());
    inst.operators.add(op_bot());
    for (const auto& [u, v] : g.edges)
        inst.ontology.tbox.push_back({atom(node_atom(u)), atom(node_atom(v))});
    inst.ontology.tbox.push_back({apply(op_top(), {}), atom(node_atom(s))});
    inst.ontology.tbox.push_back({atom(node_atom(t)), apply(op_bot(), {})});
    inst.validate();
    return inst;
}

bool gap_reachable(const Digraph& g, int s, int t) {
    std::vector<char> seen(g.nodes, 0);
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (v == t)
            return true;
        for (const auto& [a, b] : g.edges)
            if (a == v && !seen[b]) {
                seen[b] = 1;
                q.push_back(b);
            }
    }
    return s == t;
}

ProblemInstance gen_hgap(const Hypergraph& h, const std::vector<int>& sources, int t) {
    if (t < 0 || t >= h.nodes)
        throw ArgumentError("gen_hgap: t must be a node");
    for (const auto& e : h.edges)
        if (e.src.empty() || e.src.size() > 2)
            throw ArgumentError("gen_hgap: hyperedges carry one or two source nodes");
    ProblemInstance inst;
    inst.kind = ProblemKind::TSAT;
    NamedOperator andop = op_and();
    inst.operators.add(andop);
    inst.operators.add(op_top());
    inst.operators.add(op_bot());
    for (const auto& e : h.edges) {
        std::vector<CPtr> srcs;
        for (int u : e.src)
            srcs.push_back(atom(node_atom(u)));
        inst.ontology.tbox.push_back({fold_and(andop, srcs), atom(node_atom(e.dst))});
    }
    std::vector<CPtr> start;
    for (int u : sources)
        start.push_back(atom(node_atom(u)));
    start.push_back(atom("tprime"));
    inst.ontology.tbox.push_back({apply(op_top(), {}), fold_and(andop, start)});
    inst.ontology.tbox.push_back(
        {apply(andop, {atom(node_atom(t)), atom("tprime")}), apply(op_bot(), {})});
    inst.validate();
    return inst;
}

bool hgap_reachable(const Hypergraph& h, const std::vector<int>& sources, int t) {
    std::vector<char> marked(h.nodes, 0);
    for (int s : sources)
        marked[s] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : h.edges) {
            if (marked[e.dst])
                continue;
            bool all = true;
            for (int u : e.src)
                all = all && marked[u];
            if (all) {
                marked[e.dst] = 1;
                changed = true;
            }
        }
    }
    return marked[t];
}

ProblemInstance gen_one_in_three(const std::vector<std::array<Lit3, 3>>& clauses) {
    if (clauses.empty())
        throw ArgumentError("gen_one_in_three: need at least one clause");
    ProblemInstance inst;
    inst.kind = ProblemKind::TSAT;
    NamedOperator xorop = op_xor();
    NamedOperator topop = op_top();
    inst.operators.add(xorop);
    inst.operators.add(topop);
    CPtr top = apply(topop, {});

    auto lit_atom = [](const Lit3& l) { return atom(l.negated ? l.var + "'" : l.var); };

    std::set<std::string> vars;
    for (size_t i = 0; i < clauses.size(); ++i) {
        const auto& cl = clauses[i];
        std::string si = "_s" + std::to_string(i + 1);
        CPtr f1 = lit_atom(cl[0]), f2 = lit_atom(cl[1]), f3 = lit_atom(cl[2]);
        for (const auto& l : cl)
            vars.insert(l.var);
        // top <= f1 xor f2 xor f3 xor s_i xor top
        inst.ontology.tbox.push_back(
            {top, fold_xor(xorop, {f1, f2, f3, atom(si), top})});
        // top <= f1 xor f2 xor f3
        inst.ontology.tbox.push_back({top, fold_xor(xorop, {f1, f2, f3})});
        // s_i_j <= pairwise xor
        inst.ontology.tbox.push_back({atom(si + "_1"), fold_xor(xorop, {f1, f2})});
        inst.ontology.tbox.push_back({atom(si + "_2"), fold_xor(xorop, {f1, f3})});
        inst.ontology.tbox.push_back({atom(si + "_3"), fold_xor(xorop, {f2, f3})});
        // s_i <= s_i_1 xor s_i_2 xor s_i_3
        inst.ontology.tbox.push_back(
            {atom(si), fold_xor(xorop, {atom(si + "_1"), atom(si + "_2"), atom(si + "_3")})});
    }
    for (const auto& v : vars)
        inst.ontology.tbox.push_back({top, fold_xor(xorop, {atom(v), atom(v + "'")})});
    inst.validate();
    return inst;
}

bool one_in_three_satisfiable(const std::vector<std::array<Lit3, 3>>& clauses) {
    std::vector<std::string> vars;
    for (const auto& cl : clauses)
        for (const auto& l : cl)
            if (std::find(vars.begin(), vars.end(), l.var) == vars.end())
                vars.push_back(l.var);
    std::sort(vars.begin(), vars.end());
    if (vars.size() > 24)
        throw LimitError("one_in_three_satisfiable: too many variables to enumerate");
    for (uint64_t mask = 0; mask < (uint64_t{1} << vars.size()); ++mask) {
        bool all_ok = true;
        for (const auto& cl : clauses) {
            int count = 0;
            for (const auto& l : cl) {
                size_t vi = std::lower_bound(vars.begin(), vars.end(), l.var) - vars.begin();
                bool val = (mask >> vi) & 1u;
                if (val != l.negated)
                    ++count;
            }
            if (count != 1) {
                all_ok = false;
                break;
            }
        }
        if (all_ok)
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    // Modulo keeps the stream identical across platforms.
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(eng_() % n); }
    bool chance(int percent) { return below(100) < percent; }

  private:
    std::mt19937_64 eng_;
};

struct ConceptGen {
    Rng& rng;
    const std::vector<NamedOperator>& ops; // arity >= 1 operators
    const std::vector<NamedOperator>& consts;
    const std::vector<std::string>& atoms;
    const std::vector<std::string>& roles;
    QuantifierSet q;

    CPtr gen(int depth) {
        if (depth > 0) {
            int pick = rng.below(100);
            bool can_quant = (q.exists || q.forall) && !roles.empty();
            if (can_quant && pick < 25) {
                std::string role = roles[rng.below(static_cast<int>(roles.size()))];
                bool use_exists = q.exists && (!q.forall || rng.chance(50));
                CPtr kid = gen(depth - 1);
                return use_exists ? exists(role, kid) : forall(role, kid);
            }
            if (!ops.empty() && pick < 70) {
                const NamedOperator& op = ops[rng.below(static_cast<int>(ops.size()))];
                std::vector<CPtr> kids;
                for (int i = 0; i < op.table.arity(); ++i)
                    kids.push_back(gen(depth - 1));
                return apply(op, std::move(kids));
            }
        }
        if (!consts.empty() && rng.chance(15))
            return apply(consts[rng.below(static_cast<int>(consts.size()))], {});
        return atom(atoms[rng.below(static_cast<int>(atoms.size()))]);
    }
};

} // namespace

ProblemInstance gen_random(const RandomProfile& profile, uint64_t seed,
                           const RandomParams& params) {
    Rng rng(seed);
    ProblemInstance inst;
    inst.kind = profile.kind;

    std::vector<NamedOperator> ops, consts;
    for (const auto& op : clone_base(profile.base)) {
        inst.operators.add(op);
        if (op.table.arity() == 0)
            consts.push_back(op);
        else
            ops.push_back(op);
    }
    std::vector<std::string> atoms;
    for (int i = 0; i < std::max(1, params.atoms); ++i)
        atoms.push_back("A" + std::to_string(i + 1));
    std::vector<std::string> roles;
    for (int i = 0; i < std::max(1, params.roles); ++i)
        roles.push_back("r" + std::to_string(i + 1));

    ConceptGen gen{rng, ops, consts, atoms, roles, profile.q};
    if (profile.kind != ProblemKind::CSAT) {
        int n_axioms = 1 + rng.below(std::max(1, params.axioms));
        for (int i = 0; i < n_axioms; ++i)
            inst.ontology.tbox.push_back({gen.gen(params.depth), gen.gen(params.depth)});
    }

    if (kind_has_abox(profile.kind)) {
        int n_inds = 1 + rng.below(std::max(1, params.individuals));
        std::vector<std::string> inds;
        for (int i = 0; i < n_inds; ++i)
            inds.push_back("a" + std::to_string(i + 1));
        int n_assert = 1 + rng.below(std::max(1, params.assertions));
        for (int i = 0; i < n_assert; ++i)
            inst.ontology.concept_assertions.push_back(
                {gen.gen(params.depth), inds[rng.below(n_inds)]});
        if (!profile.q.empty() || rng.chance(50)) {
            int n_roles = rng.below(std::max(1, params.assertions) + 1);
            for (int i = 0; i < n_roles; ++i)
                inst.ontology.role_assertions.push_back(
                    {roles[rng.below(static_cast<int>(roles.size()))],
                     inds[rng.below(n_inds)], inds[rng.below(n_inds)]});
        }
    }
    if (kind_has_query(profile.kind))
        inst.query = gen.gen(params.depth);
    inst.validate();
    return inst;
}

Digraph random_digraph(int nodes, int edges, uint64_t seed) {
    Rng rng(seed);
    Digraph g;
    g.nodes = nodes;
    for (int i = 0; i < edges; ++i)
        g.edges.push_back({rng.below(nodes), rng.below(nodes)});
    return g;
}

Hypergraph random_hypergraph(int nodes, int edges, uint64_t seed) {
    Rng rng(seed);
    Hypergraph h;
    h.nodes = nodes;
    for (int i = 0; i < edges; ++i) {
        Hypergraph::HEdge e;
        int k = 1 + rng.below(2);
        for (int j = 0; j < k; ++j)
            e.src.push_back(rng.below(nodes));
        e.dst = rng.below(nodes);
        h.edges.push_back(e);
    }
    return h;
}

std::vector<std::array<Lit3, 3>> random_one_in_three(int vars, int clauses, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::array<Lit3, 3>> out;
    for (int i = 0; i < clauses; ++i) {
        std::array<Lit3, 3> cl;
        for (int j = 0; j < 3; ++j)
            cl[j] = {"v" + std::to_string(rng.below(vars) + 1), rng.chance(50)};
        out.push_back(cl);
    }
    return out;
}

} // namespace sublogic
