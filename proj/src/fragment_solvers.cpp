#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>

#include "sublogic/clones.hpp"
#include "sublogic/errors.hpp"
#include "sublogic/semantics.hpp"
#include "sublogic/solvers.hpp"
#include "sublogic/transforms.hpp"

namespace sublogic {

// ---------------------------------------------------------------------------
// Type elimination

namespace {

struct RoleNodes {
    std::vector<std::pair<int, int>> exists; // (node pos, child pos)
    std::vector<std::pair<int, int>> forall;
};

} // namespace

SolveResult solve_typeelim(const ProblemInstance& inst, const Limits& limits) {
    SolveResult res;
    res.method = "typeelim";

    std::vector<CPtr> closure = subconcept_closure(inst);
    const int n = static_cast<int>(closure.size());
    if (n > limits.closure_limit || n > 31)
        throw LimitError("solve_typeelim: closure size " + std::to_string(n) +
                         " above limit " + std::to_string(std::min(limits.closure_limit, 31)));
    std::map<std::string, int> pos_of;
    for (int i = 0; i < n; ++i)
        pos_of[closure[i]->key()] = i;

    std::vector<int> free_pos;
    for (int i = 0; i < n; ++i)
        if (closure[i]->kind != Concept::Kind::Apply)
            free_pos.push_back(i);
    if (free_pos.size() > 24)
        throw LimitError("solve_typeelim: " + std::to_string(free_pos.size()) +
                         " free closure positions exceed the enumeration threshold 24");

    std::map<std::string, RoleNodes> role_nodes;
    for (int i = 0; i < n; ++i) {
        if (closure[i]->kind == Concept::Kind::Exists)
            role_nodes[closure[i]->name].exists.push_back(
                {i, pos_of[closure[i]->children[0]->key()]});
        else if (closure[i]->kind == Concept::Kind::Forall)
            role_nodes[closure[i]->name].forall.push_back(
                {i, pos_of[closure[i]->children[0]->key()]});
    }

    std::vector<std::pair<int, int>> axiom_pos;
    for (const auto& ax : inst.ontology.tbox)
        axiom_pos.push_back({pos_of[ax.lhs->key()], pos_of[ax.rhs->key()]});

    // Boolean-coherent, axiom-respecting candidate types.
    std::vector<uint32_t> types;
    const uint64_t combos = uint64_t{1} << free_pos.size();
    for (uint64_t code = 0; code < combos; ++code) {
        uint32_t bits = 0;
        for (size_t j = 0; j < free_pos.size(); ++j)
            if ((code >> j) & 1u)
                bits |= uint32_t{1} << free_pos[j];
        for (int i = 0; i < n; ++i) {
            if (closure[i]->kind != Concept::Kind::Apply)
                continue;
            int idx = 0;
            for (const auto& k : closure[i]->children)
                idx = (idx << 1) | static_cast<int>((bits >> pos_of[k->key()]) & 1u);
            if (closure[i]->table.row(idx))
                bits |= uint32_t{1} << i;
        }
        bool ok = true;
        for (const auto& [l, r] : axiom_pos)
            if (((bits >> l) & 1u) && !((bits >> r) & 1u)) {
                ok = false;
                break;
            }
        if (ok)
            types.push_back(bits);
    }
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    res.stats.types_generated = static_cast<int64_t>(types.size());
    const int T = static_cast<int>(types.size());

    // Role compatibility masks per type: successors must carry every forced
    // forall filler and avoid fillers of absent exists nodes.
    struct Obligation {
        int role_idx;
        uint32_t child_bit;
        bool want;
    };
    std::vector<std::string> roles;
    for (const auto& [r, rn] : role_nodes)
        roles.push_back(r);
    const int R = static_cast<int>(roles.size());
    std::vector<uint32_t> req(static_cast<size_t>(T) * std::max(R, 1), 0);
    std::vector<uint32_t> forbid(static_cast<size_t>(T) * std::max(R, 1), 0);
    std::vector<std::vector<Obligation>> obligations(T);
    for (int ti = 0; ti < T; ++ti) {
        for (int ri = 0; ri < R; ++ri) {
            const RoleNodes& rn = role_nodes[roles[ri]];
            uint32_t rq = 0, fb = 0;
            for (const auto& [p, cp] : rn.forall) {
                if ((types[ti] >> p) & 1u)
                    rq |= uint32_t{1} << cp;
                else
                    obligations[ti].push_back({ri, uint32_t{1} << cp, false});
            }
            for (const auto& [p, cp] : rn.exists) {
                if ((types[ti] >> p) & 1u)
                    obligations[ti].push_back({ri, uint32_t{1} << cp, true});
                else
                    fb |= uint32_t{1} << cp;
            }
            req[ti * R + ri] = rq;
            forbid[ti * R + ri] = fb;
        }
    }
    auto compatible = [&](int a, int b, int ri) {
        uint32_t rq = req[a * R + ri], fb = forbid[a * R + ri];
        return (types[b] & rq) == rq && (types[b] & fb) == 0;
    };

    // Iterated elimination with cached witnesses.
    std::vector<char> alive(T, 1);
    std::vector<std::vector<int>> witness_cache(T);
    for (int ti = 0; ti < T; ++ti)
        witness_cache[ti].assign(obligations[ti].size(), -1);
    auto find_witness = [&](int ti, size_t oi) -> int {
        const Obligation& ob = obligations[ti][oi];
        for (int tj = 0; tj < T; ++tj) {
            if (!alive[tj] || !compatible(ti, tj, ob.role_idx))
                continue;
            bool has = (types[tj] & ob.child_bit) != 0;
            if (has == ob.want)
                return tj;
        }
        return -1;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int ti = 0; ti < T; ++ti) {
            if (!alive[ti])
                continue;
            for (size_t oi = 0; oi < obligations[ti].size(); ++oi) {
                int w = witness_cache[ti][oi];
                if (w >= 0 && alive[w])
                    continue;
                w = find_witness(ti, oi);
                witness_cache[ti][oi] = w;
                if (w < 0) {
                    alive[ti] = 0;
                    res.stats.rules_fired++;
                    changed = true;
                    break;
                }
            }
        }
    }

    std::vector<int> alive_list;
    for (int ti = 0; ti < T; ++ti)
        if (alive[ti])
            alive_list.push_back(ti);
    if (alive_list.empty()) {
        res.status = Status::UNSAT;
        res.witness.push_back("all candidate types eliminated");
        return res;
    }

    int query_type = -1;
    if (inst.query) {
        uint32_t qbit = uint32_t{1} << pos_of[inst.query->key()];
        for (int ti : alive_list)
            if (types[ti] & qbit) {
                query_type = ti;
                break;
            }
        if (query_type < 0) {
            res.status = Status::UNSAT;
            res.witness.push_back("no surviving type contains the query concept");
            return res;
        }
    }

    // ABox: backtracking assignment of surviving types to individuals.
    std::vector<std::string> inds;
    {
        Signature sig = signature(inst);
        inds.assign(sig.individuals.begin(), sig.individuals.end());
    }
    std::map<std::string, uint32_t> asserted_bits;
    for (const auto& [c, ind] : inst.ontology.concept_assertions)
        asserted_bits[ind] |= uint32_t{1} << pos_of[c->key()];
    std::map<std::string, int> ind_index;
    for (size_t i = 0; i < inds.size(); ++i)
        ind_index[inds[i]] = static_cast<int>(i);
    std::map<std::string, int> role_index;
    for (int ri = 0; ri < R; ++ri)
        role_index[roles[ri]] = ri;

    std::vector<int> assign(inds.size(), -1);
    std::function<bool(size_t)> assign_rec = [&](size_t i) -> bool {
        if (i == inds.size())
            return true;
        uint32_t need = asserted_bits.count(inds[i]) ? asserted_bits[inds[i]] : 0;
        for (int ti : alive_list) {
            if ((types[ti] & need) != need)
                continue;
            bool ok = true;
            for (const auto& ra : inst.ontology.role_assertions) {
                auto rit = role_index.find(ra.role);
                if (rit == role_index.end())
                    continue; // role unconstrained by the closure
                int fi = ind_index[ra.from], bi = ind_index[ra.to];
                int ft = fi == static_cast<int>(i) ? ti : assign[fi];
                int bt = bi == static_cast<int>(i) ? ti : assign[bi];
                if (ft < 0 || bt < 0)
                    continue;
                if (!compatible(ft, bt, rit->second)) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            assign[i] = ti;
            res.stats.decisions++;
            if (assign_rec(i + 1))
                return true;
            assign[i] = -1;
        }
        return false;
    };
    if (!assign_rec(0)) {
        res.status = Status::UNSAT;
        res.witness.push_back("no assignment of surviving types to the individuals");
        return res;
    }

    res.status = Status::SAT;

    // Canonical model: root types closed under first-found witnesses;
    // role edges are all compatible pairs, so the type bits are realized
    // exactly.
    std::vector<int> included;
    std::vector<char> in_model(T, 0);
    std::deque<int> work;
    auto push = [&](int ti) {
        if (!in_model[ti]) {
            in_model[ti] = 1;
            included.push_back(ti);
            work.push_back(ti);
        }
    };
    if (query_type >= 0)
        push(query_type);
    for (int ti : assign)
        push(ti);
    if (included.empty())
        push(alive_list[0]);
    while (!work.empty()) {
        int ti = work.front();
        work.pop_front();
        for (size_t oi = 0; oi < obligations[ti].size(); ++oi) {
            int w = witness_cache[ti][oi];
            if (w < 0 || !alive[w])
                w = find_witness(ti, oi);
            if (w >= 0)
                push(w);
        }
    }
    std::sort(included.begin(), included.end());

    Interpretation model;
    model.domain_size = static_cast<int>(inds.size() + included.size());
    std::map<int, int> elem_of_type;
    for (size_t j = 0; j < included.size(); ++j)
        elem_of_type[included[j]] = static_cast<int>(inds.size() + j);
    for (size_t i = 0; i < inds.size(); ++i)
        model.individuals[inds[i]] = static_cast<int>(i);

    auto type_at = [&](int elem) {
        return elem < static_cast<int>(inds.size()) ? assign[elem]
                                                    : included[elem - inds.size()];
    };
    for (int i = 0; i < n; ++i) {
        if (closure[i]->kind != Concept::Kind::Atomic)
            continue;
        uint64_t mask = 0;
        for (int e = 0; e < model.domain_size; ++e)
            if ((types[type_at(e)] >> i) & 1u)
                mask |= uint64_t{1} << e;
        model.concept_ext[closure[i]->name] = mask;
    }
    for (int ri = 0; ri < R; ++ri) {
        auto& pairs = model.role_ext[roles[ri]];
        for (int e = 0; e < model.domain_size; ++e)
            for (int tj : included)
                if (compatible(type_at(e), tj, ri))
                    pairs.insert({e, elem_of_type[tj]});
    }
    for (const auto& ra : inst.ontology.role_assertions)
        model.role_ext[ra.role].insert(
            {model.individuals[ra.from], model.individuals[ra.to]});
    res.model = std::move(model);
    return res;
}

// ---------------------------------------------------------------------------
// NL implication-graph solver

namespace {

struct Literal {
    enum class Kind { Top, Bot, Pos, Neg } kind;
    std::string atom;
};

Literal flip(const Literal& l) {
    switch (l.kind) {
    case Literal::Kind::Top: return {Literal::Kind::Bot, {}};
    case Literal::Kind::Bot: return {Literal::Kind::Top, {}};
    case Literal::Kind::Pos: return {Literal::Kind::Neg, l.atom};
    case Literal::Kind::Neg: return {Literal::Kind::Pos, l.atom};
    }
    return l;
}

Literal to_literal(const CPtr& c) {
    if (c->kind == Concept::Kind::Atomic)
        return {Literal::Kind::Pos, c->name};
    if (c->kind == Concept::Kind::Apply) {
        if (c->table.is_constant() && c->children.empty())
            return {c->table.constant_value() ? Literal::Kind::Top : Literal::Kind::Bot, {}};
        int coord = 0;
        if (c->table.is_negation_of(&coord))
            return flip(to_literal(c->children[coord]));
    }
    throw FragmentError("solve_nl_graph: concept '" + c->key() + "' is not a literal");
}

// Tarjan SCC, iterative.
std::vector<int> scc_of(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack_flag(n, 0);
    std::vector<int> stk;
    int counter = 0, comps = 0;
    struct Frame {
        int v;
        size_t child;
    };
    for (int start = 0; start < n; ++start) {
        if (idx[start] >= 0)
            continue;
        std::vector<Frame> frames{{start, 0}};
        idx[start] = low[start] = counter++;
        stk.push_back(start);
        stack_flag[start] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[f.v].size()) {
                int w = adj[f.v][f.child++];
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    stack_flag[w] = 1;
                    frames.push_back({w, 0});
                } else if (stack_flag[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                if (low[f.v] == idx[f.v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        stack_flag[w] = 0;
                        comp[w] = comps;
                        if (w == f.v)
                            break;
                    }
                    comps++;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    return comp;
}

struct LiteralGraph {
    std::vector<std::string> atoms;
    std::map<std::string, int> atom_id;
    std::vector<std::vector<int>> adj;

    int node(const Literal& l) {
        switch (l.kind) {
        case Literal::Kind::Top: return 2 * static_cast<int>(atoms.size());
        case Literal::Kind::Bot: return 2 * static_cast<int>(atoms.size()) + 1;
        case Literal::Kind::Pos: return 2 * atom_id.at(l.atom);
        case Literal::Kind::Neg: return 2 * atom_id.at(l.atom) + 1;
        }
        return 0;
    }
    std::string node_name(int v) const {
        int na = static_cast<int>(atoms.size());
        if (v == 2 * na) return "top";
        if (v == 2 * na + 1) return "bot";
        return (v % 2 ? "not " : "") + atoms[v / 2];
    }

    // Returns a contradictory cycle as node names, empty when satisfiable.
    std::vector<std::string> contradictory_cycle() const {
        auto comp = scc_of(adj);
        int na = static_cast<int>(atoms.size());
        int bad = -1;
        for (int a = 0; a <= na; ++a) {
            int v = 2 * a;
            if (comp[v] == comp[v + 1]) {
                bad = v;
                break;
            }
        }
        if (bad < 0)
            return {};
        // Path bad -> bad+1 -> bad inside the component.
        auto path = [&](int from, int to) {
            std::vector<int> prev(adj.size(), -1);
            std::deque<int> q{from};
            std::vector<char> seen(adj.size(), 0);
            seen[from] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                if (v == to)
                    break;
                for (int w : adj[v])
                    if (!seen[w]) {
                        seen[w] = 1;
                        prev[w] = v;
                        q.push_back(w);
                    }
            }
            std::vector<int> out;
            for (int v = to; v >= 0; v = prev[v]) {
                out.push_back(v);
                if (v == from)
                    break;
            }
            std::reverse(out.begin(), out.end());
            return out;
        };
        std::vector<std::string> names;
        for (int v : path(bad, bad + 1))
            names.push_back(node_name(v));
        auto back = path(bad + 1, bad);
        for (size_t i = 1; i < back.size(); ++i)
            names.push_back(node_name(back[i]));
        return names;
    }
};

LiteralGraph build_literal_graph(const std::vector<std::pair<Literal, Literal>>& axioms) {
    LiteralGraph g;
    for (const auto& [l, r] : axioms)
        for (const Literal* lit : {&l, &r})
            if (lit->kind == Literal::Kind::Pos || lit->kind == Literal::Kind::Neg)
                if (g.atom_id.emplace(lit->atom, static_cast<int>(g.atoms.size())).second)
                    g.atoms.push_back(lit->atom);
    int na = static_cast<int>(g.atoms.size());
    g.adj.assign(2 * na + 2, {});
    auto edge = [&](int a, int b) { g.adj[a].push_back(b); };
    for (const auto& [l, r] : axioms) {
        edge(g.node(l), g.node(r));
        edge(g.node(flip(r)), g.node(flip(l)));
    }
    int vt = 2 * na, vb = 2 * na + 1;
    for (int a = 0; a < na; ++a) {
        edge(vb, 2 * a);
        edge(2 * a, vt);
    }
    edge(vb, vt);
    return g;
}

} // namespace

SolveResult solve_nl_graph(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    if (sig.uses_exists || sig.uses_forall)
        throw FragmentError("solve_nl_graph: instance uses quantifiers");
    for (const auto& [name, t] : sig.used_operators.entries())
        if (!clone_member(t, Clone::N))
            throw FragmentError("solve_nl_graph: operator '" + name + "' outside N");

    ProblemInstance std_inst = standardize_operators(inst);
    std::vector<std::pair<Literal, Literal>> tbox;
    for (const auto& ax : std_inst.ontology.tbox)
        tbox.push_back({to_literal(ax.lhs), to_literal(ax.rhs)});

    SolveResult res;
    res.method = "nlgraph";

    auto check = [&](std::vector<std::pair<Literal, Literal>> axioms,
                     const std::string& what) -> bool {
        LiteralGraph g = build_literal_graph(axioms);
        res.stats.types_generated += static_cast<int64_t>(g.adj.size());
        auto cyc = g.contradictory_cycle();
        if (cyc.empty())
            return true;
        res.status = Status::UNSAT;
        res.witness.push_back("contradictory cycle (" + what + "):");
        std::string line;
        for (size_t i = 0; i < cyc.size(); ++i)
            line += (i ? " -> " : "") + cyc[i];
        res.witness.push_back(line);
        return false;
    };

    // Plain TBox satisfiability.
    if (!check(tbox, "tbox"))
        return res;
    // Query handled as top <= C on a single individual.
    if (std_inst.query) {
        auto with_query = tbox;
        with_query.push_back({{Literal::Kind::Top, {}}, to_literal(std_inst.query)});
        if (!check(with_query, "tbox + query"))
            return res;
    }
    // Ontologies: per-individual TBoxes; role assertions cannot interact.
    std::map<std::string, std::vector<Literal>> asserted;
    for (const auto& [c, ind] : std_inst.ontology.concept_assertions)
        asserted[ind].push_back(to_literal(c));
    for (const auto& [ind, lits] : asserted) {
        auto with_ind = tbox;
        for (const auto& l : lits)
            with_ind.push_back({{Literal::Kind::Top, {}}, l});
        if (!check(with_ind, "individual " + ind))
            return res;
    }
    res.status = Status::SAT;
    return res;
}

// ---------------------------------------------------------------------------
// Shared normal-form extraction for the saturation solvers

namespace {

struct NFView {
    std::vector<std::string> names; // id -> display name
    std::map<std::string, int> ids;
    int top_id = -1, bot_id = -1;
    std::vector<std::pair<int, int>> simple;          // a <= b
    std::vector<std::array<int, 3>> conj;             // a and b <= c
    struct RoleAxioms {
        std::vector<std::pair<int, int>> forall_lhs;  // all r.a <= b
        std::vector<std::pair<int, int>> forall_rhs;  // a <= all r.b
        std::vector<std::pair<int, int>> exists_lhs;  // some r.a <= b
        std::vector<std::pair<int, int>> exists_rhs;  // a <= some r.b
    };
    std::map<std::string, RoleAxioms> roles;

    int intern(const CPtr& c) {
        std::string key;
        if (c->kind == Concept::Kind::Atomic)
            key = c->name;
        else if (c->kind == Concept::Kind::Apply && c->table.is_constant())
            key = c->table.constant_value() ? "top" : "bot";
        else
            throw FragmentError("normal form: expected atom or constant, got " + c->key());
        auto [it, fresh] = ids.emplace(key, static_cast<int>(names.size()));
        if (fresh)
            names.push_back(key);
        if (key == "top")
            top_id = it->second;
        if (key == "bot")
            bot_id = it->second;
        return it->second;
    }
};

NFView extract_nf(const std::vector<Axiom>& tbox) {
    NFView nf;
    nf.intern(apply("top", tbl::top0(), {}));
    nf.intern(apply("bot", tbl::bot0(), {}));
    for (const auto& ax : tbox) {
        const CPtr& l = ax.lhs;
        const CPtr& r = ax.rhs;
        if (l->kind == Concept::Kind::Apply && l->table == tbl::and2()) {
            nf.conj.push_back({nf.intern(l->children[0]), nf.intern(l->children[1]),
                               nf.intern(r)});
        } else if (l->kind == Concept::Kind::Forall) {
            nf.roles[l->name].forall_lhs.push_back(
                {nf.intern(l->children[0]), nf.intern(r)});
        } else if (l->kind == Concept::Kind::Exists) {
            nf.roles[l->name].exists_lhs.push_back(
                {nf.intern(l->children[0]), nf.intern(r)});
        } else if (r->kind == Concept::Kind::Forall) {
            nf.roles[r->name].forall_rhs.push_back(
                {nf.intern(l), nf.intern(r->children[0])});
        } else if (r->kind == Concept::Kind::Exists) {
            nf.roles[r->name].exists_rhs.push_back(
                {nf.intern(l), nf.intern(r->children[0])});
        } else {
            nf.simple.push_back({nf.intern(l), nf.intern(r)});
        }
    }
    return nf;
}

} // namespace

// ---------------------------------------------------------------------------
// TSAT forall/E saturation

namespace {

// Implication sets per seed. A seed is the set of atoms forced onto a fresh
// element; role successors get the seed of their forced fillers, with the
// no-successor branch firing every forall-on-the-left axiom when the
// successor seed is inconsistent.
class ForallSaturation {
  public:
    explicit ForallSaturation(const NFView& nf) : nf_(nf) {}

    struct Entry {
        std::set<int> atoms;
        std::vector<std::string> log; // rule firings in derivation order
    };

    int seed(std::set<int> init) {
        init.insert(nf_.top_id);
        std::string key;
        for (int a : init)
            key += std::to_string(a) + ",";
        auto [it, fresh] = seed_ids_.emplace(key, static_cast<int>(entries_.size()));
        if (fresh) {
            Entry e;
            e.atoms = std::move(init);
            entries_.push_back(std::move(e));
        }
        return it->second;
    }

    // Least fixed point over all seeds simultaneously.
    int64_t saturate() {
        int64_t fired = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t si = 0; si < entries_.size(); ++si) {
                if (step(static_cast<int>(si))) {
                    changed = true;
                    ++fired;
                }
                if (entries_.size() > 4096)
                    throw LimitError("forall saturation: seed explosion");
            }
        }
        return fired;
    }

    const Entry& entry(int s) const { return entries_[s]; }
    const NFView& nf() const { return nf_; }

  private:
    bool add(int s, int a, std::string why) {
        if (entries_[s].atoms.insert(a).second) {
            entries_[s].log.push_back(nf_.names[a] + " via " + why);
            return true;
        }
        return false;
    }

    bool step(int s) {
        bool changed = false;
        // IS1
        for (const auto& [a, b] : nf_.simple)
            if (entries_[s].atoms.count(a) && !entries_[s].atoms.count(b))
                changed |= add(s, b, "IS1: " + nf_.names[a] + " <= " + nf_.names[b]);
        // IS2
        for (const auto& [a, b, c] : nf_.conj)
            if (entries_[s].atoms.count(a) && entries_[s].atoms.count(b) &&
                !entries_[s].atoms.count(c))
                changed |= add(s, c, "IS2: " + nf_.names[a] + " and " + nf_.names[b] +
                                         " <= " + nf_.names[c]);
        // IS3 with the successor-seed reading: collect what is forced on all
        // r-successors, then fire the forall-on-the-left axioms accordingly.
        for (const auto& [role, ra] : nf_.roles) {
            std::set<int> forced;
            for (const auto& [a, b] : ra.forall_rhs)
                if (entries_[s].atoms.count(a))
                    forced.insert(b);
            int succ = seed(std::move(forced));
            bool dead_succ = entries_[succ].atoms.count(nf_.bot_id) != 0;
            for (const auto& [x, y] : ra.forall_lhs) {
                if (entries_[s].atoms.count(y))
                    continue;
                if (dead_succ) {
                    changed |= add(s, y,
                                   "IS3: no consistent " + role +
                                       "-successor exists, all " + role + ".* <= " +
                                       nf_.names[y] + " fires vacuously");
                } else if (entries_[succ].atoms.count(x)) {
                    changed |= add(s, y,
                                   "IS3: every " + role + "-successor satisfies " +
                                       nf_.names[x] + ", all " + role + "." +
                                       nf_.names[x] + " <= " + nf_.names[y]);
                }
            }
        }
        return changed;
    }

    const NFView& nf_;
    std::vector<Entry> entries_;
    std::map<std::string, int> seed_ids_;
};

} // namespace

SolveResult solve_saturation_forall(const ProblemInstance& inst) {
    if (inst.kind != ProblemKind::TSAT)
        throw FragmentError("solve_saturation_forall: kind must be tsat");
    Signature sig = signature(inst);
    if (sig.uses_exists)
        throw FragmentError("solve_saturation_forall: existential quantifier present");
    for (const auto& [name, t] : sig.used_operators.entries())
        if (!clone_member(t, Clone::E))
            throw FragmentError("solve_saturation_forall: operator '" + name +
                                "' outside E");

    TransformResult norm = normalize_nf(inst);
    NFView nf = extract_nf(norm.instance.ontology.tbox);
    for (const auto& [role, ra] : nf.roles)
        if (!ra.exists_lhs.empty() || !ra.exists_rhs.empty())
            throw FragmentError("solve_saturation_forall: existential shape after "
                                "normalization");

    SolveResult res;
    res.method = "saturation";
    ForallSaturation sat(nf);
    int root = sat.seed({});
    res.stats.rules_fired = sat.saturate();
    res.stats.types_generated = static_cast<int64_t>(nf.names.size());

    if (sat.entry(root).atoms.count(nf.bot_id)) {
        res.status = Status::UNSAT;
        res.witness.push_back("derivation at the generic element:");
        for (const auto& line : sat.entry(root).log)
            res.witness.push_back(line);
    } else {
        res.status = Status::SAT;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Exists/E completion

SolveResult solve_el_exists(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    if (sig.uses_forall)
        throw FragmentError("solve_el_exists: universal quantifier present");
    for (const auto& [name, t] : sig.used_operators.entries())
        if (!clone_member(t, Clone::E))
            throw FragmentError("solve_el_exists: operator '" + name + "' outside E");

    ProblemInstance std_inst = standardize_operators(inst);

    // Compile the ABox into fresh atoms and the query into a defined atom.
    std::map<std::string, std::string> nominal_atom;
    ProblemInstance work;
    work.kind = ProblemKind::TSAT;
    work.operators = std_inst.operators;
    work.ontology.tbox = std_inst.ontology.tbox;
    {
        std::set<std::string> taken = sig.atoms;
        auto fresh = [&taken](const std::string& base) {
            std::string name = base;
            for (int n = 2; taken.count(name); ++n)
                name = base + std::to_string(n);
            taken.insert(name);
            return name;
        };
        for (const auto& ind : sig.individuals)
            nominal_atom[ind] = fresh("_N_" + ind);
        for (const auto& [c, ind] : std_inst.ontology.concept_assertions)
            work.ontology.tbox.push_back({atom(nominal_atom[ind]), c});
        for (const auto& ra : std_inst.ontology.role_assertions)
            work.ontology.tbox.push_back(
                {atom(nominal_atom[ra.from]), exists(ra.role, atom(nominal_atom[ra.to]))});
        if (std_inst.query) {
            std::string q = fresh("_Q");
            work.ontology.tbox.push_back({atom(q), std_inst.query});
            work.query = nullptr;
            nominal_atom["__query"] = q;
        }
    }
    work.validate();

    TransformResult norm = normalize_nf(work);
    NFView nf = extract_nf(norm.instance.ontology.tbox);
    for (const auto& [role, ra] : nf.roles)
        if (!ra.forall_lhs.empty() || !ra.forall_rhs.empty())
            throw FragmentError("solve_el_exists: universal shape after normalization");

    SolveResult res;
    res.method = "el";
    const int N = static_cast<int>(nf.names.size());
    std::vector<std::set<int>> S(N);
    std::map<int, std::string> why; // (x*N+a) rationale, flattened
    std::map<std::string, std::set<std::pair<int, int>>> edges;
    for (int x = 0; x < N; ++x) {
        S[x].insert(x);
        S[x].insert(nf.top_id);
    }
    auto add = [&](int x, int a, const std::string& rule) {
        if (S[x].insert(a).second) {
            why[x * N + a] = rule;
            res.stats.rules_fired++;
            return true;
        }
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < N; ++x) {
            for (const auto& [a, b] : nf.simple)
                if (S[x].count(a) && !S[x].count(b))
                    changed |= add(x, b, "R1: " + nf.names[a] + " <= " + nf.names[b]);
            for (const auto& [a, b, c] : nf.conj)
                if (S[x].count(a) && S[x].count(b) && !S[x].count(c))
                    changed |= add(x, c, "R2: " + nf.names[a] + " and " + nf.names[b] +
                                             " <= " + nf.names[c]);
        }
        for (const auto& [role, ra] : nf.roles) {
            auto& e = edges[role];
            for (int x = 0; x < N; ++x)
                for (const auto& [a, d] : ra.exists_rhs)
                    if (S[x].count(a) && e.insert({x, d}).second) {
                        res.stats.rules_fired++;
                        changed = true;
                    }
            for (const auto& [x, d] : e) {
                for (const auto& [dp, target] : ra.exists_lhs)
                    if (S[d].count(dp) && !S[x].count(target))
                        changed |= add(x, target,
                                       "R4: edge to " + nf.names[d] + ", some " + role +
                                           "." + nf.names[dp] + " <= " + nf.names[target]);
                if (S[d].count(nf.bot_id) && !S[x].count(nf.bot_id))
                    changed |= add(x, nf.bot_id,
                                   "Rbot: " + role + "-successor " + nf.names[d] +
                                       " is inconsistent");
            }
        }
    }
    res.stats.types_generated = N;

    auto inconsistent = [&](int x) { return S[x].count(nf.bot_id) != 0; };
    std::vector<std::pair<std::string, int>> to_check;
    to_check.push_back({"the generic element", nf.top_id});
    for (const auto& [ind, a] : nominal_atom) {
        auto it = nf.ids.find(a);
        if (it != nf.ids.end())
            to_check.push_back({ind == "__query" ? "the query concept" : "individual " + ind,
                                it->second});
    }
    for (const auto& [what, id] : to_check) {
        if (inconsistent(id)) {
            res.status = Status::UNSAT;
            res.witness.push_back("bot reachable from " + what);
            auto it = why.find(id * N + nf.bot_id);
            if (it != why.end())
                res.witness.push_back(it->second);
            return res;
        }
    }
    res.status = Status::SAT;
    return res;
}

// ---------------------------------------------------------------------------
// Forall/V via dualization

SolveResult solve_forall_V(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    if (sig.uses_exists)
        throw FragmentError("solve_forall_V: existential quantifier present");
    for (const auto& [name, t] : sig.used_operators.entries())
        if (!clone_member(t, Clone::V))
            throw FragmentError("solve_forall_V: operator '" + name + "' outside V");

    ProblemInstance std_inst = standardize_operators(inst);

    // Atomize the query and assertions so only atoms need priming.
    std::set<std::string> taken = sig.atoms;
    auto fresh = [&taken](const std::string& base) {
        std::string name = base;
        for (int n = 2; taken.count(name); ++n)
            name = base + std::to_string(n);
        taken.insert(name);
        return name;
    };
    if (std_inst.query && std_inst.query->kind != Concept::Kind::Atomic) {
        CPtr q = atom(fresh("_q"));
        std_inst.ontology.tbox.push_back({q, std_inst.query});
        std_inst.query = q;
    }
    for (auto& [c, ind] : std_inst.ontology.concept_assertions) {
        if (c->kind != Concept::Kind::Atomic) {
            CPtr p = atom(fresh("_p"));
            std_inst.ontology.tbox.push_back({p, c});
            c = p;
        }
    }

    // Prime and dualize the TBox; assertions and the query stay unprimed and
    // the disjointness axioms tie the two sides together.
    auto duals = dual_operator_map(std_inst.operators);
    ProblemInstance dual;
    dual.kind = std_inst.kind;
    NamedOperator andop{"and", tbl::and2()};
    NamedOperator botop{"bot", tbl::bot0()};
    NamedOperator topop{"top", tbl::top0()};
    dual.operators.add(andop);
    dual.operators.add(botop);
    dual.operators.add(topop);
    for (const auto& ax : std_inst.ontology.tbox)
        dual.ontology.tbox.push_back(
            {nnf_dualize(ax.rhs, duals), nnf_dualize(ax.lhs, duals)});

    std::set<std::string> atoms_now;
    for (const auto& ax : std_inst.ontology.tbox)
        for (const CPtr& side : {ax.lhs, ax.rhs})
            for_each_subconcept(side, [&](const CPtr& s) {
                if (s->kind == Concept::Kind::Atomic)
                    atoms_now.insert(s->name);
            });
    for (const auto& [c, ind] : std_inst.ontology.concept_assertions)
        atoms_now.insert(c->name);
    if (std_inst.query)
        atoms_now.insert(std_inst.query->name);
    for (const auto& a : atoms_now)
        dual.ontology.tbox.push_back(
            {apply(andop, {atom(a), atom("_d_" + a)}), apply(botop, {})});

    dual.ontology.concept_assertions = std_inst.ontology.concept_assertions;
    dual.ontology.role_assertions = std_inst.ontology.role_assertions;
    dual.query = std_inst.query;
    dual.validate();

    SolveResult inner = solve_el_exists(dual);
    inner.method = "forallv";
    return inner;
}

} // namespace sublogic
